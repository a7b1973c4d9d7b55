import pytest
from hypothesis import given, settings

from idealgraph.properties import FAIL, INFO, PASS, SKIP, CheckResult, is_large_brute, verify_ring
from idealgraph.ring_core import ChainRingProduct, enumerate_ideals, factor, is_large

from strategies import small_rings


def failures(results):
    return [r.line() for r in results if r.status == FAIL]


@pytest.mark.parametrize("n", [2, 4, 12, 20, 30, 36, 64, 360, 1024, 2310, 9000])
def test_verify_without_oracle(n):
    assert failures(verify_ring(factor(n))) == []


@pytest.mark.parametrize("n", [2, 12, 36, 60, 97, 128, 900, 2000])
def test_verify_with_oracle(n):
    results = verify_ring(factor(n), oracle=True)
    assert failures(results) == []
    assert any("oracle" in r.name and r.status == PASS for r in results)


def test_squarefree_detail():
    (r,) = [r for r in verify_ring(factor(30)) if r.name == "complete graph iff von Neumann regular"]
    assert r.status == PASS and r.detail == "complete graph: yes (squarefree)"


def test_trivial_ring_skips():
    results = verify_ring(factor(2))
    assert failures(results) == []
    assert any(r.status == SKIP for r in results)


def test_conjecture_is_info_only():
    results = verify_ring(factor(36))
    assert [r.status for r in results if "conjecture" in r.name.lower()] == [INFO]


def test_oracle_needs_crt_ring():
    ring = ChainRingProduct.of([(2, 1), (2, 1)])
    with pytest.raises(Exception):
        verify_ring(ring, oracle=True)


def test_check_result_line():
    assert CheckResult("x", PASS, "d").line().startswith("PASS")
    assert not CheckResult("x", FAIL).ok
    assert CheckResult("x", SKIP).ok


@settings(max_examples=80)
@given(small_rings)
def test_verify_generated_rings(ring):
    assert failures(verify_ring(ring)) == []


@given(small_rings)
def test_largeness_agrees(ring):
    for i in enumerate_ideals(ring):
        if not i.is_zero:
            assert is_large(i) == is_large_brute(i)
