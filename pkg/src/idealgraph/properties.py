"""Executable forms of the structural facts about Gamma_0 and Gamma_1.

``verify_ring`` runs every check on one ring and returns named results.
A failing check means the library contradicts a proven statement, so
callers treat it as an invariant violation.  The diameter conjecture is
only reported, never asserted.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable

from . import oracle as orc
from .analysis import (
    component_masks,
    components_and_diameters,
    degree_formula,
    distance,
    is_complete,
    is_connected,
    isolated_vertices,
    universal_vertices,
    check_clique,
)
from .graph import build_gamma0, build_gamma1, check_crt_isomorphism
from .ring_core import (
    ChainRingProduct,
    IdealExp,
    annihilator,
    associated_primes,
    classify_ring,
    enumerate_ideals,
    ideal_colon,
    ideal_intersect,
    ideal_product,
    ideal_sum,
    is_idempotent,
    is_large,
    jacobson_radical,
    maximal_ideals,
    minimal_ideals,
    nilradical,
    _maximal_at,
    factor,
)

PASS, FAIL, SKIP, INFO = "pass", "fail", "skip", "info"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def line(self) -> str:
        text = f"{self.status.upper():<4}  {self.name}"
        return f"{text}: {self.detail}" if self.detail else text


def _first_failure(pairs: Iterable, pred: Callable) -> object | None:
    for item in pairs:
        if not pred(*item):
            return item
    return None


def _pair_check(name: str, pairs, pred, fmt=lambda i, j: f"{i}, {j}") -> CheckResult:
    bad = _first_failure(pairs, pred)
    if bad is None:
        return CheckResult(name, PASS)
    return CheckResult(name, FAIL, "counterexample " + fmt(*bad))


def _adjacent(i: IdealExp, j: IdealExp) -> bool:
    return ideal_product(i, j) == ideal_intersect(i, j)


def lemma_checks(ring: ChainRingProduct) -> list[CheckResult]:
    ideals = enumerate_ideals(ring)
    pairs = list(itertools.product(ideals, repeat=2))
    whole, zero = ring.whole, ring.zero
    reduced = classify_ring(ring).is_reduced
    out = [
        _pair_check(
            "lattice sandwich IJ <= I&J <= I",
            pairs,
            lambda i, j: ideal_product(i, j) <= ideal_intersect(i, j) <= i,
        ),
        _pair_check(
            "comaximal ideals are adjacent",
            pairs,
            lambda i, j: ideal_sum(i, j) != whole or _adjacent(i, j),
        ),
        _pair_check(
            "I&J = 0 implies IJ = 0",
            pairs,
            lambda i, j: ideal_intersect(i, j) != zero or ideal_product(i, j) == zero,
        ),
        _pair_check(
            "IJ = J implies adjacency",
            pairs,
            lambda i, j: ideal_product(i, j) != j or _adjacent(i, j),
        ),
    ]
    if reduced:
        out.append(
            _pair_check(
                "reduced ring: IJ = 0 implies I&J = 0",
                pairs,
                lambda i, j: ideal_product(i, j) != zero or ideal_intersect(i, j) == zero,
            )
        )
    else:
        out.append(CheckResult("reduced ring: IJ = 0 implies I&J = 0", SKIP, "ring not reduced"))
    return out


def colon_checks(ring: ChainRingProduct) -> list[CheckResult]:
    # every ideal of a chain ring product is principal
    ideals = enumerate_ideals(ring)
    pairs = list(itertools.product(ideals, repeat=2))

    def avoids(i: IdealExp, a: IdealExp) -> bool:
        if i.is_whole:
            return True
        if not a.is_whole and associated_primes(a) & associated_primes(i):
            return True
        return ideal_colon(i, a) == i

    def prime_principal(k: int, a: IdealExp) -> bool:
        p = _maximal_at(ring, k)
        return a.alpha[k] != 0 or _adjacent(p, a)

    return [
        _pair_check(
            "adjacent iff (I:a) = I + ann(a)",
            pairs,
            lambda i, a: _adjacent(i, a) == (ideal_colon(i, a) == ideal_sum(i, annihilator(a))),
        ),
        _pair_check("a outside Ass(I) gives (I:a) = I", pairs, avoids),
        _pair_check(
            "prime P and Ra adjacent when a not in P",
            [(k, a) for k in range(ring.k) for a in ideals],
            prime_principal,
        ),
    ]


def is_large_brute(i: IdealExp) -> bool:
    return all(
        not ideal_intersect(i, j).is_zero for j in enumerate_ideals(i.ring) if not j.is_zero
    )


def graph_checks(ring: ChainRingProduct) -> list[CheckResult]:
    g = build_gamma0(ring)
    cls = classify_ring(ring)
    nontrivial = enumerate_ideals(ring, nontrivial_only=True)
    radical = jacobson_radical(ring)
    out: list[CheckResult] = []

    def add(name: str, ok: bool, detail: str = "") -> None:
        out.append(CheckResult(name, PASS if ok else FAIL, detail))

    def skip(name: str, why: str) -> None:
        out.append(CheckResult(name, SKIP, why))

    bad = [
        (str(i), r.degree_formula, r.degree_brute)
        for i in nontrivial
        for r in [degree_formula(ring, i, g)]
        if not r.agrees
    ]
    add("degree formula matches brute degree", not bad, f"mismatches {bad[:3]}" if bad else f"{len(nontrivial)} vertices")

    maxi, mini = maximal_ideals(ring), minimal_ideals(ring)
    add("Max(R) is a clique", check_clique(g, [m.alpha for m in maxi]))
    add("minimal ideals form a clique", check_clique(g, [m.alpha for m in mini]))

    in_radical = [i for i in nontrivial if i <= radical]
    chain_bad = [
        (str(a), str(b))
        for a, b in itertools.combinations(in_radical, 2)
        if (a <= b or b <= a) and g.adjacent(a.alpha, b.alpha)
    ]
    add("chains inside J(R) are independent", not chain_bad, f"adjacent pair {chain_bad[0]}" if chain_bad else "")

    iso_bad = [
        str(v) for v in isolated_vertices(g)
        for i in [ring.ideal(v.exponents)]
        if not (i <= radical and is_large(i))
    ]
    add("isolated vertices lie in J(R) and are large", not iso_bad, ", ".join(iso_bad))

    large_bad = [str(i) for i in enumerate_ideals(ring) if not i.is_zero and is_large(i) != is_large_brute(i)]
    add("largeness formula matches brute force", not large_bad, ", ".join(large_bad))

    diameters = [c.diameter for c in components_and_diameters(g)]
    if len(g) >= 2:
        idem = {i.alpha for i in nontrivial if is_idempotent(i)}
        universal = {v.exponents for v in universal_vertices(g)}
        add("universal vertices are the idempotent ideals", universal == idem,
            f"{len(universal)} universal, {len(idem)} idempotent")
        complete = is_complete(g)
        expect = "squarefree" if ring.is_crt else "reduced"
        add("complete graph iff von Neumann regular", complete == cls.is_vnr,
            f"complete graph: {'yes' if complete else 'no'} ({'' if cls.is_vnr else 'not '}{expect})")
        connected = is_connected(g)
        add("connected iff not local", connected == (not cls.is_local),
            f"connected: {'yes' if connected else 'no'}, local: {'yes' if cls.is_local else 'no'}")
    else:
        for name in (
            "universal vertices are the idempotent ideals",
            "complete graph iff von Neumann regular",
            "connected iff not local",
        ):
            skip(name, f"{len(g)} vertices")

    if any(is_idempotent(i) for i in nontrivial):
        add("nontrivial idempotent gives connected, diameter <= 2",
            is_connected(g) and max(diameters) <= 2)
    else:
        skip("nontrivial idempotent gives connected, diameter <= 2", "no nontrivial idempotent")

    if radical.is_zero and len(g):
        add("J(R) = 0 gives diameter <= 2", max(diameters) <= 2)
    else:
        skip("J(R) = 0 gives diameter <= 2", "J(R) != 0" if not radical.is_zero else "no vertices")

    if cls.is_local:
        m = maximal_ideals(ring)
        if m:
            add("local ring: maximal ideal is isolated", not g.adj[g.index(m[0].alpha)])
        else:
            skip("local ring: maximal ideal is isolated", "field")
        add("chain ring: Gamma_0 has no edges", g.edge_count == 0)

    far = [
        (str(i), str(j))
        for i, j in itertools.combinations(nontrivial, 2)
        if any(a == b == 0 for a, b in zip(i.alpha, j.alpha)) and not _within(g, i, j, 2)
    ]
    add("common avoided maximal ideal gives d(I,J) <= 2", not far, f"pair {far[0]}" if far else "")

    nil = nilradical(ring)
    if not cls.is_field:
        nil_far = [
            (str(i), str(j))
            for i, j in itertools.combinations(nontrivial, 2)
            if not ideal_product(i, j) <= nil and not _within(g, i, j, 2)
        ]
        add("ab outside Nil(R) gives d(Ra,Rb) <= 2", not nil_far, f"pair {nil_far[0]}" if nil_far else "")

    if ring.k >= 2:
        add("Gamma_1(R) is the tensor product of the factor graphs", check_crt_isomorphism(ring))

    comps = len(component_masks(g))
    out.append(CheckResult(
        "diameter conjecture (reported only)", INFO,
        f"{len(g)} vertices, {g.edge_count} edges, {comps} components, max diameter {max(diameters, default=0)}",
    ))
    return out


def _within(g, i: IdealExp, j: IdealExp, bound: int) -> bool:
    d = distance(g, i.alpha, j.alpha)
    return d is not None and d <= bound


def oracle_checks(n: int) -> list[CheckResult]:
    """Compare the exponent model of Z_n with the element-level oracle."""
    ring = factor(n)
    zr = orc.make_zmod(n, cap=orc.GRAPH_ORACLE_CAP)
    ideals = orc.all_ideals(zr, cap=orc.GRAPH_ORACLE_CAP)
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    by_div = {orc.zmod_divisor(i): i for i in ideals}
    out = []
    bij = len(ideals) == len(divisors) and all(
        d in by_div and by_div[d] == orc.principal_ideal(zr, d % n) for d in divisors
    )
    out.append(CheckResult("ideals of Z_n correspond to divisors", PASS if bij else FAIL,
                           f"{len(ideals)} ideals, {len(divisors)} divisors"))
    if not bij:
        return out
    exps = {d: ring.ideal_of_divisor(d) for d in divisors}

    arith_bad = None
    for a, b in itertools.product(divisors, repeat=2):
        i, j = by_div[a], by_div[b]
        ei, ej = exps[a], exps[b]
        got = (
            orc.zmod_divisor(orc.set_product(i, j)),
            orc.zmod_divisor(orc.set_intersect(i, j)),
            orc.zmod_divisor(orc.set_sum(i, j)),
        )
        want = (ideal_product(ei, ej).divisor, ideal_intersect(ei, ej).divisor, ideal_sum(ei, ej).divisor)
        if got != want:
            arith_bad = (a, b, got, want)
            break
    out.append(CheckResult("element products/intersections/sums match exponents",
                           PASS if arith_bad is None else FAIL, "" if arith_bad is None else str(arith_bad)))

    rule = build_gamma1(ring)
    arith = build_gamma1(ring, method="arithmetic")
    element = orc.oracle_graph(zr, kind="gamma1", cap=orc.GRAPH_ORACLE_CAP)

    def signature(g):
        return g.label_edges(), {str(g.vertices[i]) for i in g.loops}

    agree = signature(rule) == signature(arith) == signature(element)
    out.append(CheckResult("exponent rule, ideal arithmetic and element oracle agree",
                           PASS if agree else FAIL, f"{rule.edge_count} edges, {len(rule.loops)} loops"))

    gen_bad = [
        d for d in divisors
        if (orc.idempotent_generator(zr, by_div[d]) is not None) != is_idempotent(exps[d])
    ]
    out.append(CheckResult("idempotent generators exist exactly for idempotent ideals",
                           PASS if not gen_bad else FAIL, f"divisors {gen_bad}" if gen_bad else ""))
    return out


def verify_ring(ring: ChainRingProduct, oracle: bool = False) -> list[CheckResult]:
    results = lemma_checks(ring) + colon_checks(ring) + graph_checks(ring)
    if oracle:
        if ring.modulus is None:
            raise ValueError("the element oracle needs a ring of the form Z_n")
        results += oracle_checks(ring.modulus)
    return results

