"""Hypothesis strategies shared by the test modules."""
from hypothesis import strategies as st

from idealgraph.ring_core import ChainRingProduct

# chain ring products with small factors, primes possibly repeated
rings = st.lists(
    st.tuples(st.sampled_from([2, 3, 5, 7]), st.integers(1, 4)), min_size=1, max_size=4
).map(ChainRingProduct.of)


@st.composite
def ring_and_ideals(draw, count=2):
    ring = draw(rings)
    out = []
    for _ in range(count):
        out.append(ring.ideal([draw(st.integers(0, g)) for g in ring.gammas]))
    return (ring, *out)


# at most 64 ideals, for checks that are quadratic or worse in the ideal count
small_rings = st.lists(
    st.tuples(st.sampled_from([2, 3, 5]), st.integers(1, 3)), min_size=1, max_size=3
).map(ChainRingProduct.of)
