"""Element-level model of small finite commutative rings.

Nothing here knows about exponent vectors: ideals are sets of element
indices, products are additive closures of pairwise products, and the
ideal lattice is found by closing principal ideals under sums.  This is the
brute-force side that the exponent formulas in :mod:`idealgraph.ring_core`
are checked against.

Elements are dense indices ``0 .. size-1`` with 0 the additive identity and
1 the multiplicative identity.  Operations are numpy-vectorised callables,
so rings like ``Z_n`` never materialise their tables.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError
from .graph import GAMMA0, LoopGraph, VertexLabel
from .ring_core import is_prime

DEFAULT_CAP = 10_000
GRAPH_ORACLE_CAP = 2_000

BinOp = Callable[[np.ndarray, np.ndarray], np.ndarray]

# rows per block when sweeping r*a over all pairs; bounds peak memory
_BLOCK = 512


class ExplicitRing:
    """A finite commutative unital ring given by vectorised operations."""

    def __init__(
        self,
        size: int,
        add: BinOp,
        mul: BinOp,
        description: str,
        names: Sequence[str] | None = None,
    ):
        if size < 1:
            raise DomainError("a ring needs at least one element")
        self.size = size
        self._add = add
        self._mul = mul
        self.description = description
        self._names = list(names) if names is not None else None
        # set for Z_n so that ideals can be labelled by divisors
        self.modulus: int | None = None

    @classmethod
    def from_tables(cls, add_table, mul_table, description: str, names=None) -> ExplicitRing:
        add_t = np.asarray(add_table, dtype=np.int64)
        mul_t = np.asarray(mul_table, dtype=np.int64)
        n = add_t.shape[0]
        if add_t.shape != (n, n) or mul_t.shape != (n, n):
            raise DomainError("operation tables must be square and of equal size")
        return cls(n, lambda a, b: add_t[a, b], lambda a, b: mul_t[a, b], description, names)

    def add(self, a, b) -> np.ndarray:
        return np.asarray(self._add(np.asarray(a), np.asarray(b)), dtype=np.int64)

    def mul(self, a, b) -> np.ndarray:
        return np.asarray(self._mul(np.asarray(a), np.asarray(b)), dtype=np.int64)

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    @cached_property
    def neg_table(self) -> np.ndarray:
        sums = self.add(self.elements[:, None], self.elements[None, :])
        rows, cols = np.nonzero(sums == 0)
        neg = np.full(self.size, -1, dtype=np.int64)
        neg[rows] = cols
        return neg

    def name(self, a: int) -> str:
        return self._names[a] if self._names is not None else str(a)

    def add_table(self) -> np.ndarray:
        e = self.elements
        return self.add(e[:, None], e[None, :])

    def mul_table(self) -> np.ndarray:
        e = self.elements
        return self.mul(e[:, None], e[None, :])

    def self_test(self, max_size: int = 512) -> None:
        """Exhaustively check the commutative unital ring axioms.

        Raises DomainError naming the first violated axiom.
        """
        if self.size > max_size:
            raise ResourceLimitError(f"self-test capped at {max_size} elements")
        e = self.elements
        add_t, mul_t = self.add_table(), self.mul_table()
        for name, tab in (("addition", add_t), ("multiplication", mul_t)):
            if tab.min() < 0 or tab.max() >= self.size:
                raise DomainError(f"{name} is not closed")
            if not np.array_equal(tab, tab.T):
                raise DomainError(f"{name} is not commutative")
        if not np.array_equal(add_t[0], e):
            raise DomainError("0 is not an additive identity")
        if self.size > 1 and not np.array_equal(mul_t[1], e):
            raise DomainError("1 is not a multiplicative identity")
        if (self.neg_table < 0).any():
            raise DomainError("some element has no additive inverse")
        for a in e:
            # (a+b)+c == a+(b+c), (ab)c == a(bc), a(b+c) == ab+ac for all b, c
            if not np.array_equal(add_t[add_t[a]], add_t[a][add_t]):
                raise DomainError("addition is not associative")
            if not np.array_equal(mul_t[mul_t[a]], mul_t[a][mul_t]):
                raise DomainError("multiplication is not associative")
            if not np.array_equal(mul_t[a][add_t], add_t[mul_t[a][:, None], mul_t[a][None, :]]):
                raise DomainError("multiplication does not distribute over addition")

    def __repr__(self) -> str:
        return f"ExplicitRing({self.description!r}, size={self.size})"


def make_zmod(n: int, cap: int = DEFAULT_CAP) -> ExplicitRing:
    """Residues modulo ``n`` with implicit tables."""
    if not isinstance(n, int) or n < 2 or n > cap:
        raise ResourceLimitError(f"Z_n oracle supports 2 <= n <= {cap}, got {n!r}")
    ring = ExplicitRing(n, lambda a, b: (a + b) % n, lambda a, b: (a * b) % n, f"Z_{n}")
    ring.modulus = n
    return ring


def make_local_square_zero(q: int) -> ExplicitRing:
    """``F_q[X,Y]/<X,Y>^2`` for a prime ``q <= 31``.

    Element ``a + b x + c y`` has index ``a + q*b + q*q*c``.
    """
    if not isinstance(q, int) or not is_prime(q) or q > 31:
        raise DomainError(f"q must be a prime <= 31, got {q!r}")

    def split(v):
        return v % q, (v // q) % q, v // (q * q)

    def join(a, b, c):
        return a % q + q * (b % q) + q * q * (c % q)

    def add(u, v):
        a1, b1, c1 = split(u)
        a2, b2, c2 = split(v)
        return join(a1 + a2, b1 + b2, c1 + c2)

    def mul(u, v):
        a1, b1, c1 = split(u)
        a2, b2, c2 = split(v)
        return join(a1 * a2, a1 * b2 + a2 * b1, a1 * c2 + a2 * c1)

    names = []
    for idx in range(q**3):
        a, b, c = idx % q, (idx // q) % q, idx // (q * q)
        terms = [str(a)] if a else []
        terms += [f"{b}x" if b != 1 else "x"] if b else []
        terms += [f"{c}y" if c != 1 else "y"] if c else []
        names.append("+".join(terms) or "0")
    return ExplicitRing(q**3, add, mul, f"F_{q}[X,Y]/<X,Y>^2", names)


@dataclass(frozen=True)
class ElementIdeal:
    ring: ExplicitRing = field(repr=False, compare=False)
    members: tuple[int, ...]

    @classmethod
    def from_mask(cls, ring: ExplicitRing, mask: np.ndarray) -> ElementIdeal:
        return cls(ring, tuple(int(x) for x in np.flatnonzero(mask)))

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.size, dtype=bool)
        m[list(self.members)] = True
        return m

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return bool(self.mask[a])

    @property
    def is_zero(self) -> bool:
        return self.members == (0,)

    @property
    def is_whole(self) -> bool:
        return len(self.members) == self.ring.size

    @property
    def is_trivial(self) -> bool:
        return self.is_zero or self.is_whole

    def __le__(self, other: ElementIdeal) -> bool:
        return bool(np.all(other.mask[self.array]))

    def validate(self) -> None:
        """Check the ideal axioms by brute force."""
        r = self.ring
        if 0 not in self:
            raise DomainError("ideal does not contain 0")
        a = self.array
        if not self.mask[r.add(a[:, None], a[None, :])].all():
            raise DomainError("ideal is not closed under addition")
        if not self.mask[r.neg_table[a]].all():
            raise DomainError("ideal is not closed under negation")
        if not self.mask[r.mul(r.elements[:, None], a[None, :])].all():
            raise DomainError("ideal is not closed under multiplication by R")

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily in index order."""
        gens: list[int] = []
        span = np.zeros(self.ring.size, dtype=bool)
        span[0] = True
        for a in self.members:
            if not span[a]:
                gens.append(a)
                span = _ideal_closure(self.ring, np.flatnonzero(span | principal_mask(self.ring, a)))
        return gens

    def label(self) -> str:
        if self.is_zero:
            return "0"
        gens = self.generators()
        return "<" + ",".join(self.ring.name(g) for g in gens) + ">"


def _same_ring(i: ElementIdeal, j: ElementIdeal) -> ExplicitRing:
    if i.ring is not j.ring:
        raise DomainError("ideals live in different rings")
    return i.ring


def _add_cyclic(ring: ExplicitRing, mask: np.ndarray, s: int) -> np.ndarray:
    """Extend the subgroup ``mask`` by the cyclic group generated by ``s``.

    Doubling: after step j the set is ``H + {0, s, ..., (2^j - 1) s}``.
    """
    mask = mask.copy()
    step = np.int64(s)
    for _ in range(max(1, ring.size.bit_length())):
        mask[ring.add(np.flatnonzero(mask), step)] = True
        step = ring.add(step, step)
    return mask


def _additive_closure(ring: ExplicitRing, seed: np.ndarray) -> np.ndarray:
    """Smallest additive subgroup containing the elements flagged in ``seed``."""
    mask = np.zeros(ring.size, dtype=bool)
    mask[0] = True
    while True:
        pending = seed & ~mask
        if not pending.any():
            return mask
        mask = _add_cyclic(ring, mask, int(pending.argmax()))


def _ideal_closure(ring: ExplicitRing, elems: np.ndarray) -> np.ndarray:
    """Smallest ideal containing ``elems``: additive closure of ``R * elems``."""
    seed = np.zeros(ring.size, dtype=bool)
    if len(elems):
        seed[ring.mul(ring.elements[:, None], np.asarray(elems)[None, :])] = True
    seed[0] = True
    return _additive_closure(ring, seed)


def principal_mask(ring: ExplicitRing, a: int) -> np.ndarray:
    m = np.zeros(ring.size, dtype=bool)
    m[ring.mul(ring.elements, np.int64(a))] = True
    return m


def principal_ideal(ring: ExplicitRing, a: int) -> ElementIdeal:
    """``Ra = {r a : r in R}``."""
    if not 0 <= a < ring.size:
        raise DomainError(f"{a} is not an element of {ring.description}")
    return ElementIdeal.from_mask(ring, principal_mask(ring, a))


def _check_cap(ring: ExplicitRing, cap: int) -> None:
    if ring.size > cap:
        raise ResourceLimitError(
            f"{ring.description} has {ring.size} elements, oracle cap is {cap}"
        )


def all_ideals(ring: ExplicitRing, cap: int = DEFAULT_CAP) -> list[ElementIdeal]:
    """Every ideal: principal ideals closed under pairwise sums."""
    _check_cap(ring, cap)
    e = ring.elements
    found: dict[bytes, np.ndarray] = {}
    for start in range(0, ring.size, _BLOCK):
        block = e[start : start + _BLOCK]
        masks = np.zeros((len(block), ring.size), dtype=bool)
        masks[np.arange(len(block))[:, None], ring.mul(block[:, None], e[None, :])] = True
        packed = np.packbits(masks, axis=1)
        for r, row in enumerate(packed):
            key = row.tobytes()
            if key not in found:
                found[key] = masks[r].copy()

    frontier = list(found.values())
    current = list(found.values())
    while frontier:
        new = []
        for a in frontier:
            for b in current:
                if not (a & ~b).any() or not (b & ~a).any():
                    continue
                s = _additive_closure(ring, a | b)
                key = np.packbits(s).tobytes()
                if key not in found:
                    found[key] = s
                    new.append(s)
        current.extend(new)
        frontier = new
    ideals = [ElementIdeal.from_mask(ring, m) for m in found.values()]
    ideals.sort(key=lambda i: i.members)
    return ideals


def _product_mask(i: ElementIdeal, j: ElementIdeal) -> np.ndarray:
    ring = _same_ring(i, j)
    seed = np.zeros(ring.size, dtype=bool)
    seed[ring.mul(i.array[:, None], j.array[None, :])] = True
    return _additive_closure(ring, seed)


def set_product(i: ElementIdeal, j: ElementIdeal) -> ElementIdeal:
    """``IJ``: additive closure of all products ``a b`` with a in I, b in J."""
    return ElementIdeal.from_mask(i.ring, _product_mask(i, j))


def set_intersect(i: ElementIdeal, j: ElementIdeal) -> ElementIdeal:
    _same_ring(i, j)
    return ElementIdeal.from_mask(i.ring, i.mask & j.mask)


def set_sum(i: ElementIdeal, j: ElementIdeal) -> ElementIdeal:
    ring = _same_ring(i, j)
    return ElementIdeal.from_mask(ring, _additive_closure(ring, i.mask | j.mask))


def element_colon(i: ElementIdeal, a: int) -> ElementIdeal:
    """``(I : a) = {r : r a in I}``."""
    ring = i.ring
    return ElementIdeal.from_mask(ring, i.mask[ring.mul(ring.elements, np.int64(a))])


def element_annihilator(ring: ExplicitRing, a: int) -> ElementIdeal:
    return ElementIdeal.from_mask(ring, ring.mul(ring.elements, np.int64(a)) == 0)


def is_nilpotent(ring: ExplicitRing, a: int) -> bool:
    x = np.int64(a)
    for _ in range(ring.size.bit_length() + 1):
        if x == 0:
            return True
        x = ring.mul(x, x)
    return bool(x == 0)


def oracle_adjacent(i: ElementIdeal, j: ElementIdeal) -> bool:
    """``IJ == I & J`` computed on element sets."""
    return bool(np.array_equal(_product_mask(i, j), i.mask & j.mask))


def idempotent_generator(ring: ExplicitRing, i: ElementIdeal) -> int | None:
    """Some idempotent ``e`` with ``Re == I``, or None."""
    a = i.array
    for e in a[ring.mul(a, a) == a]:
        if np.array_equal(principal_mask(ring, int(e)), i.mask):
            return int(e)
    return None


def idempotents(ring: ExplicitRing) -> list[int]:
    e = ring.elements
    return [int(x) for x in e[ring.mul(e, e) == e]]


def zmod_divisor(i: ElementIdeal) -> int:
    """Divisor label of an ideal of ``Z_n``: its least positive member, or n for 0."""
    return i.members[1] if len(i.members) > 1 else i.ring.size


def oracle_edges(ideals: Sequence[ElementIdeal]) -> tuple[set[tuple[int, int]], set[int]]:
    """Edges ``(a, b)`` with a < b and loops among ``ideals`` by the set rule."""
    edges = set()
    loops = set()
    for a, b in itertools.combinations_with_replacement(range(len(ideals)), 2):
        if oracle_adjacent(ideals[a], ideals[b]):
            if a == b:
                loops.add(a)
            else:
                edges.add((a, b))
    return edges, loops


def oracle_graph(ring: ExplicitRing, kind: str = GAMMA0, cap: int = DEFAULT_CAP) -> LoopGraph:
    """Gamma_0 or Gamma_1 of an explicit ring, decided entirely on element sets."""
    ideals = all_ideals(ring, cap)
    if kind == GAMMA0:
        ideals = [i for i in ideals if not i.is_trivial]
    if ring.modulus is not None:
        ideals.sort(key=lambda i: -len(i))
        labels = [VertexLabel(divisor=zmod_divisor(i)) for i in ideals]
    else:
        labels = [VertexLabel(name=i.label()) for i in ideals]
    edges, loops = oracle_edges(ideals)
    if kind == GAMMA0:
        loops = set()
    info = {"n": ring.modulus} if ring.modulus is not None else {"ring": ring.description}
    slug = f"n{ring.modulus}" if ring.modulus is not None else "explicit"
    return LoopGraph.from_edges(labels, edges, loops, kind=kind, ring_info=info, name=f"{kind}_{slug}")
