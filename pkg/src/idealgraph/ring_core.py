"""Finite products of chain rings Z_{p^g} and their ideals in exponent form.

Every ideal of ``Z_{p1^g1} x ... x Z_{pk^gk}`` is generated by
``(p1^a1, ..., pk^ak)`` with ``0 <= ai <= gi``, so an ideal is just the
exponent vector ``(a1, ..., ak)``.  Product, intersection, sum, colon,
annihilator and radical all act coordinatewise on these vectors.

Containment is reversed with respect to the exponents: ``I <= J`` as ideals
iff ``alpha_i >= beta_i`` for every coordinate.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import DomainError

# Deterministic for every n < 3.3e24, which covers 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True, order=True)
class PrimePower:
    p: int
    gamma: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise DomainError(f"{self.p!r} is not a prime")
        if not isinstance(self.gamma, int) or self.gamma < 1:
            raise DomainError(f"exponent must be >= 1, got {self.gamma!r}")

    @property
    def value(self) -> int:
        return self.p**self.gamma

    def __str__(self) -> str:
        return f"{self.p}^{self.gamma}" if self.gamma > 1 else str(self.p)


@dataclass(frozen=True)
class ChainRingProduct:
    """The ring ``Z_{p1^g1} x ... x Z_{pk^gk}``.

    ``modulus`` is set only when the factors come from factoring an integer
    ``n``; the ring is then canonically ``Z_n`` and ideals carry divisor
    labels.  Repeated primes are allowed when ``modulus`` is None.
    """

    factors: tuple[PrimePower, ...]
    modulus: int | None = None

    def __post_init__(self) -> None:
        factors = tuple(
            f if isinstance(f, PrimePower) else PrimePower(*f) for f in self.factors
        )
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise DomainError("a chain ring product needs at least one factor")
        if self.modulus is not None:
            primes = [f.p for f in factors]
            if len(set(primes)) != len(primes):
                raise DomainError("CRT factors of a modulus must have distinct primes")
            if math.prod(f.value for f in factors) != self.modulus:
                raise DomainError(
                    f"factors {self.describe()} do not multiply to {self.modulus}"
                )

    @classmethod
    def of(cls, factors: Iterable[tuple[int, int] | PrimePower]) -> ChainRingProduct:
        """Build a product from ``(p, gamma)`` pairs, keeping their order."""
        return cls(tuple(factors))

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def gammas(self) -> tuple[int, ...]:
        return tuple(f.gamma for f in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(f.p for f in self.factors)

    @property
    def order(self) -> int:
        """Number of elements of the ring."""
        return math.prod(f.value for f in self.factors)

    @property
    def is_crt(self) -> bool:
        return self.modulus is not None

    def describe(self) -> str:
        if self.modulus is not None:
            return f"Z_{self.modulus}"
        return " x ".join(f"Z_{f}" for f in self.factors)

    def ideal(self, alpha: Sequence[int]) -> IdealExp:
        return IdealExp(self, tuple(alpha))

    def ideal_of_divisor(self, d: int) -> IdealExp:
        """The ideal ``<d>`` of ``Z_n``; ``d`` is reduced to ``gcd(d, n)``."""
        if self.modulus is None:
            raise DomainError("divisor labels need a ring of the form Z_n")
        d = math.gcd(d, self.modulus)
        alpha = []
        for f in self.factors:
            a = 0
            while d % f.p == 0:
                d //= f.p
                a += 1
            alpha.append(a)
        return IdealExp(self, tuple(alpha))

    @cached_property
    def whole(self) -> IdealExp:
        return IdealExp(self, (0,) * self.k)

    @cached_property
    def zero(self) -> IdealExp:
        return IdealExp(self, self.gammas)

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class IdealExp:
    ring: ChainRingProduct = field(repr=False)
    alpha: tuple[int, ...]

    def __post_init__(self) -> None:
        alpha = tuple(int(a) for a in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if len(alpha) != self.ring.k:
            raise DomainError(
                f"exponent vector {alpha} has length {len(alpha)}, ring has k={self.ring.k}"
            )
        for a, g in zip(alpha, self.ring.gammas):
            if not 0 <= a <= g:
                raise DomainError(f"exponent vector {alpha} out of bounds {self.ring.gammas}")

    @property
    def is_whole(self) -> bool:
        return not any(self.alpha)

    @property
    def is_zero(self) -> bool:
        return self.alpha == self.ring.gammas

    @property
    def is_trivial(self) -> bool:
        return self.is_whole or self.is_zero

    @property
    def divisor(self) -> int | None:
        """Generator ``d | n`` of the ideal when the ring is ``Z_n``."""
        if self.ring.modulus is None:
            return None
        return math.prod(p**a for p, a in zip(self.ring.primes, self.alpha))

    @property
    def label(self) -> str:
        d = self.divisor
        return str(d) if d is not None else "(" + ",".join(map(str, self.alpha)) + ")"

    def __le__(self, other: IdealExp) -> bool:
        """Ideal containment ``self <= other``."""
        _same_ring(self, other)
        return all(a >= b for a, b in zip(self.alpha, other.alpha))

    def __lt__(self, other: IdealExp) -> bool:
        return self <= other and self != other

    def __mul__(self, other: IdealExp) -> IdealExp:
        return ideal_product(self, other)

    def __and__(self, other: IdealExp) -> IdealExp:
        return ideal_intersect(self, other)

    def __add__(self, other: IdealExp) -> IdealExp:
        return ideal_sum(self, other)

    def __str__(self) -> str:
        return self.label


def _same_ring(i: IdealExp, j: IdealExp) -> ChainRingProduct:
    if i.ring != j.ring:
        raise DomainError(f"ideals live in different rings: {i.ring} and {j.ring}")
    return i.ring


def factor(n: int) -> ChainRingProduct:
    """CRT decomposition of ``Z_n`` by trial division."""
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"modulus must be an integer >= 2, got {n!r}")
    factors = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append(PrimePower(p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append(PrimePower(m, 1))
    return ChainRingProduct(tuple(factors), modulus=n)


def enumerate_ideals(ring: ChainRingProduct, nontrivial_only: bool = False) -> list[IdealExp]:
    """All ideals in lexicographic exponent order."""
    out = []
    for alpha in itertools.product(*(range(g + 1) for g in ring.gammas)):
        ideal = IdealExp(ring, alpha)
        if nontrivial_only and ideal.is_trivial:
            continue
        out.append(ideal)
    return out


def iter_exponents(gammas: Sequence[int]) -> Iterator[tuple[int, ...]]:
    return itertools.product(*(range(g + 1) for g in gammas))


def ideal_product(i: IdealExp, j: IdealExp) -> IdealExp:
    ring = _same_ring(i, j)
    return IdealExp(
        ring, tuple(min(a + b, g) for a, b, g in zip(i.alpha, j.alpha, ring.gammas))
    )


def ideal_intersect(i: IdealExp, j: IdealExp) -> IdealExp:
    ring = _same_ring(i, j)
    return IdealExp(ring, tuple(max(a, b) for a, b in zip(i.alpha, j.alpha)))


def ideal_sum(i: IdealExp, j: IdealExp) -> IdealExp:
    ring = _same_ring(i, j)
    return IdealExp(ring, tuple(min(a, b) for a, b in zip(i.alpha, j.alpha)))


def ideal_colon(i: IdealExp, j: IdealExp) -> IdealExp:
    """``(I : J) = {r : rJ <= I}``."""
    ring = _same_ring(i, j)
    return IdealExp(ring, tuple(max(a - b, 0) for a, b in zip(i.alpha, j.alpha)))


def annihilator(i: IdealExp) -> IdealExp:
    return ideal_colon(i.ring.zero, i)


def radical(i: IdealExp) -> IdealExp:
    return IdealExp(i.ring, tuple(min(a, 1) for a in i.alpha))


def jacobson_radical(ring: ChainRingProduct) -> IdealExp:
    """J(R), which equals the nilradical for these rings."""
    return IdealExp(ring, (1,) * ring.k)


def nilradical(ring: ChainRingProduct) -> IdealExp:
    return jacobson_radical(ring)


def _maximal_at(ring: ChainRingProduct, i: int) -> IdealExp:
    return IdealExp(ring, tuple(1 if j == i else 0 for j in range(ring.k)))


def maximal_ideals(ring: ChainRingProduct) -> list[IdealExp]:
    """Maximal ideals, excluding the zero ideal of a field."""
    out = [_maximal_at(ring, i) for i in range(ring.k)]
    return [m for m in out if not m.is_trivial]


def minimal_ideals(ring: ChainRingProduct) -> list[IdealExp]:
    """Minimal nonzero ideals, excluding ``R`` itself when ``R`` is a field."""
    gammas = ring.gammas
    out = [
        IdealExp(ring, tuple(g - 1 if j == i else g for j, g in enumerate(gammas)))
        for i in range(ring.k)
    ]
    return [m for m in out if not m.is_trivial]


def is_idempotent(i: IdealExp) -> bool:
    return all(a == 0 or a == g for a, g in zip(i.alpha, i.ring.gammas))


def is_large(i: IdealExp) -> bool:
    """True iff ``I`` meets every nonzero ideal nontrivially."""
    if i.is_zero:
        raise DomainError("largeness is defined for nonzero ideals only")
    return all(a < g for a, g in zip(i.alpha, i.ring.gammas))


def associated_primes(i: IdealExp) -> frozenset[IdealExp]:
    """Radicals of the primary components ``Q_j = <p_j^{a_j}>`` of ``I``.

    The zero ideal yields all k maximal ideals.
    """
    if i.is_whole:
        raise DomainError("R has no primary decomposition")
    return frozenset(_maximal_at(i.ring, j) for j, a in enumerate(i.alpha) if a >= 1)


@dataclass(frozen=True)
class RingClass:
    is_local: bool
    is_field: bool
    is_reduced: bool
    is_vnr: bool


def classify_ring(ring: ChainRingProduct) -> RingClass:
    reduced = all(g == 1 for g in ring.gammas)
    return RingClass(
        is_local=ring.k == 1,
        is_field=ring.k == 1 and ring.gammas[0] == 1,
        is_reduced=reduced,
        # finite commutative VNR rings are exactly the reduced ones
        is_vnr=reduced,
    )
