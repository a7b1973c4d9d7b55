"""The ideal graphs Gamma_0(R) and Gamma_1(R) and their tensor products.

Two ideals are adjacent when ``IJ == I & J``.  Gamma_0 has the nontrivial
ideals as vertices and no loops; Gamma_1 has every ideal, with a loop at
each idempotent ideal.

Adjacency is stored as one Python int bitmask per vertex (bit ``j`` of
``adj[i]`` set iff ``i -- j``); vertex counts are tau(n) or less, so these
stay tiny even for large moduli.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .errors import DomainError
from .ring_core import (
    ChainRingProduct,
    IdealExp,
    enumerate_ideals,
    ideal_intersect,
    ideal_product,
)

SCHEMA_VERSION = 1

GAMMA0 = "gamma0"
GAMMA1 = "gamma1"
DERIVED = "derived"


@dataclass(frozen=True)
class VertexLabel:
    exponents: tuple[int, ...] | None = None
    divisor: int | None = None
    name: str | None = None

    def __str__(self) -> str:
        if self.divisor is not None:
            return str(self.divisor)
        if self.name is not None:
            return self.name
        return "(" + ",".join(map(str, self.exponents or ())) + ")"

    def sort_key(self) -> tuple:
        if self.divisor is not None:
            return (0, self.divisor)
        if self.exponents is not None:
            return (1, self.exponents)
        return (2, self.name or "")

    @classmethod
    def of(cls, ideal: IdealExp) -> VertexLabel:
        return cls(exponents=ideal.alpha, divisor=ideal.divisor)


@dataclass(frozen=True, eq=False)
class LoopGraph:
    vertices: tuple[VertexLabel, ...]
    adj: tuple[int, ...]
    loops: frozenset[int] = frozenset()
    kind: str = GAMMA0
    ring_info: dict = field(default_factory=dict)
    name: str = "g"

    def __post_init__(self) -> None:
        if len(self.adj) != len(self.vertices):
            raise DomainError("adjacency rows must match vertex count")
        full = (1 << len(self.vertices)) - 1
        for i, row in enumerate(self.adj):
            if row >> i & 1:
                raise DomainError(f"self-pair at vertex {i}; loops are kept separately")
            if row & ~full:
                raise DomainError(f"edge from vertex {i} to a missing vertex")
        for i, j in self.edges:
            if not self.adj[j] >> i & 1:
                raise DomainError(f"edge {i}-{j} is not symmetric")
        if self.kind == GAMMA0 and self.loops:
            raise DomainError("Gamma_0 has no loops")

    @classmethod
    def from_edges(
        cls,
        vertices: Sequence[VertexLabel],
        edges: Iterable[tuple[int, int]],
        loops: Iterable[int] = (),
        **kw,
    ) -> LoopGraph:
        adj = [0] * len(vertices)
        for i, j in edges:
            if i == j:
                raise DomainError("self-pairs belong in loops")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(tuple(vertices), tuple(adj), frozenset(loops), **kw)

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LoopGraph):
            return NotImplemented
        return (self.vertices, self.adj, self.loops) == (other.vertices, other.adj, other.loops)

    __hash__ = None  # type: ignore[assignment]

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        """Sorted index pairs ``(i, j)`` with ``i < j``."""
        out = []
        for i, row in enumerate(self.adj):
            row >>= i + 1
            j = i + 1
            while row:
                if row & 1:
                    out.append((i, j))
                row >>= 1
                j += 1
        return out

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    @cached_property
    def _index(self) -> dict:
        idx: dict = {}
        for i, v in enumerate(self.vertices):
            idx[v] = i
            idx[str(v)] = i
            if v.exponents is not None:
                idx[v.exponents] = i
            if v.divisor is not None:
                idx[v.divisor] = i
        return idx

    def index(self, v) -> int:
        """Vertex index from a VertexLabel, exponent tuple, divisor or label text."""
        if isinstance(v, IdealExp):
            v = v.alpha
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise DomainError(f"unknown vertex {v!r}") from None

    def label_edges(self) -> set[frozenset[str]]:
        return {frozenset((str(self.vertices[i]), str(self.vertices[j]))) for i, j in self.edges}

    def neighbors(self, v) -> list[VertexLabel]:
        row = self.adj[self.index(v)]
        return [u for j, u in enumerate(self.vertices) if row >> j & 1]

    def adjacent(self, u, v) -> bool:
        i, j = self.index(u), self.index(v)
        if i == j:
            return i in self.loops
        return bool(self.adj[i] >> j & 1)

    def induced(self, keep: Sequence[int], kind: str | None = None) -> LoopGraph:
        pos = {old: new for new, old in enumerate(keep)}
        adj = []
        for old in keep:
            row = 0
            for j, old_j in enumerate(keep):
                if self.adj[old] >> old_j & 1:
                    row |= 1 << j
            adj.append(row)
        loops = frozenset(pos[i] for i in self.loops if i in pos)
        return LoopGraph(
            tuple(self.vertices[i] for i in keep),
            tuple(adj),
            frozenset() if kind == GAMMA0 else loops,
            kind or self.kind,
            dict(self.ring_info),
            self.name,
        )


def adjacency_rule(ring: ChainRingProduct, i: IdealExp, j: IdealExp) -> bool:
    """``max(a, b) == min(a + b, gamma)`` at every coordinate.

    With ``i == j`` this is the loop condition, i.e. idempotency.
    """
    if i.ring != ring or j.ring != ring:
        raise DomainError("ideals are not in the given ring")
    return all(max(a, b) == min(a + b, g) for a, b, g in zip(i.alpha, j.alpha, ring.gammas))


def _coordinate_ok(gamma: int) -> list[list[bool]]:
    return [[max(a, b) == min(a + b, gamma) for b in range(gamma + 1)] for a in range(gamma + 1)]


def _rule_masks(ring: ChainRingProduct, alphas: Sequence[tuple[int, ...]]) -> list[int]:
    """Self-inclusive adjacency masks via per-coordinate compatibility tables."""
    everything = (1 << len(alphas)) - 1
    per_coord = []
    for c, g in enumerate(ring.gammas):
        ok = _coordinate_ok(g)
        by_value = [0] * (g + 1)
        for idx, alpha in enumerate(alphas):
            by_value[alpha[c]] |= 1 << idx
        masks = []
        for a in range(g + 1):
            m = 0
            for b in range(g + 1):
                if ok[a][b]:
                    m |= by_value[b]
            masks.append(m)
        per_coord.append(masks)
    out = []
    for alpha in alphas:
        m = everything
        for c, a in enumerate(alpha):
            m &= per_coord[c][a]
        out.append(m)
    return out


def _ring_info(ring: ChainRingProduct) -> dict:
    if ring.modulus is not None:
        return {"n": ring.modulus}
    return {"factors": [[f.p, f.gamma] for f in ring.factors]}


def _graph_name(kind: str, ring: ChainRingProduct) -> str:
    if ring.modulus is not None:
        return f"{kind}_n{ring.modulus}"
    return kind + "_r" + "_".join(f"{f.p}_{f.gamma}" for f in ring.factors)


def _build(ring: ChainRingProduct, kind: str, method: str) -> LoopGraph:
    ideals = enumerate_ideals(ring, nontrivial_only=(kind == GAMMA0))
    alphas = [i.alpha for i in ideals]
    if method == "rule":
        closed = _rule_masks(ring, alphas)
    elif method in ("arithmetic", "direct"):
        if method == "arithmetic":
            test: Callable[[IdealExp, IdealExp], bool] = (
                lambda a, b: ideal_product(a, b) == ideal_intersect(a, b)
            )
        else:
            test = lambda a, b: adjacency_rule(ring, a, b)  # noqa: E731
        closed = [0] * len(ideals)
        for x, y in itertools.combinations_with_replacement(range(len(ideals)), 2):
            if test(ideals[x], ideals[y]):
                closed[x] |= 1 << y
                closed[y] |= 1 << x
    else:
        raise DomainError(f"unknown construction method {method!r}")
    adj = tuple(m & ~(1 << i) for i, m in enumerate(closed))
    loops = frozenset() if kind == GAMMA0 else frozenset(
        i for i, m in enumerate(closed) if m >> i & 1
    )
    return LoopGraph(
        tuple(VertexLabel.of(i) for i in ideals),
        adj,
        loops,
        kind,
        _ring_info(ring),
        _graph_name(kind, ring),
    )


def build_gamma0(ring: ChainRingProduct, method: str = "rule") -> LoopGraph:
    """Gamma_0(R) on the nontrivial ideals, in lexicographic exponent order.

    ``method`` selects how adjacency is decided: ``"rule"`` (bitmask
    evaluation of the exponent rule, the fast default), ``"direct"`` (the
    rule pair by pair) or ``"arithmetic"`` (compare ``IJ`` with ``I & J``).
    """
    return _build(ring, GAMMA0, method)


def build_gamma1(ring: ChainRingProduct, method: str = "rule") -> LoopGraph:
    g = _build(ring, GAMMA1, method)
    # 0 and R are adjacent to everything, themselves included
    everyone = (1 << len(g)) - 1
    for idx in (0, len(g) - 1):
        if (g.adj[idx] | 1 << idx) != everyone or idx not in g.loops:
            raise AssertionError(f"trivial ideal {g.vertices[idx]} is not universal in Gamma_1")
    return g


def tensor_product(graphs: Sequence[LoopGraph]) -> LoopGraph:
    """Loop-aware tensor product.

    Tuples ``u != v`` are adjacent iff, at every component, equal entries
    carry a loop and distinct entries form an edge.  A tuple is looped iff
    every entry is.
    """
    if not graphs:
        raise DomainError("tensor product of an empty list")
    tuples = list(itertools.product(*(range(len(g)) for g in graphs)))
    count = len(tuples)
    everything = (1 << count) - 1
    # per factor f and vertex x: tuples whose f-th entry is adjacent-or-looped to x
    component_masks = []
    for f, g in enumerate(graphs):
        by_value = [0] * len(g)
        for idx, t in enumerate(tuples):
            by_value[t[f]] |= 1 << idx
        masks = []
        for x in range(len(g)):
            closed = g.adj[x] | ((1 << x) if x in g.loops else 0)
            m = 0
            for y in range(len(g)):
                if closed >> y & 1:
                    m |= by_value[y]
            masks.append(m)
        component_masks.append(masks)
    adj = []
    loops = set()
    for idx, t in enumerate(tuples):
        m = everything
        for f, x in enumerate(t):
            m &= component_masks[f][x]
        if m >> idx & 1:
            loops.add(idx)
        adj.append(m & ~(1 << idx))

    vertices = []
    for t in tuples:
        parts = [g.vertices[x] for g, x in zip(graphs, t)]
        exps: tuple[int, ...] | None = ()
        for p in parts:
            if p.exponents is None:
                exps = None
                break
            exps = exps + p.exponents
        vertices.append(VertexLabel(exponents=exps, name="(" + ",".join(map(str, parts)) + ")"))
    return LoopGraph(
        tuple(vertices),
        tuple(adj),
        frozenset(loops),
        DERIVED,
        {"tensor": [g.ring_info for g in graphs]},
        "tensor",
    )


def check_crt_isomorphism(ring: ChainRingProduct) -> bool:
    """Compare Gamma_1(R) with the tensor product of the factor Gamma_1 graphs.

    The bijection sends the exponent vector ``(a_1, .., a_k)`` to the tuple
    of single-coordinate ideals ``((a_1), .., (a_k))``.
    """
    if ring.k < 2:
        raise DomainError("the product decomposition needs at least two factors")
    direct = build_gamma1(ring)
    factors = [build_gamma1(ChainRingProduct((f,))) for f in ring.factors]
    product = tensor_product(factors)
    if len(product) != len(direct):
        return False
    to_direct = [direct.index(v.exponents) for v in product.vertices]
    if sorted(to_direct) != list(range(len(direct))):
        return False
    for a in range(len(product)):
        if (a in product.loops) != (to_direct[a] in direct.loops):
            return False
        row = product.adj[a]
        mapped = 0
        for b in range(len(product)):
            if row >> b & 1:
                mapped |= 1 << to_direct[b]
        if mapped != direct.adj[to_direct[a]]:
            return False
    return True


def export_dot(g: LoopGraph) -> str:
    """Graphviz text: vertices sorted by label, then edges in label order."""
    order = sorted(range(len(g)), key=lambda i: g.vertices[i].sort_key())
    rank = {v: r for r, v in enumerate(order)}
    lines = [f"graph {g.name} {{"]
    for i in order:
        lines.append(f'  "{g.vertices[i]}";')
    pairs = sorted(
        tuple(sorted((i, j), key=rank.__getitem__)) for i, j in g.edges
    )
    pairs.sort(key=lambda p: (rank[p[0]], rank[p[1]]))
    for i, j in pairs:
        lines.append(f'  "{g.vertices[i]}" -- "{g.vertices[j]}";')
    for i in sorted(g.loops, key=rank.__getitem__):
        lines.append(f'  "{g.vertices[i]}" -- "{g.vertices[i]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(g: LoopGraph) -> dict:
    return {
        "ring": g.ring_info,
        "kind": g.kind,
        "vertices": [str(v) for v in g.vertices],
        "edges": [[i, j] for i, j in g.edges],
        "loops": sorted(g.loops),
        "schema_version": SCHEMA_VERSION,
    }


def export_json(g: LoopGraph) -> str:
    return json.dumps(graph_to_dict(g), ensure_ascii=False) + "\n"
