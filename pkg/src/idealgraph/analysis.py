"""Degrees, distances, components and special vertices of ideal graphs."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError
from .graph import LoopGraph, VertexLabel
from .ring_core import ChainRingProduct, IdealExp

log = logging.getLogger(__name__)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class DegreeReport:
    vertex: VertexLabel
    a_set: frozenset[int]
    degree_formula: int
    degree_brute: int | None = None

    @property
    def agrees(self) -> bool:
        return self.degree_brute is None or self.degree_brute == self.degree_formula


def degree_formula(ring: ChainRingProduct, ideal: IdealExp, graph: LoopGraph | None = None) -> DegreeReport:
    """Closed-form degree of a nontrivial ideal in Gamma_0.

    ``a_set`` holds the 1-based coordinates with ``0 < alpha_i < gamma_i``;
    those force a neighbour's exponent to 0 or gamma_i, every other
    coordinate is free.  Subtract 0 and R, and the ideal itself when it is
    idempotent (``a_set`` empty).  Pass ``graph`` to fill in the brute count.
    """
    if ideal.ring != ring:
        raise DomainError("ideal is not in the given ring")
    if ideal.is_trivial:
        raise DomainError("the degree formula applies to nontrivial ideals")
    a_set = frozenset(i for i, (a, g) in enumerate(zip(ideal.alpha, ring.gammas), 1) if 0 < a < g)
    free = math.prod(g + 1 for i, g in enumerate(ring.gammas, 1) if i not in a_set)
    value = 2 ** len(a_set) * free - 2 - (1 if not a_set else 0)
    brute = degree_brute(graph, ideal.alpha) if graph is not None else None
    return DegreeReport(VertexLabel.of(ideal), a_set, value, brute)


def degree_brute(g: LoopGraph, v) -> int:
    """Number of non-loop edges at ``v``."""
    return g.adj[g.index(v)].bit_count()


def loop_degree(g: LoopGraph, v) -> int:
    """Degree with a loop counted once, as in Gamma_1."""
    i = g.index(v)
    return g.adj[i].bit_count() + (i in g.loops)


@dataclass(frozen=True)
class ComponentReport:
    component_id: int
    indices: tuple[int, ...]
    vertices: tuple[VertexLabel, ...]
    diameter: int
    eccentricities: tuple[int, ...]


def _layers(adj: Sequence[int], src: int) -> list[int]:
    """BFS layers from ``src`` as bitmasks; layer d holds the vertices at distance d."""
    seen = frontier = 1 << src
    layers = [frontier]
    while True:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= ~seen
        if not nxt:
            return layers
        seen |= nxt
        layers.append(nxt)
        frontier = nxt


def component_masks(g: LoopGraph) -> list[int]:
    """Connected components as bitmasks, ordered by lowest vertex index."""
    left = (1 << len(g)) - 1
    out = []
    while left:
        src = (left & -left).bit_length() - 1
        comp = 0
        for layer in _layers(g.adj, src):
            comp |= layer
        out.append(comp)
        left &= ~comp
    return out


def components_and_diameters(g: LoopGraph) -> list[ComponentReport]:
    reports = []
    for cid, comp in enumerate(component_masks(g)):
        idx = tuple(iter_bits(comp))
        ecc = tuple(len(_layers(g.adj, v)) - 1 for v in idx)
        reports.append(
            ComponentReport(cid, idx, tuple(g.vertices[i] for i in idx), max(ecc), ecc)
        )
    return reports


def is_connected(g: LoopGraph) -> bool:
    """Exactly one component; a graph with no vertices is not connected."""
    return len(g) > 0 and len(component_masks(g)) == 1


def distance(g: LoopGraph, u, v) -> int | None:
    """Shortest-path length, or None when ``u`` and ``v`` lie in different components."""
    i, j = g.index(u), g.index(v)
    for d, layer in enumerate(_layers(g.adj, i)):
        if layer >> j & 1:
            return d
    return None


def far_pair(g: LoopGraph, beyond: int = 2) -> tuple[int, int, int] | None:
    """Least index pair ``(i, j)``, ``i < j``, at finite distance > ``beyond``, with that distance."""
    for i in range(len(g)):
        layers = _layers(g.adj, i)
        far = 0
        for layer in layers[beyond + 1 :]:
            far |= layer
        far = far >> (i + 1) << (i + 1)
        if far:
            j = (far & -far).bit_length() - 1
            return i, j, next(d for d, layer in enumerate(layers) if layer >> j & 1)
    return None


def universal_vertices(g: LoopGraph) -> list[VertexLabel]:
    """Vertices adjacent to every other vertex; empty below two vertices."""
    if len(g) < 2:
        log.info("universal vertices need at least two vertices; graph has %d", len(g))
        return []
    everyone = (1 << len(g)) - 1
    return [v for i, v in enumerate(g.vertices) if g.adj[i] | 1 << i == everyone]


def isolated_vertices(g: LoopGraph) -> list[VertexLabel]:
    return [v for i, v in enumerate(g.vertices) if not g.adj[i]]


def check_clique(g: LoopGraph, vs: Sequence) -> bool:
    idx = [g.index(v) for v in vs]
    mask = 0
    for i in idx:
        mask |= 1 << i
    return all((g.adj[i] | 1 << i) & mask == mask for i in idx)


def is_complete(g: LoopGraph) -> bool:
    everyone = (1 << len(g)) - 1
    return all(row | 1 << i == everyone for i, row in enumerate(g.adj))
