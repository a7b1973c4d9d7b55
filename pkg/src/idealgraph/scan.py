"""Exhaustive scan of Gamma_0(Z_n) for components of diameter above two.

Each modulus is independent, so the range is cut into contiguous chunks and
handed to a process pool; results are merged in modulus order, which keeps
the report identical for any worker count.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .analysis import component_masks, far_pair, _layers, iter_bits
from .errors import DomainError
from .graph import SCHEMA_VERSION, LoopGraph, build_gamma0
from .ring_core import factor

MAX_MODULUS = 10**7
JOBS_ENV = "IDEALGRAPH_JOBS"

GraphBuilder = Callable[[int], LoopGraph]


@dataclass(frozen=True)
class ScanRow:
    n: int
    vertex_count: int
    edge_count: int
    component_count: int
    max_component_diameter: int
    is_connected: bool
    counterexample_flag: bool
    witness: tuple[str, str, int] | None = None

    def to_json(self) -> str:
        d = {"schema_version": SCHEMA_VERSION, **asdict(self)}
        if self.witness is not None:
            d["witness"] = list(self.witness)
        return json.dumps(d)


@dataclass
class ScanReport:
    n_from: int
    n_to: int
    rows: list[ScanRow] = field(default_factory=list)

    @property
    def flagged(self) -> list[ScanRow]:
        return [r for r in self.rows if r.counterexample_flag]

    @property
    def totals(self) -> dict:
        rows = self.rows
        return {
            "moduli": len(rows),
            "degenerate": sum(r.vertex_count == 0 for r in rows),
            "connected": sum(r.is_connected for r in rows),
            "disconnected": sum(r.vertex_count > 0 and not r.is_connected for r in rows),
            "max_diameter": max((r.max_component_diameter for r in rows), default=0),
            "counterexamples": len(self.flagged),
        }

    def to_jsonl(self) -> str:
        return "".join(r.to_json() + "\n" for r in self.rows)

    def summary(self, max_rows: int = 100) -> str:
        lines = [f"scan of Gamma_0(Z_n) for n = {self.n_from}..{self.n_to}"]
        if len(self.rows) <= max_rows:
            lines.append(f"{'n':>8} {'V':>5} {'E':>6} {'comps':>5} {'diam':>4}  connected")
            for r in self.rows:
                conn = "yes" if r.is_connected else ("-" if r.vertex_count == 0 else "no")
                lines.append(
                    f"{r.n:>8} {r.vertex_count:>5} {r.edge_count:>6} "
                    f"{r.component_count:>5} {r.max_component_diameter:>4}  {conn}"
                )
        for key, value in self.totals.items():
            lines.append(f"{key:>16}: {value}")
        for r in self.flagged:
            u, v, d = r.witness
            lines.append(f"COUNTEREXAMPLE n={r.n}: d({u}, {v}) = {d}")
        return "\n".join(lines) + "\n"


def gamma0_of_modulus(n: int) -> LoopGraph:
    return build_gamma0(factor(n))


def summarize_graph(n: int, g: LoopGraph) -> ScanRow:
    """Structural summary of one graph; flags any component of diameter > 2."""
    comps = component_masks(g)
    diameter = 0
    for comp in comps:
        for v in iter_bits(comp):
            diameter = max(diameter, len(_layers(g.adj, v)) - 1)
    flag = diameter > 2
    witness = None
    if flag:
        i, j, d = far_pair(g)
        witness = (str(g.vertices[i]), str(g.vertices[j]), d)
    return ScanRow(
        n=n,
        vertex_count=len(g),
        edge_count=g.edge_count,
        component_count=len(comps),
        max_component_diameter=diameter,
        is_connected=len(comps) == 1,
        counterexample_flag=flag,
        witness=witness,
    )


def _scan_chunk(args: tuple[int, int, GraphBuilder]) -> list[ScanRow]:
    lo, hi, builder = args
    return [summarize_graph(n, builder(n)) for n in range(lo, hi + 1)]


def _chunks(lo: int, hi: int, size: int) -> Iterable[tuple[int, int]]:
    for start in range(lo, hi + 1, size):
        yield start, min(start + size - 1, hi)


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV)
    if not raw:
        return 1
    try:
        jobs = int(raw)
    except ValueError:
        raise DomainError(f"{JOBS_ENV} must be an integer, got {raw!r}") from None
    if jobs < 1:
        raise DomainError(f"{JOBS_ENV} must be >= 1")
    return jobs


def scan_range(
    n_from: int,
    n_to: int,
    parallelism: int = 1,
    builder: GraphBuilder = gamma0_of_modulus,
    chunk_size: int = 2000,
) -> ScanReport:
    """Summarise Gamma_0 for every modulus in ``[n_from, n_to]``.

    ``builder`` maps a modulus to its graph; it must be a picklable
    top-level function when ``parallelism > 1``.
    """
    if not (isinstance(n_from, int) and isinstance(n_to, int)):
        raise DomainError("scan bounds must be integers")
    if not 2 <= n_from <= n_to <= MAX_MODULUS:
        raise DomainError(f"need 2 <= from <= to <= {MAX_MODULUS}, got {n_from}..{n_to}")
    if parallelism < 1:
        raise DomainError("parallelism must be >= 1")
    tasks = [(lo, hi, builder) for lo, hi in _chunks(n_from, n_to, chunk_size)]
    report = ScanReport(n_from, n_to)
    if parallelism == 1 or len(tasks) == 1:
        for t in tasks:
            report.rows.extend(_scan_chunk(t))
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            for rows in pool.map(_scan_chunk, tasks):
                report.rows.extend(rows)
    return report
