"""Measurements on completed graphs."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from reforcite.graph import EvolvingDigraph, SnapshotSchedule


@dataclass
class DegreeDistribution:
    """Histogram of node degrees: ``counts[k]`` nodes have degree ``k``."""

    counts: dict[int, int]
    n: int
    kind: str = "in"

    def __post_init__(self):
        if sum(self.counts.values()) != self.n:
            raise ValueError("counts do not sum to n")

    @classmethod
    def from_degrees(cls, degrees, kind: str = "in") -> "DegreeDistribution":
        degrees = np.asarray(degrees, dtype=np.int64)
        if degrees.size and degrees.min() < 0:
            raise ValueError("degrees must be >= 0")
        vals, cnt = np.unique(degrees, return_counts=True)
        return cls(dict(zip(vals.tolist(), cnt.tolist())), int(degrees.size), kind)

    def degrees(self) -> np.ndarray:
        return np.array(sorted(self.counts), dtype=np.int64)

    def pmf(self) -> tuple[np.ndarray, np.ndarray]:
        k = self.degrees()
        return k, np.array([self.counts[d] for d in k.tolist()], dtype=float) / self.n

    def ccdf(self) -> tuple[np.ndarray, np.ndarray]:
        """``Pr(K >= k)`` at each observed degree."""
        k, pk = self.pmf()
        return k, np.cumsum(pk[::-1])[::-1]

    @property
    def mean(self) -> float:
        k, pk = self.pmf()
        return float(k @ pk)

    def rows(self) -> list[tuple[int, int]]:
        return [(k, self.counts[k]) for k in sorted(self.counts)]


def in_degree_distribution(graph: EvolvingDigraph) -> DegreeDistribution:
    return DegreeDistribution.from_degrees(graph.in_degrees(), "in")


def total_degree_distribution(graph: EvolvingDigraph) -> DegreeDistribution:
    return DegreeDistribution.from_degrees(graph.in_degrees() + graph.out_degrees(), "total")


def l1_distance(d1: DegreeDistribution, d2: DegreeDistribution) -> float:
    """Sum of ``|p1(k) - p2(k)|`` over the union of supports; lies in [0, 2]."""
    if d1.kind != d2.kind:
        raise ValueError(f"cannot compare {d1.kind}-degree and {d2.kind}-degree distributions")
    if d1.n == 0 or d2.n == 0:
        raise ValueError("empty distribution")
    keys = set(d1.counts) | set(d2.counts)
    return float(sum(abs(d1.counts.get(k, 0) / d1.n - d2.counts.get(k, 0) / d2.n) for k in keys))


def count_triangles(graph: EvolvingDigraph) -> int:
    """Exact triangle count of the undirected simplification.

    Edges are oriented from lower to higher (degree, id) rank so every
    triangle is counted exactly once as a path ``u -> w -> v`` closed by
    ``u -> v``.
    """
    a = graph.undirected_csr()
    return _oriented_triangles(a)


def _oriented_triangles(a: sp.csr_matrix) -> int:
    n = a.shape[0]
    if n < 3:
        return 0
    deg = np.diff(a.indptr)
    rank = np.empty(n, dtype=np.int64)
    rank[np.lexsort((np.arange(n), deg))] = np.arange(n)
    coo = a.tocoo()
    keep = rank[coo.row] < rank[coo.col]
    r, c = coo.row[keep], coo.col[keep]
    low = sp.csr_matrix((np.ones(r.size, dtype=np.int64), (r, c)), shape=(n, n))
    # Row chunks bound the memory of the wedge product.
    total = 0
    chunk = 4096
    for s in range(0, n, chunk):
        block = low[s:s + chunk]
        total += int(block.dot(low).multiply(block).sum())
    return total


def _bfs_distances(a: sp.csr_matrix, source: int) -> np.ndarray:
    return csgraph.shortest_path(a, method="D", unweighted=True, directed=False, indices=source)


def _largest_component(a: sp.csr_matrix) -> sp.csr_matrix:
    ncomp, labels = csgraph.connected_components(a, directed=False)
    if ncomp == 1:
        return a
    big = np.bincount(labels).argmax()
    idx = np.flatnonzero(labels == big)
    return a[idx][:, idx]


def _double_sweep(a: sp.csr_matrix, sources, rng: np.random.Generator) -> int:
    best = 0
    n = a.shape[0]
    for s in rng.choice(n, size=min(sources, n), replace=False).tolist():
        d = _bfs_distances(a, s)
        far = int(np.argmax(d))
        d2 = _bfs_distances(a, far)
        best = max(best, int(d.max()), int(d2.max()))
    return best


def exact_diameter(a: sp.csr_matrix) -> int:
    """Largest finite shortest-path length, by BFS from every node."""
    n = a.shape[0]
    if n <= 1:
        return 0
    best = 0
    step = 256
    for s in range(0, n, step):
        d = csgraph.shortest_path(a, method="D", unweighted=True, directed=False,
                                  indices=np.arange(s, min(s + step, n)))
        finite = d[np.isfinite(d)]
        best = max(best, int(finite.max()))
    return best


def snapshot_diameters(graph: EvolvingDigraph, schedule: SnapshotSchedule = SnapshotSchedule(),
                       sample_sources: int = 10, seed=None, exact: bool = False) -> list[tuple[int, int]]:
    """Diameter of the largest weakly connected component at every snapshot.

    Each snapshot is the subgraph on the first ``s * step_size`` arrivals
    (plus the full graph). The default estimator runs a double-sweep BFS from
    ``sample_sources`` random seeds and keeps the largest eccentricity found,
    which never exceeds the true diameter. ``exact=True`` runs BFS from
    every node.
    """
    if graph.n == 0:
        raise ValueError("empty graph")
    if sample_sources < 1:
        raise ValueError("sample_sources must be >= 1")
    rng = np.random.default_rng(seed)
    full = graph.undirected_csr()
    out = []
    for size in schedule.sizes(graph.n):
        a = _largest_component(full[:size][:, :size].tocsr())
        d = exact_diameter(a) if exact else _double_sweep(a, sample_sources, rng)
        out.append((size, d))
    return out


def avg_diameter(graph: EvolvingDigraph, schedule: SnapshotSchedule = SnapshotSchedule(),
                 sample_sources: int = 10, seed=None, exact: bool = False) -> float:
    """Mean of :func:`snapshot_diameters` over the graph's lifetime."""
    snaps = snapshot_diameters(graph, schedule, sample_sources, seed, exact)
    return float(np.mean([d for _, d in snaps]))


def h_index(values) -> int:
    """Largest ``h`` such that at least ``h`` values are ``>= h``."""
    v = np.sort(np.asarray(values, dtype=np.int64))[::-1]
    return int(np.count_nonzero(v >= np.arange(1, v.size + 1)))


def network_h_index(graph: EvolvingDigraph) -> int:
    """h-index of the in-degree sequence."""
    return h_index(graph.in_degrees())


@dataclass
class ObsolescenceCurve:
    """Share ``r`` of all citations held by the oldest fraction ``o`` of nodes."""

    o: np.ndarray
    r: np.ndarray

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.o.tolist(), self.r.tolist()))

    def at(self, o: float) -> float:
        return float(np.interp(o, self.o, self.r))


def default_o_grid(points: int = 100) -> np.ndarray:
    return np.arange(1, points + 1) / points


def obsolescence_curve(graph: EvolvingDigraph, grid=None, degree_kind: str = "in") -> ObsolescenceCurve:
    """For each ``o``: degree held by the ``floor(o n)`` oldest nodes over the total.

    ``degree_kind`` is ``"in"`` (citations received, the default) or
    ``"total"`` (in + out).
    """
    o = default_o_grid() if grid is None else np.asarray(grid, dtype=float)
    if o.size == 0 or np.any(o <= 0) or np.any(o > 1) or np.any(np.diff(o) < 0):
        raise ValueError("grid values must be sorted and lie in (0, 1]")
    if degree_kind == "in":
        deg = graph.in_degrees()
    elif degree_kind == "total":
        deg = graph.in_degrees() + graph.out_degrees()
    else:
        raise ValueError(f"unknown degree kind {degree_kind!r}")
    total = deg.sum()
    if total == 0:
        raise ValueError("graph has no edges")
    cum = np.concatenate([[0], np.cumsum(deg)])
    counts = np.floor(o * graph.n + 1e-9).astype(np.int64)
    return ObsolescenceCurve(o, cum[counts] / total)


@dataclass
class EvaluationReport:
    """Simulated-vs-observed comparison of one simulated network."""

    l1_error: float
    triangles: int
    triangle_ratio: float
    avg_diameter: float
    diameter_ratio: float
    h_index: int
    h_index_ratio: float
    obsolescence: ObsolescenceCurve = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "l1_error": self.l1_error,
            "triangles": self.triangles,
            "triangle_ratio": self.triangle_ratio,
            "avg_diameter": self.avg_diameter,
            "diameter_ratio": self.diameter_ratio,
            "h_index": self.h_index,
            "h_index_ratio": self.h_index_ratio,
            "obsolescence": self.obsolescence.points,
        }


@dataclass
class GraphSummary:
    """Metrics of one network, reused across comparisons."""

    in_dist: DegreeDistribution
    triangles: int
    avg_diameter: float
    h_index: int
    obsolescence: ObsolescenceCurve
    diameters: list[tuple[int, int]] = field(default_factory=list)


def summarize(graph: EvolvingDigraph, schedule: SnapshotSchedule = SnapshotSchedule(), sample_sources: int = 10,
              o_grid=None, seed=None, exact_diameter: bool = False) -> GraphSummary:
    diam = snapshot_diameters(graph, schedule, sample_sources, seed, exact_diameter)
    return GraphSummary(
        in_dist=in_degree_distribution(graph),
        triangles=count_triangles(graph),
        avg_diameter=float(np.mean([d for _, d in diam])),
        h_index=network_h_index(graph),
        obsolescence=obsolescence_curve(graph, o_grid),
        diameters=diam,
    )


def _ratio(sim: float, obs: float) -> float:
    return sim / obs if obs else float("nan")


def evaluate(observed: GraphSummary, simulated: GraphSummary) -> EvaluationReport:
    """Ratios are simulated / observed."""
    return EvaluationReport(
        l1_error=l1_distance(observed.in_dist, simulated.in_dist),
        triangles=simulated.triangles,
        triangle_ratio=_ratio(simulated.triangles, observed.triangles),
        avg_diameter=simulated.avg_diameter,
        diameter_ratio=_ratio(simulated.avg_diameter, observed.avg_diameter),
        h_index=simulated.h_index,
        h_index_ratio=_ratio(simulated.h_index, observed.h_index),
        obsolescence=simulated.obsolescence,
    )


def empirical_ccdf(values, x) -> np.ndarray:
    """``Pr(V >= x)`` for each ``x``."""
    v = np.sort(np.asarray(values, dtype=float))
    return 1.0 - np.searchsorted(v, np.asarray(x, dtype=float), side="left") / v.size


def loglog_ccdf_slope(values, x_min: float, x_max: float, points: int = 30) -> float:
    """Least-squares slope of ``log Pr(V >= x)`` against ``log x``.

    The CCDF is evaluated on ``points`` log-spaced abscissae in
    ``[x_min, x_max]``; abscissae past the largest value are skipped.
    """
    x = np.logspace(np.log10(x_min), np.log10(x_max), points)
    c = empirical_ccdf(values, x)
    ok = c > 0
    if ok.sum() < 2:
        raise ValueError("fewer than two points with nonzero CCDF")
    return float(np.polyfit(np.log(x[ok]), np.log(c[ok]), 1)[0])
