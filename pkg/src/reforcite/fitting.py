"""Grid-search parameter estimation against an observed in-degree distribution.

For every grid point the model is simulated with as many nodes as the
observed network and scored by the L1 distance between in-degree
distributions. The point with the smallest mean L1 wins; ties go to the
point listed first, which is the smaller parameter value.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from reforcite.meanfield import _avg_in_degree_smooth, avg_in_degree
from reforcite.metrics import DegreeDistribution, in_degree_distribution, l1_distance
from reforcite.models import CP, CPT, EdgeBudgetExceeded, ForestFire, ModelParams, RefOrCite1, RefOrCite2, grow


@dataclass
class FitConfig:
    """Settings shared by every fit.

    Attributes:
        target: observed in-degree distribution.
        n: nodes per simulated network (the observed network's size).
        grid_step: spacing of probability grids.
        realizations: simulations per grid point.
        seed: master seed; per-run seeds derive from (seed, grid index, realization).
        max_edge_factor: a run is abandoned, and its grid point scored as
            infinitely bad, once it holds more than this many times the
            target's edge count. ``None`` disables the cap.
        aggregate: ``"mean"`` averages per-realization L1 values;
            ``"pooled"`` scores the pooled histogram of all realizations.
        workers: process count for evaluating grid points.
    """

    target: DegreeDistribution
    n: int
    grid_step: float = 0.01
    realizations: int = 3
    seed: int = 0
    max_edge_factor: float | None = 20.0
    aggregate: str = "mean"
    workers: int = 1

    def __post_init__(self):
        if not 0.0 < self.grid_step < 1.0:
            raise ValueError(f"grid_step must lie in (0, 1), got {self.grid_step}")
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        if self.target.n == 0:
            raise ValueError("target distribution is empty")
        if self.aggregate not in ("mean", "pooled"):
            raise ValueError(f"unknown aggregate {self.aggregate!r}")

    @property
    def max_edges(self) -> int | None:
        if self.max_edge_factor is None:
            return None
        m = sum(k * c for k, c in self.target.counts.items())
        return max(int(self.max_edge_factor * m), self.n)


@dataclass
class FitResult:
    model: ModelParams
    l1: float
    grid_trace: list[tuple[ModelParams, float]] = field(repr=False)


def run_seed(master: int, grid_index: int, realization: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([master, grid_index, realization])


def _score_point(args) -> float:
    params, idx, config = args
    dists = []
    for r in range(config.realizations):
        try:
            g = grow(params, config.n, np.random.default_rng(run_seed(config.seed, idx, r)), config.max_edges)
        except EdgeBudgetExceeded:
            return math.inf
        dists.append(in_degree_distribution(g))
    if config.aggregate == "mean":
        return float(np.mean([l1_distance(config.target, d) for d in dists]))
    pooled = Counter()
    for d in dists:
        pooled.update(d.counts)
    return l1_distance(config.target, DegreeDistribution(dict(pooled), sum(d.n for d in dists)))


def fit_grid(candidates: list[ModelParams], config: FitConfig) -> FitResult:
    """Score every candidate and return the best one with the full trace."""
    if not candidates:
        raise ValueError("parameter grid is empty")
    jobs = [(params, idx, config) for idx, params in enumerate(candidates)]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as ex:
            scores = list(ex.map(_score_point, jobs))
    else:
        scores = [_score_point(j) for j in jobs]
    trace = list(zip(candidates, scores))
    best = int(np.argmin(scores))
    return FitResult(candidates[best], scores[best], trace)


def probability_grid(step: float, lo: float = 0.0, hi: float = 1.0, open_ends: bool = True) -> list[float]:
    """Multiples of ``step`` in ``(lo, hi)`` (or ``[lo, hi]`` when ``open_ends`` is false)."""
    k0 = math.ceil(lo / step - 1e-9)
    k1 = math.floor(hi / step + 1e-9)
    vals = [round(k * step, 10) for k in range(k0, k1 + 1)]
    if open_ends:
        vals = [v for v in vals if lo < v < hi]
    else:
        vals = [v for v in vals if lo - 1e-12 <= v <= hi + 1e-12]
    return vals


def fit_single_parameter(kind: str, config: FitConfig) -> FitResult:
    """Fit ``p`` of RefOrCite1 (``"reforcite1"``) or CP (``"cp"``) over ``(0, 1)``."""
    cls = {"reforcite1": RefOrCite1, "cp": CP}.get(kind)
    if cls is None:
        raise ValueError(f"single-parameter fit supports 'reforcite1' and 'cp', got {kind!r}")
    return fit_grid([cls(p) for p in probability_grid(config.grid_step)], config)


def solve_p_sum(observed_avg_in_degree: float, t: int) -> float:
    """Find ``c = p1 + p2`` whose predicted average in-degree at ``t`` matches.

    The prediction increases strictly with ``c``, so the root is unique and
    found by bisection on ``(0, 2)``. An observation equal to the boundary
    expression ``ln(t/2) - 1/2`` returns ``c = 1`` exactly.

    Raises:
        ValueError: ``t < 3`` or the observation lies outside the range
            reachable for ``c`` in ``(0, 2)``.
    """
    if t < 3:
        raise ValueError(f"t must be >= 3, got {t}")
    y = float(observed_avg_in_degree)
    if y <= 0:
        raise ValueError("observed average in-degree must be > 0")
    if abs(y - avg_in_degree(t, 0.5, 0.5)) <= 1e-12 * max(1.0, abs(y)):
        return 1.0
    lo_val = _avg_in_degree_smooth(t, 0.0)
    hi_val = _avg_in_degree_smooth(t, 2.0)
    if not lo_val < y < hi_val:
        raise ValueError(f"observed value {y} outside reachable range ({lo_val}, {hi_val}) at t={t}")
    return float(optimize.bisect(lambda c: _avg_in_degree_smooth(t, c) - y, 0.0, 2.0, xtol=1e-12, maxiter=200))


def fit_reforcite2(config: FitConfig, c: float) -> FitResult:
    """Grid over ``p1`` on the line ``p1 + p2 = c`` inside the unit square."""
    if not 0.0 < c < 2.0:
        raise ValueError(f"c must lie in (0, 2), got {c}")
    lo, hi = max(0.0, c - 1.0), min(c, 1.0)
    grid = probability_grid(config.grid_step, lo, hi, open_ends=False)
    if not grid:
        raise ValueError(f"no grid point for p1 in [{lo}, {hi}]")
    cands = [RefOrCite2(p1, min(1.0, max(0.0, round(c - p1, 10)))) for p1 in grid]
    return fit_grid(cands, config)


def fit_cpt(config: FitConfig, alpha_grid, beta_grid, out_degree_sequence) -> FitResult:
    """2-D grid over ``(alpha, beta)`` with a fixed out-degree sequence."""
    seq = tuple(int(k) for k in out_degree_sequence)
    if len(seq) < config.n:
        raise ValueError(f"out_degree_sequence has {len(seq)} entries, need >= {config.n}")
    cands = [CPT(float(a), float(b), seq) for a in sorted(alpha_grid) for b in sorted(beta_grid)]
    return fit_grid(cands, config)


def fit_forest_fire(config: FitConfig, pa_grid, b_grid) -> FitResult:
    """2-D grid over ``(p_a, b)``; combinations with ``b p_a >= 1`` are left out."""
    cands = [ForestFire(float(pa), float(b)) for pa in sorted(pa_grid) for b in sorted(b_grid)
             if 0 < pa < 1 and b >= 0 and b * pa < 1]
    return fit_grid(cands, config)
