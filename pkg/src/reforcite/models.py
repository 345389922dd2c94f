"""Citation network growth models.

Every model grows an :class:`~reforcite.graph.EvolvingDigraph` from a single
seed node (id 0, no edges), adding one node per step. Each new node cites only
existing nodes, so the result is a DAG under arrival order.

Models:

* RefOrCite1 -- cite a uniform base node, then copy each of its in- and
  out-neighbours independently with probability ``p``.
* RefOrCite2 -- as RefOrCite1 with separate probabilities for the base's
  references (``p1``) and citations (``p2``).
* CP -- copy only the base's references.
* CPT -- copying with triad formation and age-biased base selection.
* Forest Fire -- recursive burning with geometric fan-out.
* PA -- preferential attachment on total degree.

All generators take a ``seed``; identical ``(params, n, seed)`` give identical
graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from reforcite.graph import EvolvingDigraph


class EdgeBudgetExceeded(RuntimeError):
    """Raised when a growth run creates more edges than its ``max_edges`` budget."""

    def __init__(self, n_nodes: int, n_edges: int, max_edges: int):
        super().__init__(f"{n_edges} edges after {n_nodes} nodes exceeds budget of {max_edges}")
        self.n_nodes = n_nodes
        self.n_edges = n_edges
        self.max_edges = max_edges


def _check_prob(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


@dataclass(frozen=True)
class RefOrCite1:
    p: float
    kind: ClassVar[str] = "reforcite1"

    def __post_init__(self):
        _check_prob("p", self.p)


@dataclass(frozen=True)
class RefOrCite2:
    p1: float
    p2: float
    kind: ClassVar[str] = "reforcite2"

    def __post_init__(self):
        _check_prob("p1", self.p1)
        _check_prob("p2", self.p2)


@dataclass(frozen=True)
class CP:
    p: float
    kind: ClassVar[str] = "cp"

    def __post_init__(self):
        _check_prob("p", self.p)


@dataclass(frozen=True)
class CPT:
    alpha: float
    beta: float
    out_degree_sequence: tuple[int, ...] = field(repr=False)
    kind: ClassVar[str] = "cpt"

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha}")
        _check_prob("beta", self.beta)
        seq = tuple(int(k) for k in self.out_degree_sequence)
        if not seq:
            raise ValueError("out_degree_sequence is empty")
        if min(seq) < 0:
            raise ValueError("out_degree_sequence entries must be >= 0")
        object.__setattr__(self, "out_degree_sequence", seq)


@dataclass(frozen=True)
class ForestFire:
    p_a: float
    b: float
    kind: ClassVar[str] = "ff"

    def __post_init__(self):
        if not 0.0 < self.p_a < 1.0:
            raise ValueError(f"p_a must lie in (0, 1), got {self.p_a}")
        if self.b < 0:
            raise ValueError(f"b must be >= 0, got {self.b}")
        if self.b * self.p_a >= 1.0:
            raise ValueError(f"b * p_a must be < 1, got {self.b * self.p_a}")


@dataclass(frozen=True)
class PA:
    m: int
    offset: int = 0
    kind: ClassVar[str] = "pa"

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be an integer >= 1, got {self.m}")
        if int(self.offset) != self.offset or self.offset < 0:
            raise ValueError(f"offset must be an integer >= 0, got {self.offset}")


ModelParams = RefOrCite1 | RefOrCite2 | CP | CPT | ForestFire | PA

MODEL_KINDS = {cls.kind: cls for cls in (RefOrCite1, RefOrCite2, CP, CPT, ForestFire, PA)}


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _start(n: int, min_n: int = 2) -> EvolvingDigraph:
    if n < min_n:
        raise ValueError(f"n must be >= {min_n}, got {n}")
    g = EvolvingDigraph()
    g._append([])
    return g


def _grow_copying(n, p_out, p_in, seed, max_edges) -> EvolvingDigraph:
    """Shared loop for RefOrCite1/2 and CP.

    Random draws per step: one base index, then one uniform per out-neighbour
    (if ``p_out > 0``) followed by one per in-neighbour (if ``p_in > 0``).
    """
    g = _start(n)
    rng = _rng(seed)
    out_adj, in_adj = g.out_adj, g.in_adj
    n_edges = 0
    for j in range(1, n):
        i = int(rng.integers(j))
        targets = [i]
        outs = out_adj[i] if p_out > 0 else ()
        ins = in_adj[i] if p_in > 0 else ()
        n_out, n_in = len(outs), len(ins)
        if n_out + n_in:
            u = rng.random(n_out + n_in)
            if n_out:
                targets.extend(outs[x] for x in np.flatnonzero(u[:n_out] < p_out).tolist())
            if n_in:
                # The base's citers are all newer than the base and its
                # references older, so the two lists never overlap here.
                targets.extend(ins[x] for x in np.flatnonzero(u[n_out:] < p_in).tolist())
        out_adj.append(targets)
        in_adj.append([])
        for v in targets:
            in_adj[v].append(j)
        n_edges += len(targets)
        if max_edges is not None and n_edges > max_edges:
            g.n_edges = n_edges
            raise EdgeBudgetExceeded(j + 1, n_edges, max_edges)
    g.n_edges = n_edges
    return g


def grow_reforcite1(n: int, p: float, seed=None, max_edges: int | None = None) -> EvolvingDigraph:
    """RefOrCite1: copy every neighbour of a uniform base with probability ``p``.

    Uses the same random stream as ``grow_reforcite2(n, p, p, seed)``, so the
    two produce identical graphs.

    Raises:
        ValueError: ``n < 2`` or ``p`` outside [0, 1].
        EdgeBudgetExceeded: more than ``max_edges`` edges were created.
    """
    RefOrCite1(p)
    return _grow_copying(n, p, p, seed, max_edges)


def grow_reforcite2(n: int, p1: float, p2: float, seed=None, max_edges: int | None = None) -> EvolvingDigraph:
    """RefOrCite2: copy the base's citers with ``p1`` and its references with ``p2``.

    A node's in-degree then grows at rate ``p2`` per citation it already has,
    which sets the tail exponent ``1/p2``.
    """
    RefOrCite2(p1, p2)
    return _grow_copying(n, p2, p1, seed, max_edges)


def grow_cp(n: int, p: float, seed=None, max_edges: int | None = None) -> EvolvingDigraph:
    """Copying model: like RefOrCite1 but only the base's references are copied."""
    CP(p)
    return _grow_copying(n, p, 0.0, seed, max_edges)


class _AgingSampler:
    """Draw a node older than ``i`` with probability proportional to ``(i - j) ** alpha``."""

    def __init__(self, n: int, alpha: float, rng: np.random.Generator):
        ages = np.arange(1, max(n, 2), dtype=np.float64)
        with np.errstate(over="ignore", divide="ignore"):
            w = ages**alpha
        self.cum = np.concatenate([[0.0], np.cumsum(w)])
        if not np.all(np.isfinite(self.cum)) or not np.all(w > 0):
            raise ValueError(f"alpha={alpha} gives non-finite or zero aging weights")
        self.w = w
        self.rng = rng

    def draw(self, i: int) -> int:
        # cum[i] is the total weight of ages 1..i.
        x = self.rng.random() * self.cum[i]
        age = int(np.searchsorted(self.cum, x, side="right"))
        age = min(max(age, 1), i)
        return i - age

    def draw_excluding(self, i: int, taken: set) -> int | None:
        if len(taken) >= i:
            return None
        for _ in range(32):
            j = self.draw(i)
            if j not in taken:
                return j
        free = np.array([j for j in range(i) if j not in taken], dtype=np.int64)
        p = self.w[i - free - 1]
        return int(free[np.searchsorted(np.cumsum(p), self.rng.random() * p.sum(), side="right").clip(max=free.size - 1)])


def grow_cpt(n: int, alpha: float, beta: float, out_degree_sequence, seed=None,
             max_edges: int | None = None) -> EvolvingDigraph:
    """Copying with triad formation (aging variant).

    Node ``i`` wants ``min(out_degree_sequence[i], i)`` citations. It picks a
    base ``j`` with probability proportional to ``(i - j) ** alpha`` and cites
    it. Each remaining stub goes, with probability ``beta``, to a uniform
    not-yet-cited neighbour (either direction) of the base, otherwise to a new
    node drawn from the aging distribution. When the base has no uncited
    neighbour left a fresh base is drawn and cited. After ``10 * k`` fresh
    bases the leftover stubs are dropped.

    ``alpha < 0`` favours recent nodes.
    """
    params = CPT(alpha, beta, tuple(out_degree_sequence))
    seq = params.out_degree_sequence
    if len(seq) < n:
        raise ValueError(f"out_degree_sequence has {len(seq)} entries, need >= {n}")
    g = _start(n)
    rng = _rng(seed)
    sampler = _AgingSampler(n, alpha, rng)
    out_adj, in_adj = g.out_adj, g.in_adj
    n_edges = 0
    for i in range(1, n):
        k = min(seq[i], i)
        targets: list[int] = []
        if k:
            taken: set[int] = set()
            base = sampler.draw(i)
            taken.add(base)
            targets.append(base)
            reselections = 0
            while len(targets) < k:
                if rng.random() < beta:
                    cand = [x for x in out_adj[base] + in_adj[base] if x not in taken]
                    if not cand:
                        reselections += 1
                        if reselections > 10 * k:
                            break
                        base = sampler.draw(i)
                        if base not in taken:
                            taken.add(base)
                            targets.append(base)
                        continue
                    x = cand[int(rng.integers(len(cand)))]
                else:
                    x = sampler.draw_excluding(i, taken)
                    if x is None:
                        break
                taken.add(x)
                targets.append(x)
        out_adj.append(targets)
        in_adj.append([])
        for v in targets:
            in_adj[v].append(i)
        n_edges += len(targets)
        if max_edges is not None and n_edges > max_edges:
            g.n_edges = n_edges
            raise EdgeBudgetExceeded(i + 1, n_edges, max_edges)
    g.n_edges = n_edges
    return g


def grow_forest_fire(n: int, p_a: float, b: float, seed=None, max_edges: int | None = None) -> EvolvingDigraph:
    """Forest Fire growth.

    The new node cites a uniform ambassador, then burns outward: at each burned
    node it draws ``x ~ Geom`` with mean ``p_a / (1 - p_a)`` and
    ``y ~ Geom`` with mean ``b p_a / (1 - b p_a)`` (support ``{0, 1, ...}``),
    cites up to ``x`` unvisited out-neighbours and ``y`` unvisited
    in-neighbours chosen uniformly, and recurses into them. No node is
    visited twice.
    """
    ForestFire(p_a, b)
    g = _start(n)
    rng = _rng(seed)
    out_adj, in_adj = g.out_adj, g.in_adj
    q_fwd = 1.0 - p_a
    q_back = 1.0 - b * p_a
    n_edges = 0
    for v in range(1, n):
        w = int(rng.integers(v))
        visited = {w}
        targets = [w]
        frontier = [w]
        while frontier:
            nxt = []
            for u in frontier:
                x = int(rng.geometric(q_fwd)) - 1
                y = int(rng.geometric(q_back)) - 1 if q_back < 1.0 else 0
                for count, pool in ((x, out_adj[u]), (y, in_adj[u])):
                    if count <= 0:
                        continue
                    free = [z for z in pool if z not in visited]
                    if not free:
                        continue
                    if count < len(free):
                        picked = [free[t] for t in rng.choice(len(free), size=count, replace=False).tolist()]
                    else:
                        picked = free
                    for z in picked:
                        visited.add(z)
                        targets.append(z)
                        nxt.append(z)
            frontier = nxt
        out_adj.append(targets)
        in_adj.append([])
        for z in targets:
            in_adj[z].append(v)
        n_edges += len(targets)
        if max_edges is not None and n_edges > max_edges:
            g.n_edges = n_edges
            raise EdgeBudgetExceeded(v + 1, n_edges, max_edges)
    g.n_edges = n_edges
    return g


def grow_pa(n: int, m: int, seed=None, max_edges: int | None = None, offset: int = 0) -> EvolvingDigraph:
    """Preferential attachment baseline.

    Each new node cites ``min(m, existing nodes)`` distinct nodes, each chosen
    with probability proportional to ``total degree + offset``. The default
    ``offset=0`` is the Barabasi-Albert kernel (degree CCDF slope -2);
    every node but the seed has degree >= 1 when it becomes eligible.
    """
    PA(m, offset)
    m, offset = int(m), int(offset)
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    g = _start(n)
    rng = _rng(seed)
    out_adj, in_adj = g.out_adj, g.in_adj
    # Node u appears deg(u) + offset times in the urn.
    urn = [0] * offset
    n_edges = 0
    for j in range(1, n):
        k = min(m, j)
        if k == j:
            targets = list(range(j))
        else:
            chosen: set[int] = set()
            targets = []
            while len(targets) < k:
                draws = rng.integers(len(urn), size=k - len(targets)).tolist()
                for d in draws:
                    v = urn[d]
                    if v not in chosen and len(targets) < k:
                        chosen.add(v)
                        targets.append(v)
        out_adj.append(targets)
        in_adj.append([])
        for v in targets:
            in_adj[v].append(j)
        urn.extend(targets)
        urn.extend([j] * (len(targets) + offset))
        n_edges += len(targets)
        if max_edges is not None and n_edges > max_edges:
            g.n_edges = n_edges
            raise EdgeBudgetExceeded(j + 1, n_edges, max_edges)
    g.n_edges = n_edges
    return g


def grow(params: ModelParams, n: int, seed=None, max_edges: int | None = None) -> EvolvingDigraph:
    """Dispatch to the generator matching ``params``."""
    if isinstance(params, RefOrCite1):
        return grow_reforcite1(n, params.p, seed, max_edges)
    if isinstance(params, RefOrCite2):
        return grow_reforcite2(n, params.p1, params.p2, seed, max_edges)
    if isinstance(params, CP):
        return grow_cp(n, params.p, seed, max_edges)
    if isinstance(params, CPT):
        return grow_cpt(n, params.alpha, params.beta, params.out_degree_sequence, seed, max_edges)
    if isinstance(params, ForestFire):
        return grow_forest_fire(n, params.p_a, params.b, seed, max_edges)
    if isinstance(params, PA):
        return grow_pa(n, params.m, seed, max_edges, params.offset)
    raise TypeError(f"unknown model parameters {params!r}")


def params_to_dict(params: ModelParams) -> dict:
    d = {"model": params.kind}
    for name, value in params.__dict__.items():
        if name == "out_degree_sequence":
            d["out_degree_sequence_length"] = len(value)
        else:
            d[name] = value
    return d
