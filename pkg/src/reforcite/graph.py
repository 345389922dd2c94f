"""Append-only directed graph whose node ids are arrival indices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp


@dataclass(frozen=True)
class SnapshotSchedule:
    """Record a snapshot every ``step_size`` arrivals."""

    step_size: int = 5000

    def __post_init__(self):
        if self.step_size < 1:
            raise ValueError(f"step_size must be >= 1, got {self.step_size}")

    def sizes(self, n: int) -> list[int]:
        """Prefix sizes ``step, 2*step, ...`` plus ``n`` itself when it is not a multiple."""
        if n < 1:
            return []
        sizes = list(range(self.step_size, n + 1, self.step_size))
        if not sizes or sizes[-1] != n:
            sizes.append(n)
        return sizes


class EvolvingDigraph:
    """Directed graph grown one node at a time.

    Node ``u`` is the ``u``-th arrival. Each node's citations (out-edges) are
    fixed when it arrives; only in-edges accumulate afterwards. Graphs grown
    by the models in this package are DAGs under arrival order. Graphs loaded
    from data may contain forward edges (``u -> v`` with ``v > u``), which are
    counted in ``n_forward_edges``.
    """

    __slots__ = ("out_adj", "in_adj", "n_edges", "n_forward_edges")

    def __init__(self):
        self.out_adj: list[list[int]] = []
        self.in_adj: list[list[int]] = []
        self.n_edges = 0
        self.n_forward_edges = 0

    @property
    def n(self) -> int:
        return len(self.out_adj)

    def __len__(self) -> int:
        return len(self.out_adj)

    def __repr__(self) -> str:
        return f"EvolvingDigraph(n={self.n}, m={self.n_edges})"

    @property
    def birth_out_degree(self) -> list[int]:
        return [len(a) for a in self.out_adj]

    def add_node(self, targets=()) -> int:
        """Append a node citing ``targets`` and return its id.

        Raises:
            ValueError: if a target is out of range or repeated.
        """
        u = self.n
        targets = [int(v) for v in targets]
        seen = set()
        for v in targets:
            if not 0 <= v < u:
                raise ValueError(f"target {v} out of range for new node {u}")
            if v in seen:
                raise ValueError(f"duplicate target {v}")
            seen.add(v)
        self._append(targets)
        return u

    def _append(self, targets: list[int]) -> None:
        # Unchecked: callers guarantee distinct targets < n.
        u = len(self.out_adj)
        self.out_adj.append(targets)
        self.in_adj.append([])
        in_adj = self.in_adj
        for v in targets:
            in_adj[v].append(u)
        self.n_edges += len(targets)

    @classmethod
    def from_adjacency(cls, out_adj) -> "EvolvingDigraph":
        """Build from per-node target lists; forward edges are allowed and counted."""
        g = cls()
        n = len(out_adj)
        g.out_adj = [list(map(int, a)) for a in out_adj]
        g.in_adj = [[] for _ in range(n)]
        for u, targets in enumerate(g.out_adj):
            if len(set(targets)) != len(targets):
                raise ValueError(f"duplicate target in out_adj[{u}]")
            for v in targets:
                if not 0 <= v < n or v == u:
                    raise ValueError(f"invalid edge ({u}, {v})")
                if v > u:
                    g.n_forward_edges += 1
                g.in_adj[v].append(u)
            g.n_edges += len(targets)
        return g

    @classmethod
    def from_edges(cls, n: int, edges) -> "EvolvingDigraph":
        out_adj = [[] for _ in range(n)]
        for u, v in edges:
            out_adj[int(u)].append(int(v))
        return cls.from_adjacency(out_adj)

    def copy(self) -> "EvolvingDigraph":
        g = EvolvingDigraph()
        g.out_adj = [list(a) for a in self.out_adj]
        g.in_adj = [list(a) for a in self.in_adj]
        g.n_edges = self.n_edges
        g.n_forward_edges = self.n_forward_edges
        return g

    def in_degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.in_adj), dtype=np.int64, count=self.n)

    def out_degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.out_adj), dtype=np.int64, count=self.n)

    def edges(self) -> np.ndarray:
        """Edge array of shape ``(m, 2)`` ordered by source, then citation order."""
        out = self.out_degrees()
        src = np.repeat(np.arange(self.n, dtype=np.int64), out)
        dst = np.fromiter((v for a in self.out_adj for v in a), dtype=np.int64, count=self.n_edges)
        return np.column_stack([src, dst])

    def is_dag(self) -> bool:
        """True when every edge points to an earlier arrival."""
        return all(v < u for u, a in enumerate(self.out_adj) for v in a)

    def prefix(self, k: int) -> "EvolvingDigraph":
        """Subgraph induced by the first ``k`` arrivals."""
        if not 0 <= k <= self.n:
            raise ValueError(f"prefix size {k} outside [0, {self.n}]")
        return EvolvingDigraph.from_adjacency([[v for v in a if v < k] for a in self.out_adj[:k]])

    def undirected_csr(self, k: int | None = None) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency of the first ``k`` nodes (all nodes by default)."""
        k = self.n if k is None else k
        e = self.edges()
        if k < self.n:
            e = e[(e[:, 0] < k) & (e[:, 1] < k)]
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        a = sp.csr_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(k, k))
        a.sum_duplicates()
        a.data[:] = 1
        return a


def degree_views(graph: EvolvingDigraph, node: int) -> tuple[int, int, int]:
    """Return ``(k_in, k_out, k_total)`` of ``node``."""
    if not 0 <= node < graph.n:
        raise IndexError(f"node {node} out of range for graph with {graph.n} nodes")
    k_in = len(graph.in_adj[node])
    k_out = len(graph.out_adj[node])
    return k_in, k_out, k_in + k_out
