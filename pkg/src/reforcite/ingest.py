"""Load citation edge lists and derive arrival order and observed statistics.

Input is a SNAP-style text file: one ``FromNodeId ToNodeId`` pair per line,
whitespace separated, ``#`` starting a comment line. ``FromNodeId`` cites
``ToNodeId``. Node ids are arbitrary tokens.

Arrival order strategies:

``first-appearance``
    ids in order of first occurrence while reading the file (source token
    before target token on each line).
``numeric``
    ids are integers; arrival follows numeric order.
``timestamps``
    a companion file of ``id timestamp`` lines; ties and ids without a
    timestamp fall back to first appearance (untimed ids go last).
``given``
    a companion file listing ids one per line in arrival order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from reforcite.graph import EvolvingDigraph
from reforcite.metrics import DegreeDistribution, count_triangles, in_degree_distribution, network_h_index

log = logging.getLogger(__name__)

STRATEGIES = ("first-appearance", "numeric", "timestamps", "given")


class EdgeListError(ValueError):
    """Malformed edge-list or companion file."""


@dataclass
class ArrivalOrder:
    ids: list[str]
    strategy: str
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {x: i for i, x in enumerate(self.ids)}
        if len(self.index) != len(self.ids):
            raise EdgeListError("arrival order lists an id twice")


@dataclass
class LoadedGraph:
    graph: EvolvingDigraph
    order: ArrivalOrder
    n_forward: int = 0
    n_duplicates: int = 0
    n_self_loops: int = 0


def _read_pairs(path) -> tuple[list[tuple[str, str]], int | None]:
    pairs = []
    declared_nodes = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s:
                continue
            if s.startswith("#"):
                parts = s[1:].split()
                if len(parts) >= 2 and parts[0] == "nodes":
                    declared_nodes = int(parts[1])
                continue
            parts = s.split()
            if len(parts) != 2:
                raise EdgeListError(f"{path}:{lineno}: expected 2 fields, got {len(parts)}: {s!r}")
            pairs.append((parts[0], parts[1]))
    if not pairs and not declared_nodes:
        raise EdgeListError(f"{path}: no edges")
    return pairs, declared_nodes


def _first_appearance(pairs) -> list[str]:
    seen = {}
    for u, v in pairs:
        seen.setdefault(u, None)
        seen.setdefault(v, None)
    return list(seen)


def _read_companion(path) -> list[list[str]]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            rows.append(s.split())
    return rows


def arrival_order(pairs, strategy: str = "first-appearance", companion=None, declared_nodes=None) -> ArrivalOrder:
    ids = _first_appearance(pairs)
    if strategy == "first-appearance":
        return ArrivalOrder(ids, strategy)
    if strategy == "numeric":
        try:
            nums = {x: int(x) for x in ids}
        except ValueError as e:
            raise EdgeListError(f"numeric order needs integer ids: {e}") from None
        if declared_nodes is not None:
            for k in range(declared_nodes):
                nums.setdefault(str(k), k)
        return ArrivalOrder(sorted(nums, key=nums.__getitem__), strategy)
    if companion is None:
        raise EdgeListError(f"strategy {strategy!r} needs a companion file")
    rows = _read_companion(companion)
    if strategy == "timestamps":
        stamp = {}
        for r in rows:
            if len(r) < 2:
                raise EdgeListError(f"{companion}: expected 'id timestamp', got {' '.join(r)!r}")
            stamp[r[0]] = r[1]
        first = {x: i for i, x in enumerate(ids)}
        timed = [x for x in ids if x in stamp]
        untimed = [x for x in ids if x not in stamp]
        if untimed:
            log.warning("%d ids have no timestamp and are placed last", len(untimed))
        timed.sort(key=lambda x: (_stamp_key(stamp[x]), first[x]))
        return ArrivalOrder(timed + untimed, strategy)
    if strategy == "given":
        given = [r[0] for r in rows]
        known = set(given)
        missing = [x for x in ids if x not in known]
        if missing:
            raise EdgeListError(f"{companion}: {len(missing)} ids missing from arrival list, e.g. {missing[0]!r}")
        return ArrivalOrder(given, strategy)
    raise EdgeListError(f"unknown order strategy {strategy!r}; choose from {STRATEGIES}")


def _stamp_key(s: str):
    try:
        return (0, float(s), "")
    except ValueError:
        return (1, 0.0, s)


def load_graph(path, order: str = "first-appearance", companion=None) -> LoadedGraph:
    """Parse an edge list and renumber nodes by arrival.

    Self-loops are dropped and duplicate edges collapsed (both counted).
    Edges that cite a later arrival are kept and counted in ``n_forward``.

    Raises:
        EdgeListError: unparseable line (with its line number) or bad
            companion file.
    """
    pairs, declared = _read_pairs(path)
    ao = arrival_order(pairs, order, companion, declared)
    idx = ao.index
    n = len(ao.ids)
    out_adj: list[list[int]] = [[] for _ in range(n)]
    seen = set()
    dups = loops = 0
    for u, v in pairs:
        a, b = idx[u], idx[v]
        if a == b:
            loops += 1
            continue
        if (a, b) in seen:
            dups += 1
            continue
        seen.add((a, b))
        out_adj[a].append(b)
    if dups:
        log.warning("%s: collapsed %d duplicate edges", path, dups)
    if loops:
        log.warning("%s: dropped %d self-loops", path, loops)
    g = EvolvingDigraph.from_adjacency(out_adj)
    if g.n_forward_edges:
        log.warning("%s: %d edges cite a later arrival", path, g.n_forward_edges)
    return LoadedGraph(g, ao, g.n_forward_edges, dups, loops)


def write_edge_list(graph: EvolvingDigraph, path) -> None:
    """Write ``from to`` lines with arrival indices, preceded by a ``# nodes N edges M`` header."""
    e = graph.edges()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# nodes {graph.n} edges {graph.n_edges}\n")
        if e.size:
            np.savetxt(fh, e, fmt="%d", delimiter=" ")


@dataclass
class ObservedStats:
    n: int
    m: int
    avg_in_degree: float
    in_degree_distribution: DegreeDistribution = field(repr=False)
    out_degree_sequence: list[int] = field(repr=False)
    triangles: int
    h_index: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "avg_in_degree": self.avg_in_degree,
            "triangles": self.triangles,
            "h_index": self.h_index,
        }


def observed_stats(graph: EvolvingDigraph) -> ObservedStats:
    return ObservedStats(
        n=graph.n,
        m=graph.n_edges,
        avg_in_degree=graph.n_edges / graph.n if graph.n else 0.0,
        in_degree_distribution=in_degree_distribution(graph),
        out_degree_sequence=graph.out_degrees().tolist(),
        triangles=count_triangles(graph),
        h_index=network_h_index(graph),
    )
