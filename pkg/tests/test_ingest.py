import logging

import numpy as np
import pytest

from reforcite.graph import EvolvingDigraph
from reforcite.ingest import EdgeListError, load_graph, observed_stats, write_edge_list
from reforcite.models import grow_reforcite1


@pytest.fixture
def write(tmp_path):
    def _write(text, name="edges.txt"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return p

    return _write


def test_first_appearance(write):
    lg = load_graph(write("1 2\n3 1\n"))
    assert lg.graph.n == 3
    assert lg.order.ids == ["1", "2", "3"]
    assert lg.graph.n_edges == 2
    # "1 cites 2" points at a later arrival under this order.
    assert lg.n_forward == 1


def test_comments_and_blank_lines(write):
    lg = load_graph(write("# header\n# FromNodeId ToNodeId\n\n2 1\n3 1\n3 2\n"))
    assert lg.graph.n == 3 and lg.graph.n_edges == 3
    assert lg.n_forward == 1


def test_string_ids_and_tabs(write):
    lg = load_graph(write("paperB\tpaperA\npaperC paperA\n"))
    assert lg.order.ids == ["paperB", "paperA", "paperC"]


def test_bad_line_reports_line_number(write):
    with pytest.raises(EdgeListError, match=r":3:"):
        load_graph(write("1 0\n2 0\n3 1 7\n"))


def test_empty_file(write):
    with pytest.raises(EdgeListError):
        load_graph(write("# nothing\n"))


def test_duplicates_and_self_loops(write, caplog):
    with caplog.at_level(logging.WARNING):
        lg = load_graph(write("1 0\n1 0\n2 2\n2 0\n"), order="numeric")
    assert lg.n_duplicates == 1
    assert lg.n_self_loops == 1
    assert lg.graph.n_edges == 2
    assert "duplicate" in caplog.text


def test_numeric_order(write):
    lg = load_graph(write("10 2\n3 2\n10 3\n"), order="numeric")
    assert lg.order.ids == ["2", "3", "10"]
    assert lg.graph.is_dag()


def test_numeric_order_needs_integers(write):
    with pytest.raises(EdgeListError):
        load_graph(write("a b\n"), order="numeric")


def test_timestamp_order(write):
    edges = write("b a\nc a\nc b\n")
    stamps = write("c 2003\na 1999\nb 2001\n", "ts.txt")
    lg = load_graph(edges, order="timestamps", companion=stamps)
    assert lg.order.ids == ["a", "b", "c"]
    assert lg.n_forward == 0


def test_timestamp_missing_ids_go_last(write):
    edges = write("b a\nc a\n")
    stamps = write("a 1\nb 2\n", "ts.txt")
    assert load_graph(edges, order="timestamps", companion=stamps).order.ids == ["a", "b", "c"]


def test_given_order(write):
    edges = write("x y\nz y\n")
    lg = load_graph(edges, order="given", companion=write("y\nx\nz\n", "order.txt"))
    assert lg.order.ids == ["y", "x", "z"]
    with pytest.raises(EdgeListError):
        load_graph(edges, order="given", companion=write("y\nx\n", "short.txt"))


def test_companion_required(write):
    with pytest.raises(EdgeListError):
        load_graph(write("1 0\n"), order="timestamps")


def test_unknown_strategy(write):
    with pytest.raises(EdgeListError):
        load_graph(write("1 0\n"), order="alphabetical", companion=write("0\n1\n", "c.txt"))


def test_round_trip(tmp_path):
    g = grow_reforcite1(700, 0.45, seed=3)
    p = tmp_path / "g.txt"
    write_edge_list(g, p)
    h = load_graph(p, order="numeric").graph
    assert h.n == g.n
    assert np.array_equal(h.edges(), g.edges())
    assert observed_stats(h).to_dict() == observed_stats(g).to_dict()


def test_round_trip_keeps_isolated_nodes(tmp_path):
    g = EvolvingDigraph.from_edges(5, [(1, 0)])
    p = tmp_path / "g.txt"
    write_edge_list(g, p)
    assert load_graph(p, order="numeric").graph.n == 5


def test_renumbering_preserves_degree_multisets(write):
    rng = np.random.default_rng(0)
    raw = [(int(u), int(v)) for u, v in rng.integers(0, 60, (300, 2)) if u != v]
    text = "".join(f"n{u} n{v}\n" for u, v in raw)
    g = load_graph(write(text)).graph
    uniq = set(raw)
    assert g.n_edges == len(uniq)
    ins = sorted(np.bincount([v for _, v in uniq], minlength=60)[sorted({x for e in uniq for x in e})])
    assert sorted(g.in_degrees().tolist()) == ins


def test_observed_stats_two_nodes():
    s = observed_stats(EvolvingDigraph.from_edges(2, [(1, 0)]))
    assert (s.n, s.m, s.avg_in_degree) == (2, 1, 0.5)
    assert s.out_degree_sequence == [0, 1]
    assert s.triangles == 0 and s.h_index == 1
    assert s.in_degree_distribution.counts == {0: 1, 1: 1}
