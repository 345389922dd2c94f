import numpy as np
import pytest
from scipy import stats

from reforcite.meanfield import expected_avg_degree, expected_avg_in_degree, rescale_degrees2
from reforcite.metrics import in_degree_distribution, loglog_ccdf_slope
from reforcite.models import (
    CP,
    CPT,
    PA,
    EdgeBudgetExceeded,
    ForestFire,
    RefOrCite1,
    RefOrCite2,
    grow,
    grow_cp,
    grow_cpt,
    grow_forest_fire,
    grow_pa,
    grow_reforcite1,
    grow_reforcite2,
    params_to_dict,
)

ALL_MODELS = [
    RefOrCite1(0.4),
    RefOrCite2(0.3, 0.5),
    CP(0.55),
    CPT(-1.0, 0.99, tuple([0] + [3] * 500)),
    ForestFire(0.3, 0.5),
    PA(2),
]


@pytest.mark.parametrize("params", ALL_MODELS, ids=lambda p: p.kind)
def test_two_nodes_single_edge(params):
    g = grow(params, 2, seed=123)
    assert g.edges().tolist() == [[1, 0]]


@pytest.mark.parametrize("params", ALL_MODELS, ids=lambda p: p.kind)
def test_deterministic(params):
    a = grow(params, 400, seed=99).edges()
    b = grow(params, 400, seed=99).edges()
    c = grow(params, 400, seed=100).edges()
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


@pytest.mark.parametrize("params", ALL_MODELS, ids=lambda p: p.kind)
def test_dag_without_duplicates(params):
    g = grow(params, 300, seed=5)
    assert g.is_dag()
    for targets in g.out_adj:
        assert len(set(targets)) == len(targets)


@pytest.mark.parametrize("grow_fn", [grow_reforcite1, grow_reforcite2, grow_cp, grow_forest_fire])
def test_n_below_two_rejected(grow_fn):
    args = {grow_reforcite2: (0.1, 0.1), grow_forest_fire: (0.1, 1.0)}.get(grow_fn, (0.1,))
    with pytest.raises(ValueError):
        grow_fn(1, *args)


@pytest.mark.parametrize("bad", [-0.1, 1.5])
def test_probability_bounds(bad):
    with pytest.raises(ValueError):
        grow_reforcite1(10, bad)
    with pytest.raises(ValueError):
        grow_reforcite2(10, 0.5, bad)
    with pytest.raises(ValueError):
        grow_cp(10, bad)


def test_p_zero_gives_random_recursive_tree():
    g = grow_reforcite1(1000, 0.0, seed=1)
    assert g.out_degrees()[0] == 0
    assert np.all(g.out_degrees()[1:] == 1)
    g2 = grow_reforcite2(1000, 0.0, 0.0, seed=1)
    assert np.all(g2.out_degrees()[1:] == 1)


def test_copying_out_degree_at_least_one():
    for g in (grow_reforcite1(500, 0.7, 3), grow_reforcite2(500, 0.2, 0.9, 3), grow_cp(500, 0.9, 3)):
        assert g.out_degrees()[0] == 0
        assert g.out_degrees()[1:].min() >= 1


def test_reforcite2_equal_probabilities_matches_reforcite1():
    a = grow_reforcite1(3000, 0.45, seed=11)
    b = grow_reforcite2(3000, 0.45, 0.45, seed=11)
    assert np.array_equal(a.edges(), b.edges())


def test_reforcite1_densification_p03():
    g = grow_reforcite1(50_000, 0.3, seed=2)
    assert 2 * g.n_edges / g.n == pytest.approx(5.0, rel=0.10)


def test_cp_copies_only_references():
    g = grow_cp(2000, 1.0, seed=4)
    # With p=1 a CP node cites its base and every reference of the base.
    for j in range(1, g.n):
        base = g.out_adj[j][0]
        assert set(g.out_adj[j][1:]) == set(g.out_adj[base])


def test_reforcite_p1_copies_whole_neighbourhood():
    g = grow_reforcite1(500, 1.0, seed=4)
    for j in range(1, 60):
        base = g.out_adj[j][0]
        before = {x for x in g.in_adj[base] if x < j} | set(g.out_adj[base])
        assert set(g.out_adj[j][1:]) == before


def test_cp_node0_in_degree_exceeds_random_tree():
    runs = 100
    cp = [len(grow_cp(1000, 0.55, seed=s).in_adj[0]) for s in range(runs)]
    tree = [len(grow_reforcite1(1000, 0.0, seed=s).in_adj[0]) for s in range(runs)]
    assert np.mean(cp) > np.mean(tree)


def test_edge_budget():
    with pytest.raises(EdgeBudgetExceeded) as info:
        grow_reforcite1(5000, 0.9, seed=0, max_edges=10_000)
    assert info.value.n_edges > 10_000
    assert grow_reforcite1(100, 0.1, seed=0, max_edges=10_000).n == 100


# --- CPT ---------------------------------------------------------------------


def test_cpt_fitted_values_accepted():
    g = grow_cpt(300, -1.0, 0.99, [0] + [4] * 299, seed=1)
    assert g.n == 300


def test_cpt_errors():
    with pytest.raises(ValueError):
        grow_cpt(10, -1.0, 0.5, [])
    with pytest.raises(ValueError):
        grow_cpt(10, -1.0, 0.5, [1] * 5)
    with pytest.raises(ValueError):
        grow_cpt(10, float("inf"), 0.5, [1] * 10)
    with pytest.raises(ValueError):
        grow_cpt(10, 800.0, 0.5, [1] * 10)


def test_cpt_out_degrees_follow_sequence():
    rng = np.random.default_rng(0)
    n = 2000
    seq = [0] + [int(min(u, k)) for u, k in zip(range(1, n), rng.integers(1, 12, n - 1))]
    g = grow_cpt(n, -1.0, 0.7, seq, seed=8)
    assert sorted(g.out_degrees().tolist()) == sorted(seq[:n])
    assert g.out_degrees().tolist() == seq[:n]


def test_cpt_caps_out_degree_at_available_nodes():
    g = grow_cpt(5, 0.0, 0.5, [9, 9, 9, 9, 9], seed=0)
    assert g.out_degrees().tolist() == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("alpha", [-1.0, 0.5])
def test_cpt_base_selection_follows_aging_weights(alpha):
    # With out-degree 1 each node only cites its base.
    i = 12
    draws = 10_000
    counts = np.zeros(i, dtype=np.int64)
    seq = [1] * (i + 1)
    ss = np.random.SeedSequence(2024).spawn(draws)
    for s in ss:
        g = grow_cpt(i + 1, alpha, 0.5, seq, seed=np.random.default_rng(s))
        counts[g.out_adj[i][0]] += 1
    w = (i - np.arange(i)) ** alpha
    expected = draws * w / w.sum()
    assert stats.chisquare(counts, expected).pvalue > 1e-3


def test_cpt_negative_alpha_favours_recent_nodes():
    g = grow_cpt(3000, -1.0, 0.0, [0] + [1] * 2999, seed=3)
    ages = np.array([j - g.out_adj[j][0] for j in range(1, g.n)])
    h = grow_cpt(3000, 0.0, 0.0, [0] + [1] * 2999, seed=3)
    ages_uniform = np.array([j - h.out_adj[j][0] for j in range(1, h.n)])
    assert np.median(ages) < np.median(ages_uniform) / 5


# --- Forest Fire -------------------------------------------------------------


@pytest.mark.parametrize("p_a,b", [(0.001, 1.0), (0.05, 10.0), (0.04, 2.0), (0.03, 1.0)])
def test_forest_fire_fitted_values_accepted(p_a, b):
    assert grow_forest_fire(500, p_a, b, seed=1).n == 500


@pytest.mark.parametrize("p_a,b", [(0.0, 1.0), (1.0, 0.5), (0.2, -1.0), (0.5, 2.0)])
def test_forest_fire_domain(p_a, b):
    with pytest.raises(ValueError):
        grow_forest_fire(10, p_a, b)


def test_forest_fire_small_pa_is_tree():
    g = grow_forest_fire(1000, 1e-12, 1.0, seed=2)
    assert np.all(g.out_degrees()[1:] == 1)


def test_forest_fire_mean_out_degree_grows_with_pa():
    lo = grow_forest_fire(3000, 0.1, 0.5, seed=1).n_edges
    hi = grow_forest_fire(3000, 0.4, 0.5, seed=1).n_edges
    assert hi > lo


def test_forest_fire_first_burn_sizes():
    # Ambassador 0 has one citer (burned with prob b p_a), ambassador 1 one
    # reference (burned with prob p_a). With b=1 both equal p_a.
    p_a, b = 0.4, 1.0
    hits = sum(len(grow_forest_fire(3, p_a, b, seed=s).out_adj[2]) == 2 for s in range(4000))
    assert hits / 4000 == pytest.approx(p_a, abs=0.03)


# --- PA ----------------------------------------------------------------------


def test_pa_errors():
    with pytest.raises(ValueError):
        grow_pa(1, 1)
    with pytest.raises(ValueError):
        grow_pa(10, 0)


def test_pa_out_degrees():
    g = grow_pa(500, 3, seed=1)
    assert g.out_degrees()[:4].tolist() == [0, 1, 2, 3]
    assert np.all(g.out_degrees()[3:] == 3)


@pytest.mark.slow
def test_pa_degree_ccdf_slope():
    g = grow_pa(100_000, 1, seed=7)
    deg = g.in_degrees() + g.out_degrees()
    assert loglog_ccdf_slope(deg, 5, 200) == pytest.approx(-2.0, abs=0.2)


def test_pa_offset_steepens_tail():
    g0 = grow_pa(50_000, 1, seed=7)
    g1 = grow_pa(50_000, 1, seed=7, offset=1)
    s0 = loglog_ccdf_slope(g0.in_degrees() + g0.out_degrees(), 5, 100)
    s1 = loglog_ccdf_slope(g1.in_degrees() + g1.out_degrees(), 5, 100)
    assert s1 < s0 - 0.3


# --- statistical properties ---------------------------------------------------


@pytest.mark.slow
@pytest.mark.parametrize("p", [0.3, 0.5, 0.6])
def test_reforcite1_mean_degree_matches_exact_recursion(p):
    runs, n = 100, 10_000
    k = np.array([2 * grow_reforcite1(n, p, seed=s).n_edges / n for s in range(runs)])
    se = k.std(ddof=1) / np.sqrt(runs)
    assert abs(k.mean() - expected_avg_degree(n, p)) < 3 * se


@pytest.mark.slow
def test_reforcite2_mean_in_degree_matches_exact_recursion():
    runs, n = 30, 20_000
    k = np.array([grow_reforcite2(n, 0.5, 0.3, seed=s).n_edges / n for s in range(runs)])
    se = k.std(ddof=1) / np.sqrt(runs)
    assert abs(k.mean() - expected_avg_in_degree(n, 0.5, 0.3)) < 3 * se


@pytest.mark.slow
@pytest.mark.parametrize("p1,p2", [(0.2, 0.5), (0.2, 0.65)])
def test_reforcite2_tail_exponent(p1, p2):
    g = grow_reforcite2(50_000, p1, p2, seed=21)
    slope = loglog_ccdf_slope(rescale_degrees2(g, p1, p2), 2, 100)
    assert -slope == pytest.approx(1 / p2, rel=0.15)


def test_params_to_dict():
    assert params_to_dict(RefOrCite2(0.6, 0.43)) == {"model": "reforcite2", "p1": 0.6, "p2": 0.43}
    d = params_to_dict(CPT(-1, 0.99, (0, 1, 2)))
    assert d["out_degree_sequence_length"] == 3


def test_in_degree_distribution_sums_to_n():
    g = grow_reforcite1(1000, 0.4, seed=1)
    assert sum(in_degree_distribution(g).counts.values()) == 1000
