import numpy as np
import pytest

from netcomm import (DegeneracyError, Graph, RngSeed, TW1, centered_scaled,
                     corrected_statistic, estimate_p, sample_erdos_renyi,
                     sample_sbm, SbmParams, theta_statistic, tw1_cdf, tw_test)
from conftest import block_labels
from oracles import charpoly_eigenvalues

# Tracy-Widom (beta=1) reference values from the Painleve II oracle
# (tools/make_tw1_table.py); spot checks used across this module.
F1_AT_MEAN = 0.5196521428       # F1(-1.2065335746)
Q95 = 0.9793                    # published 95% quantile


def path_graph(edges, n):
    adj = np.zeros((n, n), dtype=np.uint8)
    for i, j in edges:
        adj[i, j] = adj[j, i] = 1
    return Graph.from_adjacency(adj)


# --- TW1 distribution ----------------------------------------------------

def test_tails():
    assert tw1_cdf(-10.0) <= 1e-6
    assert tw1_cdf(8.0) >= 1 - 1e-6


def test_published_quantile():
    assert tw1_cdf(Q95) == pytest.approx(0.95, abs=2e-3)


def test_moment_constants():
    assert abs(TW1.mean - (-1.2065335746)) <= 1e-3
    assert abs(TW1.sd - 1.2679934507) <= 1e-3


def test_cdf_monotone_on_grid():
    grid = np.arange(-6.0, 5.0, 0.01)
    vals = tw1_cdf(grid)
    assert np.all(np.diff(vals) >= 0)
    assert vals[0] > 0 and vals[-1] < 1


def test_cdf_vectorized_matches_scalar():
    xs = [-3.0, 0.0, 1.5]
    assert tw1_cdf(np.array(xs)) == pytest.approx([tw1_cdf(x) for x in xs])


def test_cdf_continuous_at_table_edges():
    for edge in (-6.0, 5.0):
        below, above = tw1_cdf(edge - 1e-9), tw1_cdf(edge + 1e-9)
        assert abs(above - below) < 1e-6


# --- estimate_p ----------------------------------------------------------

def test_estimate_p_complete_graph():
    g = sample_erdos_renyi(3, 1.0, RngSeed(0))
    assert estimate_p(g) == 1.0


def test_estimate_p_empty_graph():
    g = sample_erdos_renyi(3, 0.0, RngSeed(0))
    assert estimate_p(g) == 0.0


def test_estimate_p_single_edge():
    g = path_graph([(0, 1)], 3)
    assert estimate_p(g) == pytest.approx(1 / 3)


# --- centered_scaled -----------------------------------------------------

def test_centered_scaled_rejects_degenerate():
    g = sample_erdos_renyi(5, 0.0, RngSeed(0))
    with pytest.raises(DegeneracyError):
        centered_scaled(g, 0.0)
    with pytest.raises(DegeneracyError):
        centered_scaled(g, 1.0)


def test_centered_scaled_hand_evaluation():
    # n=2, one edge, p_hat fixed at 0.5: scale = sqrt(1 * 0.25) = 0.5,
    # off-diagonal (1 - 0.5) / 0.5 = 1, diagonal 0 (plug-in mean has
    # zero diagonal)
    g = path_graph([(0, 1)], 2)
    m = centered_scaled(g, 0.5)
    assert m[0, 1] == pytest.approx(1.0)
    assert m[0, 0] == 0.0 and m[1, 1] == 0.0


def test_centered_scaled_off_diagonal_values():
    g = sample_erdos_renyi(30, 0.4, RngSeed(3))
    p = estimate_p(g)
    m = centered_scaled(g, p)
    scale = np.sqrt(29 * p * (1 - p))
    i, j = np.nonzero(np.triu(g.adjacency, 1))
    assert np.allclose(m[i, j], (1 - p) / scale)
    assert np.abs(m - m.T).max() < 1e-12


# --- theta ----------------------------------------------------------------

def test_theta_matches_eigen_oracle_on_small_graph():
    g = path_graph([(0, 1), (1, 2), (2, 3)], 4)
    p = estimate_p(g)
    m = centered_scaled(g, p)
    lam1 = charpoly_eigenvalues(m)[-1]
    expected = 4 ** (2 / 3) * (lam1 - 2.0)
    assert theta_statistic(g) == pytest.approx(expected, abs=1e-8)


def test_theta_invariant_under_relabeling():
    g = sample_erdos_renyi(80, 0.3, RngSeed(5))
    perm = np.random.default_rng(0).permutation(80)
    g_perm = Graph.from_adjacency(g.adjacency[np.ix_(perm, perm)])
    assert theta_statistic(g_perm) == pytest.approx(theta_statistic(g), abs=1e-7)


@pytest.mark.slow
def test_raw_statistic_rejects_too_often_at_low_density():
    # the raw TW tail over-rejects at moderate n (the motivation for
    # the bootstrap correction)
    base = RngSeed(404)
    reps = 500
    crit = 0.9793  # TW1 95% point
    hits = 0
    for i in range(reps):
        g = sample_erdos_renyi(500, 0.1, base.derive(i))
        hits += theta_statistic(g) > crit
    assert hits / reps > 0.05


# --- correction ----------------------------------------------------------

def test_correction_fixed_point():
    assert corrected_statistic(1.7, 1.7, 2.0) == pytest.approx(TW1.mean)
    p_val = float(TW1.sf(corrected_statistic(1.7, 1.7, 2.0)))
    assert p_val == pytest.approx(1 - F1_AT_MEAN, abs=2e-3)


def test_correction_rejects_zero_sd():
    with pytest.raises(DegeneracyError):
        corrected_statistic(1.0, 0.5, 0.0)


def test_tw_test_uncorrected_report():
    g = sample_erdos_renyi(120, 0.3, RngSeed(6))
    rep = tw_test(g, correct=False)
    assert rep.theta_prime is None and rep.bootstrap_reps == 0
    assert rep.p_value == pytest.approx(float(TW1.sf(rep.theta)))
    assert not rep.corrected


def test_tw_test_corrected_report_consistent():
    g = sample_erdos_renyi(120, 0.3, RngSeed(7))
    rep = tw_test(g, correct=True, bootstrap_reps=20, seed=RngSeed(8))
    assert rep.bootstrap_reps == 20
    assert rep.bootstrap_sd > 0
    expect = corrected_statistic(rep.theta, rep.bootstrap_mean, rep.bootstrap_sd)
    assert rep.theta_prime == pytest.approx(expect)
    assert rep.p_value == pytest.approx(float(TW1.sf(rep.theta_prime)))
    assert 0.0 <= rep.p_value <= 1.0


def test_tw_test_reproducible():
    g = sample_erdos_renyi(150, 0.25, RngSeed(9))
    a = tw_test(g, correct=True, bootstrap_reps=15, seed=RngSeed(10))
    b = tw_test(g, correct=True, bootstrap_reps=15, seed=RngSeed(10))
    assert a == b


def test_tw_test_rejects_degenerate_graph():
    with pytest.raises(DegeneracyError):
        tw_test(sample_erdos_renyi(10, 0.0, RngSeed(0)))
    with pytest.raises(DegeneracyError):
        tw_test(sample_erdos_renyi(10, 1.0, RngSeed(0)))


def test_tw_test_rejects_tiny_bootstrap():
    g = sample_erdos_renyi(30, 0.4, RngSeed(11))
    with pytest.raises(ValueError):
        tw_test(g, correct=True, bootstrap_reps=1)


@pytest.mark.slow
def test_corrected_size_reduced_scale():
    # smaller-scale version of the size criterion for quick feedback;
    # the full grid lives in the acceptance suite
    base = RngSeed(505)
    reps, hits = 150, 0
    for i in range(reps):
        g = sample_erdos_renyi(300, 0.2, base.derive(i))
        rep = tw_test(g, correct=True, bootstrap_reps=30, seed=base.derive(10_000 + i))
        hits += rep.p_value < 0.05
    assert hits / reps < 0.16


@pytest.mark.slow
def test_power_against_two_blocks():
    # clearly separated two-block truth: corrected test must reject
    truth = block_labels(250, 250)
    params = SbmParams(b=np.array([[0.5, 0.1], [0.1, 0.5]]), assignment=truth)
    base = RngSeed(606)
    reps, hits = 200, 0
    for i in range(reps):
        g = sample_sbm(params, base.derive(i))
        rep = tw_test(g, correct=True, bootstrap_reps=50,
                      seed=base.derive(10_000 + i))
        hits += rep.p_value < 0.05
    assert hits / reps >= 0.95
