"""Largest-eigenvalue goodness-of-fit test for a single community.

Tests whether an observed graph is consistent with an Erdos-Renyi model
(one community).  The statistic is the centered and scaled largest
adjacency eigenvalue, whose null law is Tracy-Widom with index 1; a
parametric bootstrap correction rescales the statistic to match the
TW1 moments, which fixes the severe finite-sample size distortion of
the raw statistic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._tw1_table import TW1_CDF_VALUES, TW1_GRID, TW1_MEAN, TW1_SD
from .netmodel import DegeneracyError, Graph, sample_erdos_renyi
from .rng import RngSeed
from .spectral import largest_eigenvalue

__all__ = [
    "Tw1Distribution",
    "TW1",
    "tw1_cdf",
    "TestReport",
    "estimate_p",
    "centered_scaled",
    "theta_statistic",
    "corrected_statistic",
    "tw_test",
]

_SQRT2 = np.sqrt(2.0)


class Tw1Distribution:
    """Tracy-Widom (index 1) CDF from an embedded tabulation.

    Monotone cubic (PCHIP) interpolation on [-6, 5], extended by the
    known tail asymptotics outside the grid.  Accurate to well under
    1e-3 everywhere; mean and sd are frozen constants integrated from
    the same tabulation.
    """

    def __init__(self):
        self.mean = TW1_MEAN
        self.sd = TW1_SD
        self._lo = TW1_GRID[0]
        self._hi = TW1_GRID[-1]
        self._f_lo = TW1_CDF_VALUES[0]
        self._f_hi = 1.0 - TW1_CDF_VALUES[-1]
        self._interp = PchipInterpolator(TW1_GRID, TW1_CDF_VALUES)

    def _left_tail(self, x):
        a, a0 = np.abs(x), abs(self._lo)
        grow = (a ** 3 - a0 ** 3) / 24.0 + (a ** 1.5 - a0 ** 1.5) / (3.0 * _SQRT2)
        return self._f_lo * np.exp(-grow)

    def _right_tail(self, x):
        decay = (2.0 / 3.0) * (x ** 1.5 - self._hi ** 1.5)
        return 1.0 - self._f_hi * np.exp(-decay) * (x / self._hi) ** -0.75

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.empty_like(x)
        left = x < self._lo
        right = x > self._hi
        mid = ~(left | right)
        out[mid] = np.clip(self._interp(x[mid]), 0.0, 1.0)
        out[left] = self._left_tail(x[left])
        out[right] = self._right_tail(x[right])
        return float(out[0]) if scalar else out

    def sf(self, x):
        """Upper tail probability P(X > x)."""
        return 1.0 - self.cdf(x)


TW1 = Tw1Distribution()


def tw1_cdf(x):
    """Tracy-Widom (index 1) CDF at x (scalar or array)."""
    return TW1.cdf(x)


@dataclass(frozen=True)
class TestReport:
    """Outcome of the one-community test."""

    p_hat: float
    theta: float
    p_value: float
    theta_prime: float | None = None
    bootstrap_mean: float | None = None
    bootstrap_sd: float | None = None
    bootstrap_reps: int = 0

    @property
    def corrected(self) -> bool:
        return self.theta_prime is not None


def estimate_p(g: Graph) -> float:
    """Edge-probability estimate: ordered pair sum / (n (n - 1))."""
    if g.n < 2:
        raise ValueError("need at least 2 nodes")
    return float(g.adjacency.sum()) / (g.n * (g.n - 1))


def centered_scaled(g: Graph, p_hat: float) -> np.ndarray:
    """(A - P_hat) / sqrt((n - 1) p_hat (1 - p_hat)).

    P_hat is the plug-in mean of the adjacency matrix: p_hat on the
    off-diagonal and zero on the diagonal, so the output has entries
    (A_ij - p_hat) scaled, with a zero diagonal.
    """
    if not 0.0 < p_hat < 1.0:
        raise DegeneracyError(
            "p_hat=%g is degenerate (empty or complete graph); "
            "the test statistic is undefined" % p_hat
        )
    n = g.n
    scale = np.sqrt((n - 1) * p_hat * (1.0 - p_hat))
    m = g.adjacency.astype(np.float64)
    m -= p_hat
    m /= scale
    np.fill_diagonal(m, 0.0)
    return m


def theta_statistic(g: Graph) -> float:
    """n^{2/3} (lambda_1 - 2) for the centered, scaled adjacency
    matrix; lambda_1 is the largest signed eigenvalue."""
    p_hat = estimate_p(g)
    lam1 = largest_eigenvalue(centered_scaled(g, p_hat),
                              assume_symmetric=True)
    return float(g.n ** (2.0 / 3.0) * (lam1 - 2.0))


def corrected_statistic(theta: float, boot_mean: float, boot_sd: float) -> float:
    """Shift and scale theta to match the TW1 moments using the
    bootstrap moments."""
    if boot_sd <= 0.0:
        raise DegeneracyError("bootstrap standard deviation is zero")
    return TW1.mean + (theta - boot_mean) / boot_sd * TW1.sd


def tw_test(g: Graph, correct: bool = True, bootstrap_reps: int = 50,
            seed: RngSeed = RngSeed(0)) -> TestReport:
    """Test H0 "one community" on an observed graph.

    Without correction the p-value is the TW1 upper tail at theta.
    With correction, `bootstrap_reps` Erdos-Renyi graphs are simulated
    at the estimated density, the statistic is recomputed on each (with
    its own re-estimated density), and theta is moment-matched to TW1
    before the tail evaluation.  Bootstrap replicate i draws from
    stream `seed.derive(i)`, so parallel and serial evaluation orders
    agree.
    """
    p_hat = estimate_p(g)
    if not 0.0 < p_hat < 1.0:
        raise DegeneracyError("p_hat=%g: graph is empty or complete" % p_hat)
    theta = theta_statistic(g)

    if not correct:
        return TestReport(p_hat=p_hat, theta=theta,
                          p_value=float(TW1.sf(theta)))

    if bootstrap_reps < 2:
        raise ValueError("bootstrap correction needs at least 2 replicates")
    thetas = np.empty(bootstrap_reps)
    for i in range(bootstrap_reps):
        replica = sample_erdos_renyi(g.n, p_hat, seed.derive(i))
        p_i = estimate_p(replica)
        if not 0.0 < p_i < 1.0:
            raise DegeneracyError(
                "bootstrap replicate %d is degenerate (p=%g)" % (i, p_i)
            )
        thetas[i] = theta_statistic(replica)
    boot_mean = float(thetas.mean())
    boot_sd = float(thetas.std(ddof=1))
    if boot_sd <= 0.0:
        raise DegeneracyError("all bootstrap statistics are equal")
    theta_prime = corrected_statistic(theta, boot_mean, boot_sd)
    return TestReport(
        p_hat=p_hat,
        theta=theta,
        theta_prime=float(theta_prime),
        p_value=float(TW1.sf(theta_prime)),
        bootstrap_mean=boot_mean,
        bootstrap_sd=boot_sd,
        bootstrap_reps=bootstrap_reps,
    )
