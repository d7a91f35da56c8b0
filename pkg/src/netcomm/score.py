"""SCORE clustering for degree-corrected block models.

Entry-wise ratios of the leading adjacency eigenvectors cancel the
per-node activeness parameters, so k-means on the ratio rows recovers
communities under degree heterogeneity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .netmodel import CommunityAssignment, DegeneracyError, Graph
from .rng import RngSeed
from .spectral import kmeans, top_eigenpairs

__all__ = ["RatioMatrix", "ratio_matrix", "ratio_matrix_from_symmetric",
           "score_cluster"]


@dataclass(frozen=True)
class RatioMatrix:
    """n x (K-1) matrix of eigenvector coordinate ratios.

    Column j holds eigenvector j+2 divided entry-wise by the leading
    eigenvector, clamped to [-clamp_bound, clamp_bound].
    `clamped_count` is the number of raw entries that exceeded the
    bound (including entries over an exactly zero denominator).
    `tied` marks an eigenvalue-magnitude tie at the selection boundary,
    which makes the ratios order-unstable.
    """

    values: np.ndarray = field(repr=False)
    clamp_bound: float
    clamped_count: int
    tied: bool = False


def default_clamp(n: int) -> float:
    """Default ratio clamp bound, log(n)."""
    return float(np.log(n))


def ratio_matrix_from_symmetric(m, k: int, clamp: float) -> RatioMatrix:
    """Ratio matrix of an arbitrary symmetric matrix (e.g. a population
    expected-adjacency matrix).  Used by `ratio_matrix` and directly in
    population-level analysis."""
    if clamp <= 0.0:
        raise ValueError("clamp bound must be positive")
    n_components = max(k, 2)
    pairs = top_eigenpairs(m, n_components)
    lead = pairs.vectors[:, 0]
    rest = pairs.vectors[:, 1:]
    with np.errstate(divide="ignore", invalid="ignore"):
        raw = rest / lead[:, None]
    zero_den = lead == 0.0
    if np.any(zero_den):
        raw[zero_den, :] = np.sign(rest[zero_den, :]) * clamp
    over = np.abs(raw) > clamp
    clamped_count = int(over.sum() + zero_den.sum() * rest.shape[1])
    values = np.clip(raw, -clamp, clamp)
    return RatioMatrix(values=values, clamp_bound=clamp,
                       clamped_count=clamped_count, tied=pairs.tied)


def ratio_matrix(g: Graph, k: int, clamp: float | None = None) -> RatioMatrix:
    """Eigenvector coordinate ratios of a graph's adjacency matrix.

    For k >= 2 the result has k-1 columns (eigenvectors 2..k over
    eigenvector 1, magnitude ordering).  For k == 1 a single diagnostic
    column (eigenvector 2 over 1) is still produced.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if g.edge_count == 0:
        raise DegeneracyError("graph has no edges; eigen-ratios undefined")
    if clamp is None:
        clamp = default_clamp(g.n)
    return ratio_matrix_from_symmetric(g.as_float(), k, clamp)


def score_cluster(g: Graph, k: int, seed: RngSeed = RngSeed(0),
                  clamp: float | None = None,
                  ratios: RatioMatrix | None = None) -> CommunityAssignment:
    """Cluster a graph into k communities by k-means on the eigenvector
    ratio rows.

    k == 1 is a no-op returning the all-ones assignment.  A precomputed
    `ratios` (from `ratio_matrix` with the same k) can be passed to
    avoid repeating the eigendecomposition.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return CommunityAssignment.from_labels(np.ones(g.n, dtype=np.int64), k=1)
    if ratios is None:
        ratios = ratio_matrix(g, k, clamp)
    return kmeans(ratios.values, k, seed).labels
