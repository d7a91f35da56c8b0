"""Network cross-validation for choosing the number of communities.

Nodes are split into V folds.  For fold v, the rectangular submatrix
with the fold's rows removed (all columns kept) is the fitting set: its
top right singular vectors embed every node, k-means on the embedding
assigns memberships, and block edge probabilities come from a pair-count
plug-in over the fitting-visible pairs.  The held-out diagonal block
(both endpoints in fold v) scores predictions; the candidate count with
the smallest average validation loss wins.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .netmodel import CommunityAssignment, DegeneracyError, Graph
from .rng import RngSeed
from .spectral import kmeans, top_right_singular_vectors

__all__ = [
    "EPS",
    "FoldSplit",
    "FittedBlockModel",
    "NcvReport",
    "split_folds",
    "fit_sbm_fold",
    "fit_dcbm_fold",
    "predictive_loss",
    "ncv_select_k",
]

EPS = 1e-6
# added to the worst observed loss when a (candidate, fold) cell is
# degenerate; keeps degenerate candidates from winning by silence
DEGENERATE_PENALTY = 1.0


@dataclass(frozen=True)
class FoldSplit:
    """Partition of the nodes into v near-equal parts (0-based indices,
    each part sorted ascending)."""

    v: int
    parts: tuple

    def __post_init__(self):
        if self.v != len(self.parts):
            raise ValueError("v must equal the number of parts")
        all_nodes = np.concatenate(self.parts)
        n = all_nodes.size
        if not np.array_equal(np.sort(all_nodes), np.arange(n)):
            raise ValueError("parts must partition 0..n-1")
        sizes = [p.size for p in self.parts]
        if max(sizes) - min(sizes) > 1:
            raise ValueError("part sizes must differ by at most 1")

    @property
    def n(self) -> int:
        return sum(p.size for p in self.parts)

    def fitting_rows(self, fold: int) -> np.ndarray:
        """All nodes outside `fold`, ascending."""
        keep = np.ones(self.n, dtype=bool)
        keep[self.parts[fold]] = False
        return np.nonzero(keep)[0]

    def block(self, matrix: np.ndarray, u: int, v: int) -> np.ndarray:
        """Submatrix with rows in part u and columns in part v."""
        return matrix[np.ix_(self.parts[u], self.parts[v])]


def split_folds(n: int, v: int, seed: RngSeed) -> FoldSplit:
    """Uniformly random near-equal partition of n nodes into v folds."""
    if not 2 <= v <= n:
        raise ValueError("fold count must be in 2..n")
    perm = seed.generator().permutation(n)
    parts = tuple(np.sort(part) for part in np.array_split(perm, v))
    return FoldSplit(v=v, parts=parts)


@dataclass(frozen=True)
class FittedBlockModel:
    """Block-model parameters estimated from one fold's fitting set.

    `b_hat` is the pair-count plug-in block probability matrix clamped
    to [EPS, 1-EPS]; `b_raw` is the same before clamping.  For DCBM
    fits, `psi_hat` holds per-node activeness (normalized to sum 1
    within each estimated community) and `b_scale` the block factors
    rescaled so that psi_i psi_j b_scale reproduces the observed
    community-pair edge totals.
    """

    assignment: CommunityAssignment
    k_tilde: int
    b_hat: np.ndarray = field(repr=False)
    b_raw: np.ndarray = field(repr=False)
    psi_hat: np.ndarray | None = field(default=None, repr=False)
    b_scale: np.ndarray | None = field(default=None, repr=False)
    degenerate: bool = False
    flags: tuple = ()

    def predict_pairs(self, rows: np.ndarray, cols: np.ndarray,
                      clamped: bool = True) -> np.ndarray:
        """Predicted edge probabilities for the pair grid rows x cols."""
        g = self.assignment.labels - 1
        if self.psi_hat is None:
            b = self.b_hat if clamped else self.b_raw
            return b[np.ix_(g[rows], g[cols])]
        p = (self.psi_hat[rows][:, None] * self.psi_hat[cols][None, :]
             * self.b_scale[np.ix_(g[rows], g[cols])])
        return np.clip(p, EPS, 1.0 - EPS) if clamped else p


def _community_pair_counts(af: np.ndarray, labels0: np.ndarray, k: int,
                           held: np.ndarray, weights: np.ndarray | None = None):
    """Edge counts and pair counts (or weight-product totals) between
    estimated communities, over unordered pairs that are visible from
    the fitting set, i.e. not both endpoints held out."""
    onehot = np.zeros((af.shape[0], k))
    onehot[np.arange(af.shape[0]), labels0] = 1.0

    def unordered_edges(a, c):
        e = c.T @ a @ c
        e[np.diag_indices(k)] /= 2.0
        return e

    edges = unordered_edges(af, onehot)
    edges -= unordered_edges(af[np.ix_(held, held)], onehot[held])

    if weights is None:
        tot = onehot.sum(axis=0)
        tot_h = onehot[held].sum(axis=0)
        sq, sq_h = tot, tot_h
    else:
        tot = weights @ onehot
        tot_h = weights[held] @ onehot[held]
        sq = (weights ** 2) @ onehot
        sq_h = (weights[held] ** 2) @ onehot[held]
    pairs = np.outer(tot, tot) - np.outer(tot_h, tot_h)
    np.fill_diagonal(pairs, (tot ** 2 - sq) / 2.0 - (tot_h ** 2 - sq_h) / 2.0)
    return edges, pairs


def _plugin_b(af: np.ndarray, labels0: np.ndarray, k: int, held: np.ndarray):
    """Pair-count plug-in estimate of the block probability matrix:
    observed edges / available pairs over fitting-visible pairs."""
    edges, pairs = _community_pair_counts(af, labels0, k, held)
    flags = []
    with np.errstate(divide="ignore", invalid="ignore"):
        b_raw = edges / pairs
    unobserved = pairs <= 0
    if np.any(unobserved):
        b_raw[unobserved] = np.nan
        flags.append("unobserved-block-pair")
    b_hat = np.clip(np.nan_to_num(b_raw, nan=EPS), EPS, 1.0 - EPS)
    return b_raw, b_hat, flags


def fit_sbm_fold(g: Graph, split: FoldSplit, fold: int, k_tilde: int,
                 seed: RngSeed = RngSeed(0),
                 u_hat: np.ndarray | None = None) -> FittedBlockModel:
    """Fit an SBM with k_tilde communities from fold `fold`'s fitting set.

    All n nodes are assigned by k-means on the rows of the top-k_tilde
    right-singular-vector matrix of the fitting submatrix.  `u_hat` may
    carry a precomputed singular-vector matrix with >= k_tilde columns
    (only the first k_tilde are used).
    """
    if k_tilde < 1:
        raise ValueError("k_tilde must be positive")
    rows = split.fitting_rows(fold)
    if rows.size == 0:
        raise ValueError("fitting set is empty")
    if u_hat is None:
        u_hat = top_right_singular_vectors(g.as_float()[rows, :], k_tilde)
    u = u_hat[:, :k_tilde]
    assignment = kmeans(u, k_tilde, seed).labels
    return _finish_sbm_fit(g, split, fold, k_tilde, assignment)


def _finish_sbm_fit(g, split, fold, k_tilde, assignment):
    labels0 = assignment.labels - 1
    held = split.parts[fold]
    rows = split.fitting_rows(fold)
    af = g.as_float()
    fit_sizes = np.bincount(labels0[rows], minlength=k_tilde)
    flags = []
    degenerate = bool(np.any(fit_sizes == 0))
    if degenerate:
        flags.append("empty-fitting-community")
    b_raw, b_hat, extra = _plugin_b(af, labels0, k_tilde, held)
    flags.extend(extra)
    return FittedBlockModel(assignment=assignment, k_tilde=k_tilde,
                            b_hat=b_hat, b_raw=b_raw,
                            degenerate=degenerate, flags=tuple(flags))


def fit_dcbm_fold(g: Graph, split: FoldSplit, fold: int, k_tilde: int,
                  seed: RngSeed = RngSeed(0),
                  u_hat: np.ndarray | None = None) -> FittedBlockModel:
    """Fit a DCBM with k_tilde communities from fold `fold`'s fitting set.

    Memberships come from k-means on the unit-normalized rows of the
    right-singular-vector matrix (the normalization strips the
    per-node activeness).  psi is each node's fitting-set degree as a
    fraction of its estimated community's total, and the block factors
    are rescaled so community-pair predicted totals match the observed
    plug-in counts.
    """
    if k_tilde < 1:
        raise ValueError("k_tilde must be positive")
    rows = split.fitting_rows(fold)
    if rows.size == 0:
        raise ValueError("fitting set is empty")
    af = g.as_float()
    if u_hat is None:
        u_hat = top_right_singular_vectors(af[rows, :], k_tilde)
    u = u_hat[:, :k_tilde]
    norms = np.linalg.norm(u, axis=1)
    spherical = np.divide(u, norms[:, None], out=np.zeros_like(u),
                          where=norms[:, None] > 0)
    assignment = kmeans(spherical, k_tilde, seed).labels
    labels0 = assignment.labels - 1
    held = split.parts[fold]

    fit_sizes = np.bincount(labels0[rows], minlength=k_tilde)
    flags = []
    degenerate = bool(np.any(fit_sizes == 0))
    if degenerate:
        flags.append("empty-fitting-community")

    # activeness: degree over fitting-row columns, a common column set
    # for fitting and held-out nodes, normalized within each community
    deg = af[:, rows].sum(axis=1)
    if np.any(deg == 0):
        flags.append("zero-degree-node")
    totals = np.bincount(labels0, weights=deg, minlength=k_tilde)
    if np.any(totals == 0):
        flags.append("zero-community-degree")
    with np.errstate(divide="ignore", invalid="ignore"):
        psi = deg / totals[labels0]
    psi[~np.isfinite(psi)] = EPS
    psi[psi <= 0] = EPS

    b_raw, b_hat, extra = _plugin_b(af, labels0, k_tilde, held)
    flags.extend(extra)
    edges, weight_pairs = _community_pair_counts(af, labels0, k_tilde, held,
                                                 weights=psi)
    with np.errstate(divide="ignore", invalid="ignore"):
        b_scale = edges / weight_pairs
    b_scale[~np.isfinite(b_scale)] = 0.0
    return FittedBlockModel(assignment=assignment, k_tilde=k_tilde,
                            b_hat=b_hat, b_raw=b_raw, psi_hat=psi,
                            b_scale=b_scale, degenerate=degenerate,
                            flags=tuple(flags))


def predictive_loss(a_value, p_hat, kind: str):
    """Per-pair loss: negative log-likelihood ('nll') or squared error
    ('sq')."""
    a = np.asarray(a_value, dtype=np.float64)
    p = np.asarray(p_hat, dtype=np.float64)
    if kind == "nll":
        return -(a * np.log(p) + (1.0 - a) * np.log(1.0 - p))
    if kind == "sq":
        return (a - p) ** 2
    raise ValueError("loss kind must be 'nll' or 'sq'")


@dataclass(frozen=True)
class NcvReport:
    """Cross-validated losses per candidate community count."""

    losses: dict
    selected_k: int
    loss_kind: str
    per_fold: tuple  # rows (k, fold, loss, flag)
    excluded: tuple = ()

    def __post_init__(self):
        best = min(self.losses.values())
        if self.losses[self.selected_k] > best:
            raise ValueError("selected_k does not attain the minimum loss")


def _validation_loss(fit: FittedBlockModel, af: np.ndarray,
                     held: np.ndarray, kind: str) -> float:
    """Sum of the pair loss over ordered held-out pairs i != j."""
    p = fit.predict_pairs(held, held, clamped=(kind == "nll"))
    lm = predictive_loss(af[np.ix_(held, held)], p, kind)
    np.fill_diagonal(lm, 0.0)
    return float(lm.sum())


def ncv_select_k(g: Graph, k_max: int, v: int = 3, model: str = "sbm",
                 kind: str = "nll", seed: RngSeed = RngSeed(0)) -> NcvReport:
    """Select the number of communities by V-fold network
    cross-validation.

    For every candidate count 1..k_max and every fold, fits the chosen
    model on the fold's fitting set and sums the predictive loss over
    held-out within-fold pairs; the candidate minimizing the average
    loss across folds wins (ties go to the smaller count).  The fold's
    singular-vector matrix is computed once at k_max columns and sliced
    per candidate, which is equivalent to refitting per candidate.

    Degenerate (candidate, fold) cells - an estimated community with no
    fitting-set member - are charged the worst observed loss plus a
    fixed penalty and flagged; candidates degenerate in every fold are
    excluded and reported.
    """
    if model not in ("sbm", "dcbm"):
        raise ValueError("model must be 'sbm' or 'dcbm'")
    if kind not in ("nll", "sq"):
        raise ValueError("loss kind must be 'nll' or 'sq'")
    n = g.n
    if not 1 <= k_max <= n // v:
        raise ValueError("k_max must be in 1..n/v")
    split = split_folds(n, v, seed.derive(0))
    af = g.as_float()
    fit_fn = fit_sbm_fold if model == "sbm" else fit_dcbm_fold

    cells = {}
    for fold in range(v):
        rows = split.fitting_rows(fold)
        held = split.parts[fold]
        u_all = top_right_singular_vectors(af[rows, :], k_max)
        for kt in range(1, k_max + 1):
            fit = fit_fn(g, split, fold, kt,
                         seed.derive(1 + fold * k_max + kt - 1), u_hat=u_all)
            flag = ";".join(fit.flags)
            if fit.degenerate:
                cells[(kt, fold)] = (None, flag)
            else:
                cells[(kt, fold)] = (_validation_loss(fit, af, held, kind), flag)

    finite = [val for val, _ in cells.values() if val is not None]
    if not finite:
        raise DegeneracyError("every (candidate, fold) fit was degenerate")
    worst = max(finite)
    per_fold = []
    for (kt, fold), (val, flag) in sorted(cells.items()):
        if val is None:
            val = worst + DEGENERATE_PENALTY
            cells[(kt, fold)] = (val, flag)
        per_fold.append((kt, fold, val, flag))

    losses = {}
    excluded = []
    for kt in range(1, k_max + 1):
        kt_cells = [cells[(kt, fold)] for fold in range(v)]
        if all("empty-fitting-community" in fl for _, fl in kt_cells):
            excluded.append(kt)
            continue
        losses[kt] = float(np.mean([val for val, _ in kt_cells]))
    if not losses:
        raise DegeneracyError("all candidate counts were degenerate")
    selected = min(losses, key=lambda kt: (losses[kt], kt))
    return NcvReport(losses=losses, selected_k=selected, loss_kind=kind,
                     per_fold=tuple(per_fold), excluded=tuple(excluded))
