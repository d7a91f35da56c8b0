"""Dense linear-algebra kernel shared by the statistical modules.

Symmetric eigenpairs, rectangular top singular vectors, and seeded
k-means.  Everything here is a pure function with deterministic output:
eigenvector and singular-vector signs are normalized (largest-magnitude
entry positive), and k-means uses an explicit seeded initialization.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import svds

from .netmodel import CommunityAssignment
from .rng import RngSeed

__all__ = [
    "EigenPairs",
    "KmeansResult",
    "top_eigenpairs",
    "largest_eigenvalue",
    "top_right_singular_vectors",
    "kmeans",
]

SYMMETRY_TOL = 1e-10

# fixed start vectors make the iterative paths bit-reproducible
_LANCZOS_START_SEED = 0x1A2C05
_SVDS_START_SEED = 0x51D5


@dataclass(frozen=True)
class EigenPairs:
    """Eigenvalues ordered by descending magnitude with matching
    unit-norm eigenvectors as columns.

    `tied` is set when consecutive magnitudes coincide to working
    precision, in which case the returned pairs (and anything computed
    from them) are order-unstable.
    """

    values: np.ndarray
    vectors: np.ndarray = field(repr=False)
    tied: bool = False


@dataclass(frozen=True)
class KmeansResult:
    labels: CommunityAssignment
    centers: np.ndarray = field(repr=False)
    inertia: float
    empty_clusters: tuple = ()


def _check_symmetric(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if np.abs(m - m.T).max() > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric within %g" % SYMMETRY_TOL)
    return m


def _normalize_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive
    (ties resolved by lowest index, via argmax)."""
    out = vectors.copy()
    for j in range(out.shape[1]):
        lead = np.argmax(np.abs(out[:, j]))
        if out[lead, j] < 0:
            out[:, j] = -out[:, j]
    return out


def top_eigenpairs(m, k: int) -> EigenPairs:
    """The k eigenpairs of largest |eigenvalue| of a symmetric matrix.

    Full dense decomposition followed by selection; ordering is by
    descending magnitude with the positive eigenvalue first on a
    magnitude tie.
    """
    m = _check_symmetric(m)
    n = m.shape[0]
    if not 1 <= k <= n:
        raise ValueError("k must be in 1..n")
    try:
        vals, vecs = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError("eigendecomposition did not converge: %s" % exc)
    # descending |lambda|; positive eigenvalue wins a magnitude tie
    order = np.lexsort((-vals, -np.abs(vals)))
    sel = order[:k]
    values = vals[sel]
    vectors = _normalize_signs(vecs[:, sel])
    # a magnitude tie anywhere the ordering decision matters
    boundary = np.abs(vals[order[: k + 1 if k < n else k]])
    tied = bool(np.any(np.isclose(boundary[1:], boundary[:-1],
                                  rtol=1e-12, atol=1e-12)))
    return EigenPairs(values=values, vectors=vectors, tied=tied)


def largest_eigenvalue(m, tol: float = 1e-9, max_iter: int = 400,
                       assume_symmetric: bool = False) -> float:
    """Largest (signed, algebraic) eigenvalue of a symmetric matrix.

    Fast path for the Monte Carlo loops: a deterministic Lanczos
    iteration with full reorthogonalization, falling back to the dense
    LAPACK solver for small matrices or on slow convergence.  Agrees
    with `np.linalg.eigvalsh(m)[-1]` to `tol`.  `assume_symmetric`
    skips the symmetry check for callers that construct the matrix
    symmetric.
    """
    if assume_symmetric:
        m = np.asarray(m, dtype=np.float64)
    else:
        m = _check_symmetric(m)
    n = m.shape[0]
    if n < 200:
        return float(np.linalg.eigvalsh(m)[-1])

    rng = np.random.default_rng(_LANCZOS_START_SEED)
    v = rng.standard_normal(n)
    v /= np.sqrt(v @ v)
    limit = min(n - 1, max_iter)
    basis = np.empty((limit + 1, n))
    basis[0] = v
    alphas = np.empty(limit)
    betas = np.empty(limit)
    for j in range(limit):
        w = m @ basis[j]
        alphas[j] = basis[j] @ w
        w -= alphas[j] * basis[j]
        if j > 0:
            w -= betas[j - 1] * basis[j - 1]
        w -= basis[: j + 1].T @ (basis[: j + 1] @ w)
        beta = np.sqrt(w @ w)
        if beta < 1e-14:
            # Krylov space exhausted: T is exact
            t_vals = scipy.linalg.eigvalsh_tridiagonal(
                alphas[: j + 1], betas[:j], check_finite=False)
            return float(t_vals[-1])
        betas[j] = beta
        basis[j + 1] = w / beta
        if j >= 19 and (j + 1) % 5 == 0:
            t_vals, t_vecs = scipy.linalg.eigh_tridiagonal(
                alphas[: j + 1], betas[:j], select="i",
                select_range=(j, j), check_finite=False)
            lam = t_vals[0]
            resid = beta * abs(t_vecs[-1, 0])
            if resid <= tol * max(1.0, abs(lam)):
                return float(lam)
    return float(np.linalg.eigvalsh(m)[-1])


def top_right_singular_vectors(m, d: int) -> np.ndarray:
    """Right singular vectors of the d largest singular values.

    Returns a q x d matrix with orthonormal, sign-normalized columns
    ordered by descending singular value.  Uses the dense LAPACK SVD,
    switching to a deterministic Lanczos SVD when only a thin slice of
    a large matrix is requested.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError("matrix must be 2-d")
    p, q = m.shape
    r = min(p, q)
    if not 1 <= d <= r:
        raise ValueError("d must be in 1..min(p, q)")
    if r <= 200 or d > r // 4:
        _, _, vt = scipy.linalg.svd(m, full_matrices=False)
        vecs = vt[:d].T
    else:
        rng = np.random.default_rng(_SVDS_START_SEED)
        v0 = rng.standard_normal(r)
        _, s, vt = svds(m, k=d, v0=v0)
        vecs = vt[np.argsort(s)[::-1]].T
    return _normalize_signs(vecs)


def _farthest_point_init(points: np.ndarray, k: int, rng) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.integers(n)]
    if k == 1:
        return centers
    d2 = ((points - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        centers[c] = points[np.argmax(d2)]
        d2 = np.minimum(d2, ((points - centers[c]) ** 2).sum(axis=1))
    return centers


def _lloyd(points: np.ndarray, centers: np.ndarray, max_iter: int, tol: float):
    n, k = points.shape[0], centers.shape[0]
    labels = np.full(n, -1)
    for _ in range(max_iter):
        d2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = np.argmin(d2, axis=1)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        moved = 0.0
        for c in range(k):
            members = points[labels == c]
            if members.shape[0] == 0:
                # re-seed a dead center at the point farthest from it
                far = np.argmax(((points - centers[c]) ** 2).sum(axis=1))
                new_center = points[far]
            else:
                new_center = members.mean(axis=0)
            moved = max(moved, float(np.abs(new_center - centers[c]).max()))
            centers[c] = new_center
        if moved < tol:
            break
    d2 = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    labels = np.argmin(d2, axis=1)
    inertia = float(d2[np.arange(n), labels].sum())
    return labels, centers, inertia


def kmeans(points, k: int, seed: RngSeed, restarts: int = 10,
           max_iter: int = 300, tol: float = 1e-10,
           init_centers=None) -> KmeansResult:
    """Seeded Lloyd k-means, best of `restarts` by inertia.

    Initialization is farthest-point: a seeded random first center,
    then greedily the point with the largest distance to its nearest
    chosen center.  Passing `init_centers` bypasses seeding and runs a
    single Lloyd descent from the given k x d centers.
    """
    points = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if points.ndim != 2:
        raise ValueError("points must be an n x d matrix")
    n = points.shape[0]
    if not 1 <= k <= n:
        raise ValueError("k must be in 1..n")

    if init_centers is not None:
        starts = [np.array(init_centers, dtype=np.float64)]
        if starts[0].shape != (k, points.shape[1]):
            raise ValueError("init_centers must be k x d")
    else:
        starts = [
            _farthest_point_init(points, k, seed.derive(r).generator())
            for r in range(restarts)
        ]

    best = None
    for centers0 in starts:
        labels, centers, inertia = _lloyd(points, centers0.copy(), max_iter, tol)
        if best is None or inertia < best[2]:
            best = (labels, centers, inertia)
    labels, centers, inertia = best
    present = np.bincount(labels, minlength=k)
    empty = tuple(int(c) + 1 for c in np.nonzero(present == 0)[0])
    assignment = CommunityAssignment.from_labels(labels + 1, k=k)
    return KmeansResult(labels=assignment, centers=centers,
                        inertia=inertia, empty_clusters=empty)
