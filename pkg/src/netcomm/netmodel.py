"""Graphs, block-model parameterizations, and random samplers.

Supports undirected binary graphs and three generative models:
Erdos-Renyi, the stochastic block model (SBM), and the degree-corrected
block model (DCBM).  Community labels are 1-based everywhere.

Samplers draw one uniform per unordered node pair in row-major (i < j)
order, which pins down bit-level reproducibility for a given RngSeed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .rng import RngSeed

__all__ = [
    "DegeneracyError",
    "Graph",
    "CommunityAssignment",
    "SbmParams",
    "DcbmParams",
    "RngSeed",
    "sample_erdos_renyi",
    "sample_sbm",
    "sample_dcbm",
    "generate_psi_lognormal",
    "expected_adjacency",
    "read_edgelist",
    "write_edgelist",
    "read_assignment",
    "write_assignment",
]


class DegeneracyError(ValueError):
    """Raised when an input is degenerate for the requested procedure
    (empty/complete graph, fully disconnected input, collapsed
    bootstrap distribution)."""


_PAIR_INDEX_CACHE: dict = {}


def _pair_indices(n: int):
    """Row-major upper-triangle (i < j) index pair, cached per n."""
    if n not in _PAIR_INDEX_CACHE:
        if len(_PAIR_INDEX_CACHE) > 8:
            _PAIR_INDEX_CACHE.clear()
        _PAIR_INDEX_CACHE[n] = np.triu_indices(n, k=1)
    return _PAIR_INDEX_CACHE[n]


@dataclass(frozen=True)
class Graph:
    """Undirected binary graph held as a dense n x n adjacency matrix.

    The adjacency matrix is symmetric, zero on the diagonal, and 0/1
    valued.  Instances are immutable; treat `adjacency` as read-only.
    """

    n: int
    adjacency: np.ndarray = field(repr=False)

    @classmethod
    def from_adjacency(cls, adjacency, validate: bool = True) -> "Graph":
        a = np.asarray(adjacency)
        if validate:
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise ValueError("adjacency must be a square matrix")
            if not np.array_equal(a, a.T):
                raise ValueError("adjacency must be symmetric")
            if np.any(np.diagonal(a) != 0):
                raise ValueError("adjacency must have a zero diagonal")
            if not np.all((a == 0) | (a == 1)):
                raise ValueError("adjacency entries must be 0 or 1")
        a = np.ascontiguousarray(a, dtype=np.uint8)
        a.setflags(write=False)
        g = cls(n=a.shape[0], adjacency=a)
        return g

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1, dtype=np.int64)

    def as_float(self) -> np.ndarray:
        """Adjacency as a read-only float64 matrix (cached)."""
        cached = getattr(self, "_float_cache", None)
        if cached is None:
            cached = self.adjacency.astype(np.float64)
            cached.setflags(write=False)
            object.__setattr__(self, "_float_cache", cached)
        return cached


@dataclass(frozen=True)
class CommunityAssignment:
    """Per-node community labels g_i in {1..k}."""

    labels: np.ndarray = field(repr=False)
    k: int

    @classmethod
    def from_labels(cls, labels, k: int | None = None) -> "CommunityAssignment":
        lab = np.asarray(labels, dtype=np.int64)
        if lab.ndim != 1 or lab.size == 0:
            raise ValueError("labels must be a nonempty 1-d sequence")
        if k is None:
            k = int(lab.max())
        if lab.min() < 1 or lab.max() > k:
            raise ValueError("labels must lie in 1..k")
        lab = np.ascontiguousarray(lab)
        lab.setflags(write=False)
        return cls(labels=lab, k=k)

    @property
    def n(self) -> int:
        return self.labels.size

    def sizes(self) -> np.ndarray:
        """Community sizes, index 0 holding community 1."""
        return np.bincount(self.labels, minlength=self.k + 1)[1:]

    def hamming(self, other: "CommunityAssignment") -> int:
        """Smallest number of disagreeing labels over all label
        permutations (computed via optimal matching of the confusion
        matrix)."""
        if other.n != self.n:
            raise ValueError("assignments cover different node counts")
        k = max(self.k, other.k)
        confusion = np.zeros((k, k), dtype=np.int64)
        np.add.at(confusion, (self.labels - 1, other.labels - 1), 1)
        rows, cols = linear_sum_assignment(confusion, maximize=True)
        return self.n - int(confusion[rows, cols].sum())

    def misclustering_rate(self, other: "CommunityAssignment") -> float:
        return self.hamming(other) / self.n

    def matches(self, other: "CommunityAssignment") -> bool:
        """Equality up to a label permutation."""
        return self.hamming(other) == 0


@dataclass(frozen=True)
class SbmParams:
    """SBM parameters: symmetric K x K edge-probability matrix plus the
    community assignment of every node."""

    b: np.ndarray = field(repr=False)
    assignment: CommunityAssignment

    def __post_init__(self):
        b = np.asarray(self.b, dtype=np.float64)
        if b.ndim != 2 or b.shape != (self.assignment.k, self.assignment.k):
            raise ValueError("b must be K x K for the assignment's K")
        if np.abs(b - b.T).max() > 1e-10:
            raise ValueError("b must be symmetric")
        if b.min() < 0.0 or b.max() > 1.0:
            raise ValueError("b entries must be probabilities in [0, 1]")
        b = np.ascontiguousarray(b)
        b.setflags(write=False)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.assignment.n

    def pair_probabilities(self) -> np.ndarray:
        """Row-major upper-triangle vector of edge probabilities."""
        g = self.assignment.labels - 1
        iu, ju = _pair_indices(self.n)
        return self.b[g[iu], g[ju]]


@dataclass(frozen=True)
class DcbmParams:
    """Degree-corrected block model: SBM plus positive per-node
    activeness parameters psi."""

    sbm: SbmParams
    psi: np.ndarray = field(repr=False)

    def __post_init__(self):
        psi = np.asarray(self.psi, dtype=np.float64)
        if psi.shape != (self.sbm.n,):
            raise ValueError("psi must have one entry per node")
        if np.any(psi <= 0.0):
            raise ValueError("psi entries must be positive")
        psi = np.ascontiguousarray(psi)
        psi.setflags(write=False)
        object.__setattr__(self, "psi", psi)
        bad = self._max_pair_probability()
        if bad > 1.0 + 1e-12:
            raise ValueError(
                "psi_i * psi_j * B exceeds 1 for some pair (max %.6f)" % bad
            )

    @property
    def n(self) -> int:
        return self.sbm.n

    def _max_pair_probability(self) -> float:
        """Largest psi_i psi_j B_{gi gj} over pairs i != j."""
        g = self.sbm.assignment.labels
        k = self.sbm.assignment.k
        worst = 0.0
        # two largest psi per community bound the within/cross maxima
        top = {}
        for c in range(1, k + 1):
            vals = np.sort(self.psi[g == c])[::-1]
            top[c] = vals[:2]
        for a in range(1, k + 1):
            if top[a].size == 0:
                continue
            for b in range(a, k + 1):
                if top[b].size == 0:
                    continue
                bab = self.sbm.b[a - 1, b - 1]
                if a == b:
                    if top[a].size >= 2:
                        worst = max(worst, top[a][0] * top[a][1] * bab)
                else:
                    worst = max(worst, top[a][0] * top[b][0] * bab)
        return worst

    def pair_probabilities(self) -> np.ndarray:
        g = self.sbm.assignment.labels - 1
        iu, ju = _pair_indices(self.n)
        return self.psi[iu] * self.psi[ju] * self.sbm.b[g[iu], g[ju]]


def _graph_from_pair_bernoulli(n: int, probs: np.ndarray, seed: RngSeed) -> Graph:
    """One uniform per unordered pair, row-major i < j order."""
    rng = seed.generator()
    u = rng.random(n * (n - 1) // 2)
    edges = u < probs
    adj = np.zeros((n, n), dtype=np.uint8)
    iu, ju = _pair_indices(n)
    adj[iu, ju] = edges
    adj[ju, iu] = edges
    adj.setflags(write=False)
    return Graph(n=n, adjacency=adj)


def sample_erdos_renyi(n: int, p: float, seed: RngSeed) -> Graph:
    """Erdos-Renyi G(n, p): every unordered pair is an edge with
    probability p, independently."""
    if n < 2:
        raise ValueError("need at least 2 nodes")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    return _graph_from_pair_bernoulli(n, p, seed)


def sample_sbm(params: SbmParams, seed: RngSeed) -> Graph:
    """SBM draw: pair {i,j} is an edge with probability B[g_i, g_j]."""
    if params.n < 2:
        raise ValueError("need at least 2 nodes")
    return _graph_from_pair_bernoulli(params.n, params.pair_probabilities(), seed)


def sample_dcbm(params: DcbmParams, seed: RngSeed) -> Graph:
    """DCBM draw: pair {i,j} is an edge with probability
    psi_i * psi_j * B[g_i, g_j]."""
    if params.n < 2:
        raise ValueError("need at least 2 nodes")
    return _graph_from_pair_bernoulli(params.n, params.pair_probabilities(), seed)


def generate_psi_lognormal(n: int, sigma: float, cap: float, seed: RngSeed) -> np.ndarray:
    """Log-normal activeness parameters rescaled so max(psi) == cap.

    log(psi_i) is drawn i.i.d. N(0, sigma^2), then the whole vector is
    scaled by cap / max(psi).  All outputs lie in (0, cap].
    """
    if n < 1:
        raise ValueError("need at least one node")
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    if not 0.0 < cap <= 1.0:
        raise ValueError("cap must be in (0, 1]")
    rng = seed.generator()
    psi = np.exp(rng.normal(0.0, sigma, size=n))
    scaled = np.minimum(psi * (cap / psi.max()), cap)
    scaled[np.argmax(psi)] = cap  # exact despite round-off
    return scaled


def expected_adjacency(params: DcbmParams) -> np.ndarray:
    """Population matrix Omega with Omega[i, j] = psi_i psi_j B[g_i, g_j].

    The diagonal is filled with psi_i^2 B[g_i, g_i] rather than zero, so
    that Omega is exactly rank K and the closed-form eigenstructure of
    the block model applies.  Sampled graphs still have zero diagonal.
    """
    g = params.sbm.assignment.labels - 1
    block = params.sbm.b[np.ix_(g, g)]
    return params.psi[:, None] * params.psi[None, :] * block


def write_edgelist(graph: Graph, path) -> None:
    """Write a graph as `n` on line 1 then one `i j` pair (0-based,
    i < j) per line, LF endings."""
    iu, ju = np.nonzero(np.triu(graph.adjacency, k=1))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("%d\n" % graph.n)
        for i, j in zip(iu.tolist(), ju.tolist()):
            fh.write("%d %d\n" % (i, j))


def read_edgelist(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty edge-list file: %s" % path)
    n = int(lines[0])
    if n < 1:
        raise ValueError("node count must be positive")
    adj = np.zeros((n, n), dtype=np.uint8)
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError("malformed edge line: %r" % ln)
        i, j = int(parts[0]), int(parts[1])
        if not (0 <= i < j < n):
            raise ValueError("edge (%d, %d) out of range for n=%d" % (i, j, n))
        adj[i, j] = 1
        adj[j, i] = 1
    adj.setflags(write=False)
    return Graph(n=n, adjacency=adj)


def write_assignment(assignment: CommunityAssignment, path) -> None:
    """One 1-based label per line."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for lab in assignment.labels.tolist():
            fh.write("%d\n" % lab)


def read_assignment(path) -> CommunityAssignment:
    with open(path, "r", encoding="utf-8") as fh:
        labels = [int(ln.strip()) for ln in fh if ln.strip()]
    return CommunityAssignment.from_labels(labels)
