import numpy as np
import pytest

from netcomm import CommunityAssignment, RngSeed, SbmParams, sample_sbm


@pytest.fixture
def two_block_graph():
    """A clearly separated two-block SBM draw (n=200)."""
    labels = np.concatenate([np.ones(100, dtype=np.int64),
                             np.full(100, 2, dtype=np.int64)])
    truth = CommunityAssignment.from_labels(labels)
    params = SbmParams(b=np.array([[0.5, 0.05], [0.05, 0.5]]), assignment=truth)
    return sample_sbm(params, RngSeed(1234)), truth


def block_labels(*sizes) -> CommunityAssignment:
    parts = [np.full(size, c + 1, dtype=np.int64)
             for c, size in enumerate(sizes)]
    return CommunityAssignment.from_labels(np.concatenate(parts))
