"""Community-count estimation and clustering for undirected networks.

Provides block-model samplers, a Tracy-Widom largest-eigenvalue test
for a single community (with parametric bootstrap correction),
eigenvector-ratio spectral clustering for degree-corrected block
models, and block-wise network cross-validation for selecting the
number of communities, plus a Monte Carlo experiment harness.
"""

from .netmodel import (CommunityAssignment, DcbmParams, DegeneracyError,
                       Graph, RngSeed, SbmParams, expected_adjacency,
                       generate_psi_lognormal, read_assignment, read_edgelist,
                       sample_dcbm, sample_erdos_renyi, sample_sbm,
                       write_assignment, write_edgelist)
from .ncv import (FittedBlockModel, FoldSplit, NcvReport, fit_dcbm_fold,
                  fit_sbm_fold, ncv_select_k, predictive_loss, split_folds)
from .score import RatioMatrix, ratio_matrix, score_cluster
from .simharness import (ExperimentConfig, ExperimentResult, run_experiment,
                         run_ncv_accuracy, run_score_demo, run_size_curve)
from .spectral import (EigenPairs, KmeansResult, kmeans, top_eigenpairs,
                       top_right_singular_vectors)
from .twtest import (TW1, TestReport, Tw1Distribution, centered_scaled,
                     corrected_statistic, estimate_p, theta_statistic,
                     tw1_cdf, tw_test)

__version__ = "0.1.0"
