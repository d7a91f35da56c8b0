"""Monte Carlo experiment driver.

Three experiments ship with the toolkit:

  size-curve     rejection rate of the one-community test (raw and
                 bootstrap-corrected) over a grid of edge densities
  score-demo     eigenvector-ratio scatter data and misclustering of
                 ratio-based clustering on a two-block DCBM
  ncv-accuracy   fraction of replications in which cross-validation
                 selects the true community count, over a sparsity /
                 block-size grid

Each experiment is a pure function of its config (including the base
seed): replication r of parameter cell c always draws from stream
`c * replications + r`, so results are byte-identical however the work
is scheduled.  Row-level output is written before aggregate output.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field

import numpy as np

from .netmodel import (CommunityAssignment, DcbmParams, SbmParams,
                       generate_psi_lognormal, sample_dcbm, sample_erdos_renyi,
                       sample_sbm)
from .ncv import ncv_select_k
from .rng import RngSeed
from .score import ratio_matrix, score_cluster
from .twtest import TW1, tw_test

__all__ = [
    "ExperimentConfig",
    "ExperimentResult",
    "run_size_curve",
    "run_score_demo",
    "run_ncv_accuracy",
    "run_experiment",
]

EXPERIMENTS = ("size-curve", "score-demo", "ncv-accuracy")

_DEFAULTS = {
    "size-curve": {
        "replications": 500,
        "n": 500,
        "p_grid": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
        "bootstrap_reps": 50,
        "level": 0.05,
    },
    "score-demo": {
        "replications": 1,
        "n": 1000,
        "k": 2,
        "n1": 250,
        "b_within": 1.0,
        "b_between": 0.5,
        "psi_sigma": 0.2,
        "psi_cap": 0.9,
        "clamp": "auto",
    },
    "ncv-accuracy": {
        "replications": 200,
        "n": 1000,
        "r_grid": [0.01, 0.02, 0.05, 0.1, 0.2],
        "n1_grid": [200, 300, 400, 500],
        "b0_diag": 3.0,
        "b0_offdiag": 1.0,
        "k_max": 6,
        "folds": 3,
        "model": "sbm",
        "loss": "nll",
    },
}


def parse_value(text: str):
    text = text.strip()
    if "," in text:
        # a trailing comma marks a one-element list
        return [parse_value(part) for part in text.split(",") if part.strip()]
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def _format_value(value) -> str:
    if isinstance(value, list):
        joined = ",".join(_format_value(v) for v in value)
        return joined + "," if len(value) == 1 else joined
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class ExperimentConfig:
    """Flat key-value experiment configuration.

    The file form is one `key = value` pair per line (UTF-8, `#`
    comments allowed); values are integers, floats, comma-separated
    lists thereof, or bare strings.  `from_text(to_text())` is the
    identity.
    """

    experiment: str
    seed: int
    replications: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError("unknown experiment %r (expected one of %s)"
                             % (self.experiment, ", ".join(EXPERIMENTS)))
        if self.replications < 1:
            raise ValueError("replications must be >= 1")

    @classmethod
    def default(cls, experiment: str, seed: int = 0) -> "ExperimentConfig":
        defaults = dict(_DEFAULTS[experiment])
        reps = defaults.pop("replications")
        return cls(experiment=experiment, seed=seed, replications=reps,
                   params=defaults)

    def updated(self, overrides: dict) -> "ExperimentConfig":
        """New config with `overrides` applied (reserved keys
        experiment/seed/replications are recognized)."""
        fields = {"experiment": self.experiment, "seed": self.seed,
                  "replications": self.replications}
        params = dict(self.params)
        for key, value in overrides.items():
            if key in fields:
                fields[key] = type(fields[key])(value) if key != "experiment" else value
            else:
                params[key] = value
        return ExperimentConfig(params=params, **fields)

    def param(self, key: str):
        if key not in self.params:
            raise KeyError("config for %s is missing %r" % (self.experiment, key))
        return self.params[key]

    def grid(self, key: str) -> list:
        value = self.param(key)
        return value if isinstance(value, list) else [value]

    def to_text(self) -> str:
        lines = ["experiment = %s" % self.experiment,
                 "seed = %d" % self.seed,
                 "replications = %d" % self.replications]
        for key in sorted(self.params):
            lines.append("%s = %s" % (key, _format_value(self.params[key])))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        entries = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("malformed config line: %r" % raw)
            key, value = line.split("=", 1)
            entries[key.strip()] = parse_value(value)
        try:
            experiment = entries.pop("experiment")
            seed = entries.pop("seed")
            replications = entries.pop("replications")
        except KeyError as missing:
            raise ValueError("config is missing required key %s" % missing)
        return cls(experiment=experiment, seed=int(seed),
                   replications=int(replications), params=entries)

    def to_file(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_text())

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())


def _fmt_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return "%d" % value
    if isinstance(value, (float, np.floating)):
        return "%.6g" % value
    return str(value)


@dataclass(frozen=True)
class ExperimentResult:
    """Row-level replication output plus aggregate rows.

    Aggregates are recomputed from `rows` (means and standard errors of
    the mean), never accumulated separately.
    """

    row_columns: tuple
    rows: tuple
    summary_columns: tuple
    summary: tuple
    extras: dict = field(default_factory=dict)

    def write(self, prefix: str) -> list:
        """Write <prefix>_rows.csv, any extra tables, then
        <prefix>_summary.csv (aggregates always last)."""
        paths = []

        def emit(suffix, columns, rows):
            path = "%s_%s.csv" % (prefix, suffix)
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(",".join(columns) + "\n")
                for row in rows:
                    fh.write(",".join(_fmt_cell(v) for v in row) + "\n")
            paths.append(path)

        emit("rows", self.row_columns, self.rows)
        for name in sorted(self.extras):
            columns, rows = self.extras[name]
            emit(name, columns, rows)
        emit("summary", self.summary_columns, self.summary)
        return paths


def _mean_se(values) -> tuple:
    arr = np.asarray(values, dtype=np.float64)
    mean = float(arr.mean())
    se = float(arr.std(ddof=1) / np.sqrt(arr.size)) if arr.size > 1 else 0.0
    return mean, se


def _run_tasks(worker, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(task) for task in tasks]
    with multiprocessing.Pool(jobs) as pool:
        return pool.map(worker, tasks, chunksize=max(1, len(tasks) // (8 * jobs)))


# --- size-curve ---------------------------------------------------------

def _size_curve_one(task):
    n, p, bootstrap_reps, level, seed = task
    graph = sample_erdos_renyi(n, p, seed.derive(0))
    report = tw_test(graph, correct=True, bootstrap_reps=bootstrap_reps,
                     seed=seed.derive(1))
    p_raw = float(TW1.sf(report.theta))
    return (p_raw, report.p_value, int(p_raw < level),
            int(report.p_value < level))


def run_size_curve(cfg: ExperimentConfig, jobs: int = 1) -> ExperimentResult:
    """Empirical rejection rate of the one-community test, with and
    without bootstrap correction, on true Erdos-Renyi graphs."""
    if cfg.experiment != "size-curve":
        raise ValueError("config is for %r" % cfg.experiment)
    n = int(cfg.param("n"))
    grid = [float(p) for p in cfg.grid("p_grid")]
    reps = cfg.replications
    bootstrap_reps = int(cfg.param("bootstrap_reps"))
    level = float(cfg.param("level"))
    base = RngSeed(cfg.seed)

    tasks = [(n, p, bootstrap_reps, level, base.derive(ci * reps + r))
             for ci, p in enumerate(grid) for r in range(reps)]
    outcomes = _run_tasks(_size_curve_one, tasks, jobs)

    rows = []
    summary = []
    for ci, p in enumerate(grid):
        chunk = outcomes[ci * reps:(ci + 1) * reps]
        for r, (p_raw, p_corr, rej_raw, rej_corr) in enumerate(chunk):
            rows.append((p, r, p_raw, p_corr, rej_raw, rej_corr))
        for metric, idx in (("reject_raw", 2), ("reject_corrected", 3)):
            mean, se = _mean_se([rows[ci * reps + r][idx + 2] for r in range(reps)])
            summary.append((p, metric, mean, se))
    return ExperimentResult(
        row_columns=("p", "rep", "p_value_raw", "p_value_corrected",
                     "reject_raw", "reject_corrected"),
        rows=tuple(rows),
        summary_columns=("p", "metric", "mean", "stderr"),
        summary=tuple(summary),
    )


# --- score-demo ---------------------------------------------------------

def _score_demo_one(task):
    (n, k, n1, b_within, b_between, psi_sigma, psi_cap, clamp, seed) = task
    psi = generate_psi_lognormal(n, psi_sigma, psi_cap, seed.derive(0))
    if k == 2:
        labels = np.concatenate([np.ones(n1, dtype=np.int64),
                                 np.full(n - n1, 2, dtype=np.int64)])
        b = np.array([[b_within, b_between], [b_between, b_within]])
    else:
        labels = np.ones(n, dtype=np.int64)
        b = np.array([[b_within]])
    truth = CommunityAssignment.from_labels(labels)
    params = DcbmParams(sbm=SbmParams(b=b, assignment=truth), psi=psi)
    graph = sample_dcbm(params, seed.derive(1))
    ratios = ratio_matrix(graph, k, clamp)
    col = ratios.values[:, 0]
    q75, q25 = np.percentile(col, [75, 25])
    iqr = float(q75 - q25)
    if k == 2:
        est = score_cluster(graph, 2, seed.derive(2), ratios=ratios)
        mis = truth.misclustering_rate(est)
        gap = float(abs(np.median(col[:n1]) - np.median(col[n1:])))
        metrics = (mis, gap, iqr)
    else:
        metrics = (iqr,)
    return metrics, labels, col


def run_score_demo(cfg: ExperimentConfig, jobs: int = 1) -> ExperimentResult:
    """Ratio-scatter data (and, for two blocks, misclustering) of
    ratio-based spectral clustering on a DCBM."""
    if cfg.experiment != "score-demo":
        raise ValueError("config is for %r" % cfg.experiment)
    n = int(cfg.param("n"))
    k = int(cfg.param("k"))
    if k not in (1, 2):
        raise ValueError("score-demo supports k in {1, 2}")
    n1 = int(cfg.param("n1")) if k == 2 else n
    clamp_cfg = cfg.param("clamp")
    clamp = None if clamp_cfg == "auto" else float(clamp_cfg)
    base = RngSeed(cfg.seed)
    tasks = [(n, k, n1, float(cfg.param("b_within")),
              float(cfg.param("b_between")), float(cfg.param("psi_sigma")),
              float(cfg.param("psi_cap")), clamp, base.derive(r))
             for r in range(cfg.replications)]
    outcomes = _run_tasks(_score_demo_one, tasks, jobs)

    if k == 2:
        row_columns = ("rep", "misclustering", "ratio_gap", "ratio_iqr")
        metric_names = ("misclustering", "ratio_gap", "ratio_iqr")
    else:
        row_columns = ("rep", "ratio_iqr")
        metric_names = ("ratio_iqr",)
    rows = [(r,) + metrics for r, (metrics, _, _) in enumerate(outcomes)]
    summary = []
    for mi, name in enumerate(metric_names):
        mean, se = _mean_se([row[1 + mi] for row in rows])
        summary.append((name, mean, se))
    ratio_rows = [(r, node, int(labels[node]), float(col[node]))
                  for r, (_, labels, col) in enumerate(outcomes)
                  for node in range(n)]
    return ExperimentResult(
        row_columns=row_columns,
        rows=tuple(rows),
        summary_columns=("metric", "mean", "stderr"),
        summary=tuple(summary),
        extras={"ratios": (("rep", "node", "true_label", "ratio"),
                           tuple(ratio_rows))},
    )


# --- ncv-accuracy -------------------------------------------------------

def _ncv_accuracy_one(task):
    n, n1, r, b0_diag, b0_offdiag, k_max, folds, model, loss, seed = task
    labels = np.concatenate([np.ones(n1, dtype=np.int64),
                             np.full(n - n1, 2, dtype=np.int64)])
    truth = CommunityAssignment.from_labels(labels)
    b = r * np.array([[b0_diag, b0_offdiag], [b0_offdiag, b0_diag]])
    graph = sample_sbm(SbmParams(b=b, assignment=truth), seed.derive(0))
    report = ncv_select_k(graph, k_max=k_max, v=folds, model=model,
                          kind=loss, seed=seed.derive(1))
    return report.selected_k


def run_ncv_accuracy(cfg: ExperimentConfig, jobs: int = 1) -> ExperimentResult:
    """Fraction of replications in which cross-validation selects the
    true two-block count, over the (sparsity, block-size) grid."""
    if cfg.experiment != "ncv-accuracy":
        raise ValueError("config is for %r" % cfg.experiment)
    n = int(cfg.param("n"))
    r_grid = [float(r) for r in cfg.grid("r_grid")]
    n1_grid = [int(v) for v in cfg.grid("n1_grid")]
    reps = cfg.replications
    base = RngSeed(cfg.seed)
    common = (float(cfg.param("b0_diag")), float(cfg.param("b0_offdiag")),
              int(cfg.param("k_max")), int(cfg.param("folds")),
              str(cfg.param("model")), str(cfg.param("loss")))

    cells = [(r, n1) for r in r_grid for n1 in n1_grid]
    tasks = [(n, n1, r) + common + (base.derive(ci * reps + rep),)
             for ci, (r, n1) in enumerate(cells) for rep in range(reps)]
    outcomes = _run_tasks(_ncv_accuracy_one, tasks, jobs)

    rows = []
    summary = []
    for ci, (r, n1) in enumerate(cells):
        chunk = outcomes[ci * reps:(ci + 1) * reps]
        for rep, selected in enumerate(chunk):
            rows.append((r, n1, rep, selected, int(selected == 2)))
        mean, se = _mean_se([int(s == 2) for s in chunk])
        summary.append((r, n1, "correct", mean, se))
    return ExperimentResult(
        row_columns=("r", "n1", "rep", "selected_k", "correct"),
        rows=tuple(rows),
        summary_columns=("r", "n1", "metric", "mean", "stderr"),
        summary=tuple(summary),
    )


_RUNNERS = {
    "size-curve": run_size_curve,
    "score-demo": run_score_demo,
    "ncv-accuracy": run_ncv_accuracy,
}


def run_experiment(cfg: ExperimentConfig, jobs: int = 1) -> ExperimentResult:
    return _RUNNERS[cfg.experiment](cfg, jobs=jobs)
