"""Command-line interface.

Verbs: `gen` (sample a graph to an edge-list file), `tw-test` (one-
community test), `score` (ratio-based clustering), `ncv` (cross-
validated community-count selection), and `sim` (the Monte Carlo
experiments).  Exit codes: 0 success, 2 degenerate input, 1 any other
error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .netmodel import (CommunityAssignment, DcbmParams, DegeneracyError,
                       SbmParams, generate_psi_lognormal, read_edgelist,
                       sample_dcbm, sample_erdos_renyi, sample_sbm,
                       write_assignment, write_edgelist)
from .ncv import ncv_select_k
from .rng import RngSeed
from .score import ratio_matrix, score_cluster
from .simharness import ExperimentConfig, parse_value, run_experiment
from .twtest import tw_test


def _parse_sizes(text: str) -> list:
    return [int(part) for part in text.split(",")]


def _parse_matrix(text: str) -> np.ndarray:
    rows = [[float(x) for x in row.split(",")] for row in text.split(";")]
    return np.array(rows)


def _labels_from_sizes(sizes) -> CommunityAssignment:
    labels = np.concatenate([
        np.full(size, c + 1, dtype=np.int64) for c, size in enumerate(sizes)
    ])
    return CommunityAssignment.from_labels(labels, k=len(sizes))


def _fmt(x) -> str:
    return "%.6g" % x


def cmd_gen(args) -> int:
    seed = RngSeed(args.seed, args.stream)
    if args.model == "er":
        if args.n is None or args.p is None:
            raise ValueError("er model needs --n and --p")
        graph = sample_erdos_renyi(args.n, args.p, seed)
        assignment = None
    else:
        if args.sizes is None or args.b is None:
            raise ValueError("%s model needs --sizes and --b" % args.model)
        assignment = _labels_from_sizes(_parse_sizes(args.sizes))
        params = SbmParams(b=_parse_matrix(args.b), assignment=assignment)
        if args.model == "sbm":
            graph = sample_sbm(params, seed.derive(0))
        else:
            psi = generate_psi_lognormal(assignment.n, args.psi_sigma,
                                         args.psi_cap, seed.derive(1))
            graph = sample_dcbm(DcbmParams(sbm=params, psi=psi), seed.derive(0))
    write_edgelist(graph, args.out)
    if args.labels_out:
        if assignment is None:
            assignment = CommunityAssignment.from_labels(
                np.ones(graph.n, dtype=np.int64), k=1)
        write_assignment(assignment, args.labels_out)
    return 0


def cmd_tw_test(args) -> int:
    graph = read_edgelist(args.input)
    report = tw_test(graph, correct=not args.no_correct,
                     bootstrap_reps=args.reps, seed=RngSeed(args.seed))
    theta_prime = "" if report.theta_prime is None else _fmt(report.theta_prime)
    print("%s,%s,%s,%s" % (_fmt(report.p_hat), _fmt(report.theta),
                           theta_prime, _fmt(report.p_value)))
    return 0


def cmd_score(args) -> int:
    graph = read_edgelist(args.input)
    clamp = None if args.clamp == "auto" else float(args.clamp)
    ratios = ratio_matrix(graph, args.k, clamp)
    if args.emit_ratios:
        with open(args.emit_ratios, "w", encoding="utf-8", newline="\n") as fh:
            cols = ratios.values.shape[1]
            fh.write("node," + ",".join("ratio_%d" % (j + 1)
                                        for j in range(cols)) + "\n")
            for i in range(graph.n):
                fh.write("%d,%s\n" % (i, ",".join(_fmt(v)
                                                  for v in ratios.values[i])))
    assignment = score_cluster(graph, args.k, RngSeed(args.seed), clamp,
                               ratios=ratios if args.k >= 2 else None)
    if args.out:
        write_assignment(assignment, args.out)
    else:
        for lab in assignment.labels.tolist():
            print(lab)
    return 0


def cmd_ncv(args) -> int:
    graph = read_edgelist(args.input)
    report = ncv_select_k(graph, k_max=args.kmax, v=args.folds,
                          model=args.model, kind=args.loss,
                          seed=RngSeed(args.seed))
    lines = ["K,fold,loss,flag"]
    for k, fold, loss, flag in report.per_fold:
        lines.append("%d,%d,%s,%s" % (k, fold, _fmt(loss), flag))
    lines.append("selected_k=%d" % report.selected_k)
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_sim(args) -> int:
    if args.config:
        cfg = ExperimentConfig.from_file(args.config)
        if cfg.experiment != args.experiment:
            raise ValueError("config file is for %r, not %r"
                             % (cfg.experiment, args.experiment))
    else:
        cfg = ExperimentConfig.default(args.experiment)
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    for item in args.set or []:
        if "=" not in item:
            raise ValueError("--set expects key=value, got %r" % item)
        key, value = item.split("=", 1)
        overrides[key.strip()] = parse_value(value)
    if overrides:
        cfg = cfg.updated(overrides)
    result = run_experiment(cfg, jobs=args.jobs)
    paths = result.write(args.out)
    for path in paths:
        print(path)
    return 0


_EXPERIMENT_NAMES = {"size": "size-curve", "score-demo": "score-demo",
                     "ncv-accuracy": "ncv-accuracy"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netcomm",
        description="Community-count estimation and clustering for "
                    "undirected networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample a graph to an edge-list file")
    p.add_argument("--model", choices=["er", "sbm", "dcbm"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--sizes", help="community sizes, e.g. 500,500")
    p.add_argument("--b", help="block probabilities, e.g. 0.6,0.2;0.2,0.6")
    p.add_argument("--psi-sigma", type=float, default=0.2)
    p.add_argument("--psi-cap", type=float, default=0.9)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--labels-out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("tw-test", help="one-community goodness-of-fit test")
    p.add_argument("--input", required=True)
    p.add_argument("--no-correct", action="store_true")
    p.add_argument("--reps", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_tw_test)

    p = sub.add_parser("score", help="ratio-based spectral clustering")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--clamp", default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--emit-ratios")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("ncv", help="cross-validated community-count selection")
    p.add_argument("--input", required=True)
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--folds", type=int, default=3)
    p.add_argument("--model", choices=["sbm", "dcbm"], default="sbm")
    p.add_argument("--loss", choices=["nll", "sq"], default="nll")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ncv)

    p = sub.add_parser("sim", help="run a Monte Carlo experiment")
    p.add_argument("experiment", choices=sorted(_EXPERIMENT_NAMES))
    p.add_argument("--config")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override a config value (repeatable)")
    p.set_defaults(func=cmd_sim)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    if args.command == "sim":
        args.experiment = _EXPERIMENT_NAMES[args.experiment]
    try:
        return args.func(args)
    except DegeneracyError as exc:
        print("degenerate input: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
