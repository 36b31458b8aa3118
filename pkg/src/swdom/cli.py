"""Command line entry points.

Five subcommands: sw-sweep (rate sweep for the side-information encoders),
dom-find (one domination run on a given or random graph), dom-experiment
(the concentration experiment), undersample (kNN-graph majority reduction),
and evaluate (kNN classifier scoring).  Every run writes its machine-readable
outputs (CSV/JSON) into --out-dir; report-style commands render a PNG next to
them.

Option resolution: command line flags beat the --config JSON file, which
beats built-in defaults.  Config keys are the long option names with dashes
replaced by underscores.  Exit codes: 0 on success, 1 on bad usage or bad
input values, 2 on runtime failures (enumeration limits, non-termination,
I/O).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from .graph_core import degree_stats, gen_gnp, load_edge_list
from .neigh_dom import (
    NonterminationError,
    check_sufficient_condition,
    concentration_experiment,
    greedy_shrink,
    lll_construct,
    lower_bound_certificate,
)
from .plotting import plot_rate_sweep, plot_retention, plot_trial_sizes
from .source_model import entropy_profile, load_family, storage_savings
from .sw_coding import EnumerationTooLargeError, threshold_sweep
from .undersample import evaluate_knn_classifier, load_dataset, undersample_majority

__all__ = ["main", "build_parser"]

_SWEEP_COLUMNS = ("rate", "n", "epsilon", "error_constructed", "error_optimal",
                  "ci_low", "ci_high")

_DEFAULTS: dict[str, dict] = {
    "sw-sweep": {
        "family": None,
        "epsilon": 0.1,
        "rates": "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0",
        "trials": 2000,
        "seed": 0,
    },
    "dom-find": {
        "graph": None,
        "gnp_n": None,
        "gnp_p": None,
        "theta": 0.3,
        "eta": 0.1,
        "max_rounds": None,
        "seed": 0,
    },
    "dom-experiment": {
        "n": 400,
        "p": 0.15,
        "theta": 0.3,
        "eta": 0.1,
        "zeta": 0.15,
        "trials": 20,
        "subsets_per_trial": 5,
        "max_rounds": None,
        "seed": 0,
    },
    "undersample": {
        "data": None,
        "label_column": "label",
        "theta": 0.3,
        "eta": 0.1,
        "k": None,
        "m_const": 3.0,
        "metric": "euclidean",
        "max_rounds": None,
        "evaluate": None,
        "k_eval": None,
        "seed": 0,
    },
    "evaluate": {
        "train": None,
        "test": None,
        "label_column": "label",
        "k_eval": 5,
        "metric": "euclidean",
    },
}


class _CliError(Exception):
    """Bad usage or bad option values; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _CliError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="swdom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seeded=True):
        p.add_argument("--out-dir", required=True, help="directory for outputs")
        p.add_argument("--config", help="JSON file with option defaults")
        if seeded:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--seed", type=int, help="RNG seed (default 0)")
            g.add_argument("--random-seed", action="store_true", default=None,
                           help="draw a fresh seed and log it")

    p = sub.add_parser("sw-sweep", help="error vs. rate for the encoder family")
    common(p)
    p.add_argument("--family", help="family JSON (alphabets and per-index pmfs)")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--rates", help="comma-separated rates in (0, 1]")
    p.add_argument("--trials", type=int, help="Monte Carlo trials per rate")

    p = sub.add_parser("dom-find", help="construct one dominating set")
    common(p)
    p.add_argument("--graph", help="edge list file ('u v' per line)")
    p.add_argument("--gnp-n", type=int, help="random graph size")
    p.add_argument("--gnp-p", type=float, help="random graph edge probability")
    p.add_argument("--theta", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--max-rounds", type=int)

    p = sub.add_parser("dom-experiment", help="size concentration over random graphs")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--zeta", type=float, help="probe subset fraction")
    p.add_argument("--trials", type=int)
    p.add_argument("--subsets-per-trial", type=int)
    p.add_argument("--max-rounds", type=int)

    p = sub.add_parser("undersample", help="shrink the majority class of a CSV dataset")
    common(p)
    p.add_argument("--data", help="dataset CSV")
    p.add_argument("--label-column")
    p.add_argument("--theta", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--k", type=int, help="neighbourhood size (default from m-const)")
    p.add_argument("--m-const", type=float, help="k = ceil(m_const * log2 n)")
    p.add_argument("--metric", choices=("euclidean", "manhattan", "cosine"))
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--evaluate", help="holdout CSV to score after undersampling")
    p.add_argument("--k-eval", type=int, help="classifier k (default: graph k)")

    p = sub.add_parser("evaluate", help="score a kNN classifier on a holdout CSV")
    common(p, seeded=False)
    p.add_argument("--train", help="training CSV")
    p.add_argument("--test", help="holdout CSV")
    p.add_argument("--label-column")
    p.add_argument("--k-eval", type=int)
    p.add_argument("--metric", choices=("euclidean", "manhattan", "cosine"))

    return parser


def _resolve_options(args: argparse.Namespace) -> dict:
    defaults = _DEFAULTS[args.command]
    cfg = dict(defaults)
    if args.config is not None:
        with open(args.config) as fh:
            doc = json.load(fh)
        if not isinstance(doc, dict):
            raise _CliError(f"{args.config}: config must be a JSON object")
        bad = sorted(set(doc) - set(defaults))
        if bad:
            raise _CliError(
                f"{args.config}: unknown keys {bad}; valid keys: {sorted(defaults)}"
            )
        cfg.update(doc)
    for key in defaults:
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    if getattr(args, "random_seed", None):
        cfg["seed"] = int(np.random.SeedSequence().entropy)
    if "seed" in cfg:
        print(f"seed: {cfg['seed']}")
    return cfg


def _require(cfg: dict, key: str, flag: str):
    if cfg.get(key) is None:
        raise _CliError(f"{flag} is required (flag or config)")
    return cfg[key]


def _out_path(args, name: str) -> str:
    os.makedirs(args.out_dir, exist_ok=True)
    return os.path.join(args.out_dir, name)


def _write_json(doc: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {path}")


def _fmt(value) -> str:
    return repr(float(value))


def _parse_rates(raw) -> list[float]:
    if isinstance(raw, (list, tuple)):
        return [float(r) for r in raw]
    try:
        rates = [float(tok) for tok in str(raw).split(",") if tok.strip()]
    except ValueError:
        raise _CliError(f"cannot parse rates {raw!r}") from None
    if not rates:
        raise _CliError("the rate grid is empty")
    return rates


def _cmd_sw_sweep(args) -> int:
    cfg = _resolve_options(args)
    family = load_family(_require(cfg, "family", "--family"))
    epsilon = float(cfg["epsilon"])
    rates = _parse_rates(cfg["rates"])
    rows = threshold_sweep(family, epsilon, rates, int(cfg["trials"]), cfg["seed"])

    csv_path = _out_path(args, "sweep.csv")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_SWEEP_COLUMNS)
        for r in rows:
            writer.writerow([_fmt(r.rate), r.n, _fmt(r.epsilon),
                             _fmt(r.error_constructed), _fmt(r.error_optimal),
                             _fmt(r.ci_low), _fmt(r.ci_high)])
    print(f"wrote {csv_path}")

    profile = entropy_profile(family)
    gap = profile.avg_hxy - profile.avg_hy
    _write_json({
        "family": str(cfg["family"]),
        "n": family.n,
        "epsilon": epsilon,
        "rates": rates,
        "trials": int(cfg["trials"]),
        "seed": cfg["seed"],
        "avg_entropy_joint": profile.avg_hxy,
        "avg_entropy_y": profile.avg_hy,
        "avg_entropy_x": profile.avg_hx,
        "entropy_gap": gap,
        "guarantee_rate": gap + 5.0 * epsilon,
        "storage_savings": storage_savings(profile),
    }, _out_path(args, "sweep_summary.json"))

    fig_path = _out_path(args, "sweep.png")
    plot_rate_sweep(rows, gap, fig_path)
    print(f"wrote {fig_path}")
    return 0


def _load_dom_graph(cfg):
    if cfg["graph"] is not None:
        if cfg["gnp_n"] is not None or cfg["gnp_p"] is not None:
            raise _CliError("pass either --graph or --gnp-n/--gnp-p, not both")
        return load_edge_list(cfg["graph"]), f"file:{cfg['graph']}", None
    if cfg["gnp_n"] is None or cfg["gnp_p"] is None:
        raise _CliError("pass --graph, or both --gnp-n and --gnp-p")
    n, p = int(cfg["gnp_n"]), float(cfg["gnp_p"])
    graph_ss, lll_ss = np.random.SeedSequence(cfg["seed"]).spawn(2)
    return gen_gnp(n, p, graph_ss), f"gnp(n={n}, p={p})", lll_ss


def _cmd_dom_find(args) -> int:
    cfg = _resolve_options(args)
    graph, source, lll_seed = _load_dom_graph(cfg)
    if lll_seed is None:
        lll_seed = np.random.SeedSequence(cfg["seed"]).spawn(2)[1]
    theta, eta = float(cfg["theta"]), float(cfg["eta"])
    built = lll_construct(graph, theta, eta, lll_seed, max_rounds=cfg["max_rounds"])
    cert = greedy_shrink(graph, theta, built)
    _write_json(cert.to_json_dict(), _out_path(args, "certificate.json"))

    dmin, dmax, _ = degree_stats(graph)
    if dmin >= 1:
        cond_ok, cond = check_sufficient_condition(theta, eta, dmin, dmax)
    else:
        cond_ok, cond = False, {"note": "isolated vertex present"}
    bound = lower_bound_certificate(graph, theta)
    size_bound = (theta + 2.0 * eta) * graph.vertex_count
    _write_json({
        "source": source,
        "n": graph.vertex_count,
        "theta": theta,
        "eta": eta,
        "seed": cfg["seed"],
        "min_degree": dmin,
        "max_degree": dmax,
        "lll_size": built.size,
        "final_size": cert.size,
        "feasible": cert.feasible,
        "size_bound": size_bound,
        "within_bound": cert.size <= size_bound + 1e-9,
        "sufficient_condition_holds": cond_ok,
        "sufficient_condition": cond,
        "lower_bound_sum_form": bound.sum_form,
        "lower_bound_closed_form": bound.closed_form,
        "lower_bound_witness_size": len(bound.witness),
    }, _out_path(args, "dom_find_summary.json"))
    return 0


def _cmd_dom_experiment(args) -> int:
    cfg = _resolve_options(args)
    report = concentration_experiment(
        int(cfg["n"]), float(cfg["p"]), float(cfg["theta"]), float(cfg["eta"]),
        float(cfg["zeta"]), int(cfg["trials"]), cfg["seed"],
        subsets_per_trial=int(cfg["subsets_per_trial"]),
        max_rounds=cfg["max_rounds"],
    )
    csv_path = _out_path(args, "experiment.csv")
    report.write_csv(csv_path)
    print(f"wrote {csv_path}")
    _write_json(report.summary_dict(), _out_path(args, "experiment_summary.json"))
    fig_path = _out_path(args, "experiment.png")
    plot_trial_sizes(report, fig_path)
    print(f"wrote {fig_path}")
    return 0


def _cmd_undersample(args) -> int:
    cfg = _resolve_options(args)
    dataset = load_dataset(_require(cfg, "data", "--data"), cfg["label_column"])
    result = undersample_majority(
        dataset, float(cfg["theta"]), float(cfg["eta"]), cfg["seed"],
        k=cfg["k"] if cfg["k"] is None else int(cfg["k"]),
        metric=cfg["metric"], m_const=float(cfg["m_const"]),
        max_rounds=cfg["max_rounds"],
    )

    idx_path = _out_path(args, "retained_indices.csv")
    minority = set(result.minority)
    with open(idx_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "label", "origin"])
        for i in result.retained_indices():
            writer.writerow([i, dataset.labels[i],
                             "minority" if i in minority else "majority"])
    print(f"wrote {idx_path}")

    _write_json(result.certificate.to_json_dict(), _out_path(args, "certificate.json"))

    size_bound = (result.theta + 2.0 * result.eta) * result.majority_total
    _write_json({
        "data": str(cfg["data"]),
        "label_column": cfg["label_column"],
        "majority_label": result.majority_label,
        "majority_total": result.majority_total,
        "minority_total": len(result.minority),
        "k": result.k,
        "metric": result.metric,
        "theta": result.theta,
        "eta": result.eta,
        "seed": cfg["seed"],
        "retained_majority": len(result.retained_majority),
        "retention_fraction": result.retention_fraction(),
        "size_bound": size_bound,
        "within_bound": len(result.retained_majority) <= size_bound + 1e-9,
        "feasible": result.certificate.feasible,
    }, _out_path(args, "undersample_summary.json"))

    fig_path = _out_path(args, "retention.png")
    plot_retention(result, fig_path)
    print(f"wrote {fig_path}")

    if cfg["evaluate"] is not None:
        holdout = load_dataset(cfg["evaluate"], cfg["label_column"])
        k_eval = int(cfg["k_eval"]) if cfg["k_eval"] is not None else result.k
        train = result.subset(dataset)
        k_eval = min(k_eval, len(train))
        report = evaluate_knn_classifier(train, holdout, k_eval, cfg["metric"])
        doc = report.to_json_dict()
        doc["train"] = "retained subset of " + str(cfg["data"])
        doc["test"] = str(cfg["evaluate"])
        _write_json(doc, _out_path(args, "evaluation.json"))
    return 0


def _cmd_evaluate(args) -> int:
    cfg = _resolve_options(args)
    train = load_dataset(_require(cfg, "train", "--train"), cfg["label_column"])
    test = load_dataset(_require(cfg, "test", "--test"), cfg["label_column"])
    report = evaluate_knn_classifier(train, test, int(cfg["k_eval"]), cfg["metric"])
    doc = report.to_json_dict()
    doc["train"] = str(cfg["train"])
    doc["test"] = str(cfg["test"])
    _write_json(doc, _out_path(args, "evaluation.json"))
    return 0


_COMMANDS = {
    "sw-sweep": _cmd_sw_sweep,
    "dom-find": _cmd_dom_find,
    "dom-experiment": _cmd_dom_experiment,
    "undersample": _cmd_undersample,
    "evaluate": _cmd_evaluate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _CliError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (_CliError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (EnumerationTooLargeError, NonterminationError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except Exception as err:  # pragma: no cover - last-resort mapping
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
