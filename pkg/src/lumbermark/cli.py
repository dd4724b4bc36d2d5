"""Command-line interface.

    lumbermark cluster --in X.csv --alg lumbermark --k 3 [--out labels.txt]
    lumbermark mst     --in X.csv --M 5 [--out tree.txt]
    lumbermark eval    --pred labels.txt --ref ref0.txt [ref1.txt ...]
    lumbermark bench   --dir datasets/ --alg lumbermark [--M 5 --f 0.25]
    lumbermark sweep   --dir datasets/ --alg lumbermark --M-grid 1,5 --f-grid 0.1,0.25

Exit status: 0 on success, 1 on runtime failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
import time

from .algorithms import ClusteringError, gini_index
from .dataset import (
    ParseError,
    find_datasets,
    jitter,
    load_labels,
    load_points,
    save_labels,
)
from .eval import BAD_BELOW, GOOD_FROM, adjusted_rand, aggregate, best_ar
from .mst import MST_METHODS
from .pipeline import ALGORITHMS, cut_tree, fit_tree

log = logging.getLogger("lumbermark")

THREADS_ENV = "LUMBERMARK_THREADS"
BALANCE_GINI = 0.2


class UsageError(Exception):
    pass


def _float_list(s):
    try:
        return [float(t) for t in s.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}")


def _int_list(s):
    try:
        return [int(t) for t in s.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _threads(s):
    if s == "auto":
        return s
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError("threads must be a positive integer or 'auto'")
    if v < 1:
        raise argparse.ArgumentTypeError("threads must be a positive integer or 'auto'")
    return v


def _add_model_args(p, grid=False):
    p.add_argument("--alg", choices=ALGORITHMS, default="lumbermark")
    if not grid:
        p.add_argument("--M", type=int, default=5, help="smoothing parameter (default 5)")
        p.add_argument("--f", type=float, default=0.25, help="min_cluster_factor (default 0.25)")
        p.add_argument("--G", type=float, default=0.3, help="Genie Gini threshold (default 0.3)")
        p.add_argument("--eps", type=float, help="DBSCAN* radius")
    p.add_argument("--no-leaf-removal", dest="leaf_removal", action="store_false")
    p.add_argument("--jitter", nargs="?", const="auto", default=None, metavar="EPS",
                   help="add uniform noise in [-EPS, EPS]; default EPS is 1e-9 of the data range")
    p.add_argument("--seed", type=int, default=0, help="seed for --jitter")
    p.add_argument("--mst", choices=["auto", *MST_METHODS], default="auto", dest="mst_method")
    p.add_argument("--threads", type=_threads, default=None,
                   help=f"worker threads (default: ${THREADS_ENV} or auto)")


def build_parser():
    parser = argparse.ArgumentParser(prog="lumbermark", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster a single dataset")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--out", help="labels file (default: stdout, summary then goes to stderr)")
    _add_model_args(p)

    p = sub.add_parser("mst", help="dump the mutual reachability MST")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--M", type=int, default=5)
    p.add_argument("--out")
    p.add_argument("--jitter", nargs="?", const="auto", default=None, metavar="EPS")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mst", choices=["auto", *MST_METHODS], default="auto", dest="mst_method")
    p.add_argument("--threads", type=_threads, default=None)

    p = sub.add_parser("eval", help="score labels against reference labellings")
    p.add_argument("--pred", required=True)
    p.add_argument("--ref", required=True, nargs="+")

    p = sub.add_parser("bench", help="evaluate on a directory of benchmark datasets")
    p.add_argument("--dir", required=True)
    p.add_argument("--json-out")
    _add_model_args(p)

    p = sub.add_parser("sweep", help="parameter grid over a benchmark directory")
    p.add_argument("--dir", required=True)
    p.add_argument("--M-grid", type=_int_list, required=True, dest="M_grid")
    p.add_argument("--f-grid", type=_float_list, dest="f_grid")
    p.add_argument("--G-grid", type=_float_list, dest="G_grid")
    p.add_argument("--split-balance", action="store_true",
                   help=f"also report balanced/imbalanced groups (reference Gini > {BALANCE_GINI})")
    p.add_argument("--out", help="CSV file (default: stdout)")
    _add_model_args(p, grid=True)
    return parser


def _set_threads(threads):
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        try:
            threads = _threads(env) if env else "auto"
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"${THREADS_ENV}: {exc}") from None
    import numba

    limit = numba.config.NUMBA_NUM_THREADS
    numba.set_num_threads(limit if threads == "auto" else min(threads, limit))


def _prepare_points(args):
    ps = load_points(args.input)
    if args.jitter is not None:
        eps = None if args.jitter == "auto" else float(args.jitter)
        ps = jitter(ps, eps, seed=args.seed)
    return ps


def _check_model_args(args, k_required):
    if args.alg == "dbscan-star":
        if args.eps is None:
            raise UsageError("--eps is required for --alg dbscan-star")
        if args.eps <= 0:
            raise UsageError("--eps must be positive")
    elif k_required and args.k is None:
        raise UsageError(f"--k is required for --alg {args.alg}")
    if getattr(args, "k", None) is not None and args.k < 1:
        raise UsageError("--k must be positive")
    if getattr(args, "M", 1) < 1:
        raise UsageError("--M must be positive")
    if not 0 <= getattr(args, "f", 0) <= 1:
        raise UsageError("--f must lie in [0, 1]")
    if not 0 <= getattr(args, "G", 0) <= 1:
        raise UsageError("--G must lie in [0, 1]")


def cmd_cluster(args):
    _check_model_args(args, k_required=True)
    ps = _prepare_points(args)
    tree, timings = fit_tree(ps, M=args.M, mst_method=args.mst_method)
    t0 = time.perf_counter()
    part = cut_tree(tree, args.alg, k=args.k, f=args.f, G=args.G, eps=args.eps,
                    leaf_removal=args.leaf_removal)
    timings["cut"] = time.perf_counter() - t0
    summary = {
        "n": ps.n,
        "d": ps.d,
        "algorithm": args.alg,
        "k_requested": args.k,
        "k_found": part.k,
        "n_noise": int(part.noise.sum()),
        "M": args.M,
        "timings": timings,
    }
    if args.out:
        save_labels(args.out, part)
        print(json.dumps(summary))
    else:
        sys.stdout.write("".join(f"{y}\n" for y in part.labels.tolist()))
        print(json.dumps(summary), file=sys.stderr)
    return 0


def cmd_mst(args):
    ps = _prepare_points(args)
    tree, timings = fit_tree(ps, M=args.M, mst_method=args.mst_method)
    text = tree.dumps()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(json.dumps({"n": ps.n, "d": ps.d, "M": args.M, "timings": timings}))
    else:
        sys.stdout.write(text)
    return 0


def cmd_eval(args):
    pred = load_labels(args.pred)
    refs = [load_labels(r, n=pred.n) for r in args.ref]
    per_ref = [adjusted_rand(pred, r) for r in refs]
    print(json.dumps({"best_ar": best_ar(pred, refs), "per_reference": per_ref}))
    return 0


def _load_bench(directory):
    """Yield ``(name, points, refs)``, skipping unreadable datasets."""
    if not os.path.isdir(directory):
        raise ParseError("not a directory", directory)
    for name, (data_path, label_paths) in find_datasets(directory).items():
        if not label_paths:
            log.warning("skipping %s: no labels files", name)
            continue
        try:
            ps = load_points(data_path)
            refs = [load_labels(p, n=ps.n) for p in label_paths]
        except (OSError, ParseError, ValueError) as exc:
            log.warning("skipping %s: %s", name, exc)
            continue
        yield name, ps, refs


def _score_dataset(ps, refs, args, M, f=None, G=None, tree=None):
    """Best AR over the references, each clustered at its own k."""
    if tree is None:
        tree, _ = fit_tree(ps, M=M, mst_method=args.mst_method)
    f = args.f if f is None else f
    G = args.G if G is None else G
    preds = {}
    scores = []
    for ref in refs:
        k = None if args.alg == "dbscan-star" else ref.k
        if k not in preds:
            preds[k] = cut_tree(tree, args.alg, k=k, f=f, G=G, eps=getattr(args, "eps", None),
                                leaf_removal=args.leaf_removal)
        scores.append(best_ar(preds[k], [ref]))
    return max(scores)


def _jittered(ps, args):
    if args.jitter is None:
        return ps
    return jitter(ps, None if args.jitter == "auto" else float(args.jitter), seed=args.seed)


def cmd_bench(args):
    _check_model_args(args, k_required=False)
    per_dataset = {}
    for name, ps, refs in _load_bench(args.dir):
        try:
            per_dataset[name] = _score_dataset(_jittered(ps, args), refs, args, args.M)
        except (ValueError, ClusteringError) as exc:
            log.warning("skipping %s: %s", name, exc)
    if not per_dataset:
        log.error("no usable datasets in %s", args.dir)
        return 1
    report = aggregate(per_dataset)
    out = report.to_json(indent=2)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    print(out)
    print(report.to_table(), file=sys.stderr)
    return 0


def _sweep_stats(scores):
    ars = list(scores.values())
    m = len(ars)
    return [sum(a >= GOOD_FROM for a in ars) / m, sum(a < BAD_BELOW for a in ars) / m,
            sum(ars) / m]


def cmd_sweep(args):
    if args.alg == "lumbermark":
        if not args.f_grid:
            raise UsageError("--f-grid is required for --alg lumbermark")
        pname, grid = "f", args.f_grid
    elif args.alg == "genie":
        if not args.G_grid:
            raise UsageError("--G-grid is required for --alg genie")
        pname, grid = "G", args.G_grid
    else:
        raise UsageError("sweep supports --alg lumbermark or genie")
    if any(M < 1 for M in args.M_grid):
        raise UsageError("--M-grid values must be positive")
    if any(not 0 <= x <= 1 for x in grid):
        raise UsageError(f"--{pname}-grid values must lie in [0, 1]")
    args.f, args.G = 0.25, 0.3

    datasets = [(name, _jittered(ps, args), refs) for name, ps, refs in _load_bench(args.dir)]
    if not datasets:
        log.error("no usable datasets in %s", args.dir)
        return 1
    imbalanced = {name: gini_index(refs[0].sizes()) > BALANCE_GINI for name, _, refs in datasets}

    header = ([] if not args.split_balance else ["group"]) + [
        "M", pname, "prop_ar_ge_0.95", "prop_ar_lt_0.8", "mean_ar"]
    rows = []
    for M in args.M_grid:
        trees = {}
        for name, ps, refs in datasets:
            try:
                trees[name] = fit_tree(ps, M=M, mst_method=args.mst_method)[0]
            except ValueError as exc:
                log.warning("skipping %s at M=%d: %s", name, M, exc)
        for value in grid:
            scores = {}
            for name, ps, refs in datasets:
                if name not in trees:
                    continue
                kw = {pname: value}
                try:
                    scores[name] = _score_dataset(ps, refs, args, M, tree=trees[name], **kw)
                except (ValueError, ClusteringError) as exc:
                    log.warning("skipping %s at M=%d %s=%g: %s", name, M, pname, value, exc)
            groups = [("all", scores)]
            if args.split_balance:
                groups += [
                    ("balanced", {k: v for k, v in scores.items() if not imbalanced[k]}),
                    ("imbalanced", {k: v for k, v in scores.items() if imbalanced[k]}),
                ]
            for group, sc in groups:
                if not sc:
                    continue
                row = [M, value, *_sweep_stats(sc)]
                rows.append([group, *row] if args.split_balance else row)

    fh = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if args.out:
            fh.close()
    return 0


COMMANDS = {
    "cluster": cmd_cluster,
    "mst": cmd_mst,
    "eval": cmd_eval,
    "bench": cmd_bench,
    "sweep": cmd_sweep,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s: %(message)s",
    )
    try:
        if hasattr(args, "threads"):
            _set_threads(args.threads)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except (OSError, ParseError, ClusteringError, ValueError) as exc:
        print(f"lumbermark: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
