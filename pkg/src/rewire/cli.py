"""Command-line interface: `rewire run` and `rewire ratio`.

Exit codes: 0 success, 1 input error, 2 internal error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
import traceback
from pathlib import Path

from .candidates import enumerate_ep
from .errors import GraphError
from .exact import DEFAULT_NODE_BUDGET
from .experiments import METRIC_NAMES, ExperimentSpec, run_experiment, run_ratio_study
from .graph import connected_components, parse_edge_list
from .strategies import STRATEGIES, StrategyConfig, run_strategy, write_plan_csv

logger = logging.getLogger("rewire")


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _InputError(message)


def _parse_budget(text: str) -> int | float:
    """Values below 1 (or containing a dot/exponent) are fractions of M;
    whole numbers are absolute rewiring counts."""
    try:
        if any(ch in text for ch in ".eE"):
            value = float(text)
            if not 0.0 < value <= 1.0:
                raise _InputError(f"fractional budget must lie in (0, 1], got {text}")
            return value
        return int(text)
    except ValueError:
        raise _InputError(f"invalid budget {text!r}") from None


def _parse_sweep(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise _InputError("budget sweep must be start:stop:step")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise _InputError(f"invalid budget sweep {text!r}") from None
    if step <= 0 or start <= 0 or stop < start:
        raise _InputError("budget sweep requires 0 < start <= stop and step > 0")
    out = []
    i = 0
    while True:
        value = round(start + i * step, 12)
        if value > stop + 1e-12:
            break
        out.append(value)
        i += 1
    return out


def _parse_seeds(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise _InputError(f"invalid seed list {text!r}") from None


def _build_parser() -> _Parser:
    parser = _Parser(prog="rewire", description="Degree-preserving rewiring toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a rewiring experiment on an edge-list file")
    run.add_argument("--input", required=True, help="edge-list file (two labels per line)")
    run.add_argument(
        "--method", required=True, choices=sorted(STRATEGIES) + ["exact"], help="rewiring method"
    )
    run.add_argument("--budget", help="rewiring count (int) or fraction of M (0<f<=1)")
    run.add_argument("--budget-sweep", help="fraction sweep start:stop:step, e.g. 0.005:0.05:0.005")
    run.add_argument("--seed", type=int, default=0, help="seed for stochastic methods")
    run.add_argument("--seeds", help="comma-separated seed list (overrides --seed)")
    run.add_argument(
        "--metrics",
        default="assortativity,spearman",
        help="comma-separated metric names: " + ",".join(METRIC_NAMES),
    )
    run.add_argument("--top-fraction", type=float, default=0.05, help="top-ranked node fraction for SC")
    run.add_argument("--output", required=True, help="result CSV path")
    run.add_argument("--dump-ep", action="store_true", help="also write the candidate set next to the output")
    run.add_argument("--dump-plan", help="write the applied plan (first cell) to this CSV path")
    run.add_argument("--figures", help="directory for rendered figures")
    run.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET, help="exact-search node cap")
    run.add_argument("-v", "--verbose", action="store_true")

    ratio = sub.add_parser("ratio", help="GA versus exact optimum on random model graphs")
    ratio.add_argument("--model", required=True, choices=["er", "ws", "ba"])
    ratio.add_argument("--n", type=int, required=True, help="node count")
    ratio.add_argument("--edges", type=int, help="edge count (er model)")
    ratio.add_argument("--k", type=int, required=True, help="rewiring budget per trial")
    ratio.add_argument("--trials", type=int, required=True)
    ratio.add_argument("--seed", type=int, default=0)
    ratio.add_argument("--ring-degree", type=int, default=4, help="ws ring lattice degree")
    ratio.add_argument("--rewire-prob", type=float, default=0.1, help="ws rewiring probability")
    ratio.add_argument("--attachment", type=int, default=2, help="ba edges per new node")
    ratio.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    ratio.add_argument("-v", "--verbose", action="store_true")
    return parser


def _dump_ep(input_path: str, output_path: str) -> Path:
    with open(input_path, encoding="utf-8") as fh:
        g = parse_edge_list(fh)
    target = Path(output_path).with_suffix(".ep.csv")
    with open(target, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["source_a", "source_b", "created_a", "created_b", "value"])
        for c in enumerate_ep(g):
            writer.writerow(
                [f"{c.source_a[0]}-{c.source_a[1]}", f"{c.source_b[0]}-{c.source_b[1]}",
                 f"{c.created_a[0]}-{c.created_a[1]}", f"{c.created_b[0]}-{c.created_b[1]}", c.value]
            )
    return target


def _cmd_run(args: argparse.Namespace) -> int:
    if args.budget is None and args.budget_sweep is None:
        raise _InputError("one of --budget or --budget-sweep is required")
    seeds = _parse_seeds(args.seeds) if args.seeds else [args.seed]
    metrics = tuple(tok.strip() for tok in args.metrics.split(",") if tok.strip())
    try:
        spec = ExperimentSpec(
            input_path=args.input,
            method=args.method,
            budget=_parse_budget(args.budget) if args.budget else None,
            budget_sweep=_parse_sweep(args.budget_sweep) if args.budget_sweep else None,
            seeds=seeds,
            metrics=metrics,
            top_fraction=args.top_fraction,
            output_path=args.output,
            node_budget=args.node_budget,
        )
    except ValueError as err:
        raise _InputError(str(err)) from None

    with open(args.input, encoding="utf-8") as fh:
        graph = parse_edge_list(fh)
    report = graph.parse_report
    logger.info(
        "loaded %s: N=%d M=%d components=%d duplicates=%d",
        args.input,
        graph.node_count,
        len(graph.edges),
        len(connected_components(graph)),
        report.duplicates if report else 0,
    )

    rows = run_experiment(spec, graph=graph)
    print(f"wrote {len(rows)} rows to {args.output}")
    if args.method == "exact":
        for row in rows:
            status = "proven optimal" if row.proven_optimal else "best effort (node budget hit)"
            print(f"exact k={row.budget}: delta_s={row.delta_s}, {status}")

    if args.dump_ep:
        target = _dump_ep(args.input, args.output)
        print(f"wrote candidate set to {target}")
    if args.dump_plan:
        cfg = StrategyConfig(budget=rows[0].budget, seed=rows[0].seed)
        if args.method == "exact":
            from .exact import solve_exact

            plan = solve_exact(graph, rows[0].budget, args.node_budget).plan
        else:
            plan = run_strategy(args.method, graph, cfg)
        with open(args.dump_plan, "w", newline="") as fh:
            write_plan_csv(graph, plan, fh)
        print(f"wrote plan to {args.dump_plan}")
    if args.figures:
        from .figures import render_figures

        written = render_figures(rows, args.figures)
        for path in written:
            print(f"wrote figure {path}")
    return 0


def _cmd_ratio(args: argparse.Namespace) -> int:
    if args.model == "er" and args.edges is None:
        raise _InputError("--edges is required for the er model")
    summary = run_ratio_study(
        model=args.model,
        n=args.n,
        k=args.k,
        trials=args.trials,
        seed=args.seed,
        edges=args.edges,
        ws_ring=args.ring_degree,
        ws_prob=args.rewire_prob,
        ba_attachment=args.attachment,
        node_budget=args.node_budget,
    )
    print(f"model={summary.model} n={summary.n} k={summary.k} params={summary.params}")
    print(
        f"trials={summary.trials} valid={summary.valid_trials} "
        f"excluded_nonproven={summary.excluded_nonproven} excluded_zero_optimum={summary.excluded_zero_optimum}"
    )
    if summary.valid_trials:
        print(
            f"opt_rate={summary.opt_rate:.4f} min_ratio={summary.min_ratio:.4f} "
            f"mean_ratio={summary.mean_ratio:.4f}"
        )
    else:
        print("no valid trials; ratios undefined")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_ratio(args)
    except (_InputError, GraphError, FileNotFoundError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
