"""Experiment harness: strategy sweeps, exact-ratio studies, CSV persistence.

Result rows mirror the sweep axes of the evaluation: assortativity and degree
rank correlation before/after, spectral robustness before/after, and per-
centrality rank stability. Re-running an identical spec yields byte-identical
CSV output; wall-clock timings are kept on the in-memory rows only.
"""

from __future__ import annotations

import csv
import logging
import os
import random
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .errors import UndefinedMetricError
from .exact import DEFAULT_NODE_BUDGET, solve_exact
from .graph import Graph, parse_edge_list
from .metrics import assortativity, s_metric, spearman_degree_correlation
from .models import ba_graph, er_graph, ws_graph
from .robustness import CENTRALITY_KINDS, centrality, centrality_sc, natural_connectivity, spectral_radius
from .strategies import STRATEGIES, StrategyConfig, resolve_budget, run_strategy

logger = logging.getLogger("rewire")

METRIC_NAMES = (
    "assortativity",
    "spearman",
    "spectral_radius",
    "natural_connectivity",
    "betweenness",
    "closeness",
    "eigenvector",
    "kshell",
)

DETERMINISTIC_METHODS = ("ga", "eda", "ta", "exact")

SCHEMA_LINE = "# schema=rewire-results-v1"

CSV_COLUMNS = (
    "dataset",
    "method",
    "budget_fraction",
    "budget",
    "seed",
    "steps_applied",
    "truncated",
    "delta_s",
    "r_before",
    "r_after",
    "delta_r",
    "spearman_before",
    "spearman_after",
    "s_metric_before",
    "s_metric_after",
    "spectral_radius_before",
    "spectral_radius_after",
    "natural_connectivity_before",
    "natural_connectivity_after",
    "betweenness_sc",
    "closeness_sc",
    "eigenvector_sc",
    "kshell_sc",
    "proven_optimal",
    "reason",
)


@dataclass
class ExperimentSpec:
    input_path: str | Path
    method: str
    budget: int | float | None = None
    budget_sweep: list[float] | None = None
    seeds: list[int] = field(default_factory=lambda: [0])
    metrics: tuple[str, ...] = ("assortativity", "spearman")
    top_fraction: float = 0.05
    output_path: str | Path | None = None
    node_budget: int = DEFAULT_NODE_BUDGET

    def __post_init__(self) -> None:
        self.metrics = tuple(self.metrics)
        for m in self.metrics:
            if m not in METRIC_NAMES:
                raise ValueError(f"unknown metric {m!r}; choose from {METRIC_NAMES}")
        if self.method != "exact" and self.method not in STRATEGIES:
            raise ValueError(f"unknown method {self.method!r}")
        if self.budget is None and not self.budget_sweep:
            raise ValueError("either budget or budget_sweep is required")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if not 0.0 < self.top_fraction <= 1.0:
            raise ValueError("top_fraction must lie in (0, 1]")


@dataclass
class ResultRow:
    dataset: str
    method: str
    budget_fraction: float
    budget: int
    seed: int
    steps_applied: int
    truncated: bool
    delta_s: int
    r_before: float | None = None
    r_after: float | None = None
    delta_r: float | None = None
    spearman_before: float | None = None
    spearman_after: float | None = None
    s_metric_before: int = 0
    s_metric_after: int = 0
    spectral_radius_before: float | None = None
    spectral_radius_after: float | None = None
    natural_connectivity_before: float | None = None
    natural_connectivity_after: float | None = None
    betweenness_sc: float | None = None
    closeness_sc: float | None = None
    eigenvector_sc: float | None = None
    kshell_sc: float | None = None
    proven_optimal: bool | None = None
    reason: str = ""
    wall_time: float = 0.0


def _fmt(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_results_csv(rows: list[ResultRow], path: str | Path) -> None:
    """Atomically write rows as CSV (schema line, header, one row per cell)."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(SCHEMA_LINE + "\n")
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow([_fmt(getattr(row, col)) for col in CSV_COLUMNS])
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _thread_count() -> int:
    raw = os.environ.get("REWIRE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _pmap(fn: Callable, items: list) -> list:
    workers = _thread_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


class _Undefined:
    def __init__(self) -> None:
        self.reasons: list[str] = []

    def record(self, name: str, err: Exception) -> None:
        self.reasons.append(f"{name}: {err}")


def _try(metric: str, fn: Callable[[], float], undef: _Undefined) -> float | None:
    try:
        return fn()
    except UndefinedMetricError as err:
        undef.record(metric, err)
        return None


def run_experiment(spec: ExperimentSpec, graph: Graph | None = None) -> list[ResultRow]:
    """Run every (budget x seed) cell of the spec and return result rows.

    Rows are written to spec.output_path when set. Undefined-metric
    conditions leave the affected cells empty and are noted in the row's
    reason column rather than aborting the sweep.
    """
    if graph is None:
        with open(spec.input_path, encoding="utf-8") as fh:
            graph = parse_edge_list(fh)
    dataset = Path(str(spec.input_path)).stem
    m = len(graph.edges)
    budgets = list(spec.budget_sweep) if spec.budget_sweep else [spec.budget]

    base_undef = _Undefined()
    r_before = _try("assortativity", lambda: assortativity(graph), base_undef)
    sp_before = _try("spearman", lambda: spearman_degree_correlation(graph), base_undef)
    s_before = s_metric(graph)
    sr_before = (
        _try("spectral_radius", lambda: spectral_radius(graph), base_undef)
        if "spectral_radius" in spec.metrics
        else None
    )
    nc_before = (
        _try("natural_connectivity", lambda: natural_connectivity(graph), base_undef)
        if "natural_connectivity" in spec.metrics
        else None
    )
    cent_before = {}
    for kind in CENTRALITY_KINDS:
        if kind in spec.metrics:
            try:
                cent_before[kind] = centrality(graph, kind)
            except UndefinedMetricError as err:
                base_undef.record(kind, err)
                cent_before[kind] = None

    seeds = spec.seeds if spec.method not in DETERMINISTIC_METHODS else [spec.seeds[0]]
    cells = []
    for budget in budgets:
        if isinstance(budget, float) and not 0.0 < budget <= 1.0:
            raise ValueError(f"budget fraction {budget} outside (0, 1]")
        k = resolve_budget(budget, m)
        fraction = k / m if m else 0.0
        logger.info("budget %s resolved to k=%d against M=%d", budget, k, m)
        for seed in seeds:
            cells.append((k, fraction, seed))

    def run_cell(cell: tuple[int, float, int]) -> ResultRow:
        k, fraction, seed = cell
        start = time.perf_counter()
        undef = _Undefined()
        undef.reasons.extend(base_undef.reasons)
        proven: bool | None = None
        if spec.method == "exact":
            sol = solve_exact(graph, k, spec.node_budget)
            plan = sol.plan
            proven = sol.proven_optimal
        else:
            plan = run_strategy(spec.method, graph, StrategyConfig(budget=k, seed=seed))
        final = plan.final_graph
        row = ResultRow(
            dataset=dataset,
            method=spec.method,
            budget_fraction=fraction,
            budget=k,
            seed=seed,
            steps_applied=len(plan.steps),
            truncated=plan.truncated,
            delta_s=plan.delta_s,
            r_before=r_before,
            r_after=_try("assortativity", lambda: assortativity(final), undef) if r_before is not None else None,
            delta_r=plan.delta_r,
            spearman_before=sp_before,
            spearman_after=_try("spearman", lambda: spearman_degree_correlation(final), undef)
            if sp_before is not None
            else None,
            s_metric_before=s_before,
            s_metric_after=s_metric(final),
            proven_optimal=proven,
        )
        if "spectral_radius" in spec.metrics:
            row.spectral_radius_before = sr_before
            row.spectral_radius_after = _try("spectral_radius", lambda: spectral_radius(final), undef)
        if "natural_connectivity" in spec.metrics:
            row.natural_connectivity_before = nc_before
            row.natural_connectivity_after = _try(
                "natural_connectivity", lambda: natural_connectivity(final), undef
            )
        for kind in CENTRALITY_KINDS:
            if kind not in spec.metrics:
                continue
            before = cent_before.get(kind)
            if before is None:
                continue
            try:
                after = centrality(final, kind)
                setattr(row, f"{kind}_sc", centrality_sc(before, after, spec.top_fraction))
            except UndefinedMetricError as err:
                undef.record(kind, err)
        row.reason = "; ".join(dict.fromkeys(undef.reasons))
        row.wall_time = time.perf_counter() - start
        return row

    rows = _pmap(run_cell, cells)
    if spec.output_path is not None:
        write_results_csv(rows, spec.output_path)
    return rows


@dataclass
class RatioSummary:
    """Aggregate GA-versus-optimum quality over repeated random instances."""

    model: str
    n: int
    k: int
    trials: int
    valid_trials: int
    excluded_nonproven: int
    excluded_zero_optimum: int
    exact_hits: int
    opt_rate: float | None
    min_ratio: float | None
    mean_ratio: float | None
    params: dict[str, object] = field(default_factory=dict)


def run_ratio_study(
    model: str,
    n: int,
    k: int,
    trials: int,
    seed: int = 0,
    edges: int | None = None,
    ws_ring: int = 4,
    ws_prob: float = 0.1,
    ba_attachment: int = 2,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> RatioSummary:
    """Generate `trials` random graphs, compare GA against the exact optimum.

    Trials where the search exhausts its node budget, or where the optimum is
    zero (ratio undefined), are excluded from the aggregates and counted.
    """
    model = model.lower()
    rng = random.Random(seed)
    if model == "er":
        if edges is None:
            raise ValueError("er model requires an edge count")
        make, params = lambda: er_graph(n, edges, rng), {"edges": edges}
    elif model == "ws":
        make, params = (
            lambda: ws_graph(n, ws_ring, ws_prob, rng),
            {"ring_degree": ws_ring, "rewire_prob": ws_prob},
        )
    elif model == "ba":
        make, params = lambda: ba_graph(n, ba_attachment, rng), {"attachment": ba_attachment}
    else:
        raise ValueError(f"unknown model {model!r}; choose er, ws, or ba")

    graphs = [make() for _ in range(trials)]

    def one(g: Graph) -> tuple[float | None, bool, bool]:
        sol = solve_exact(g, k, node_budget)
        if not sol.proven_optimal:
            return None, True, False
        if sol.optimal_delta_s == 0:
            return None, False, True
        plan = run_strategy("ga", g, StrategyConfig(budget=k))
        return plan.delta_s / sol.optimal_delta_s, False, False

    results = _pmap(one, graphs)
    ratios = [r for r, _, _ in results if r is not None]
    nonproven = sum(1 for _, bad, _ in results if bad)
    zero_opt = sum(1 for _, _, z in results if z)
    hits = sum(1 for r in ratios if r >= 1.0)
    return RatioSummary(
        model=model,
        n=n,
        k=k,
        trials=trials,
        valid_trials=len(ratios),
        excluded_nonproven=nonproven,
        excluded_zero_optimum=zero_opt,
        exact_hits=hits,
        opt_rate=hits / len(ratios) if ratios else None,
        min_ratio=min(ratios) if ratios else None,
        mean_ratio=sum(ratios) / len(ratios) if ratios else None,
        params=params,
    )
