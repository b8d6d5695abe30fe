"""Render sweep results as figures alongside the CSV output."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

from .experiments import ResultRow


def _series(rows: list[ResultRow], getter) -> dict[str, tuple[list[float], list[float]]]:
    # mean over seeds per (method, budget fraction)
    buckets: dict[tuple[str, float], list[float]] = defaultdict(list)
    for row in rows:
        value = getter(row)
        if value is not None:
            buckets[(row.method, row.budget_fraction)].append(value)
    out: dict[str, tuple[list[float], list[float]]] = {}
    methods = sorted({m for m, _ in buckets})
    for method in methods:
        pts = sorted((f, sum(v) / len(v)) for (m, f), v in buckets.items() if m == method)
        if pts:
            out[method] = ([p[0] for p in pts], [p[1] for p in pts])
    return out


def _change_rate(before: float | None, after: float | None) -> float | None:
    if before is None or after is None or before == 0:
        return None
    return (after - before) / before


def render_figures(rows: list[ResultRow], out_dir: str | Path, stem: str | None = None) -> list[Path]:
    """Write one PNG per available metric family; returns the written paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if stem is None:
        stem = rows[0].dataset if rows else "results"
    written: list[Path] = []

    def plot_lines(name: str, ylabel: str, series: dict, baseline: float | None = None) -> None:
        if not series:
            return
        fig, ax = plt.subplots(figsize=(5.5, 4))
        for method, (xs, ys) in series.items():
            ax.plot(xs, ys, marker="o", label=method)
        if baseline is not None:
            ax.axhline(baseline, color="gray", linestyle="--", linewidth=1, label="original")
        ax.set_xlabel("rewired fraction of edges")
        ax.set_ylabel(ylabel)
        ax.set_title(stem)
        ax.legend()
        fig.tight_layout()
        path = out_dir / f"{stem}_{name}.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)

    plot_lines(
        "assortativity",
        "assortativity coefficient",
        _series(rows, lambda r: r.r_after),
        baseline=next((r.r_before for r in rows if r.r_before is not None), None),
    )
    plot_lines(
        "spearman",
        "degree rank correlation",
        _series(rows, lambda r: r.spearman_after),
        baseline=next((r.spearman_before for r in rows if r.spearman_before is not None), None),
    )
    plot_lines(
        "spectral_radius",
        "spectral radius change rate",
        _series(rows, lambda r: _change_rate(r.spectral_radius_before, r.spectral_radius_after)),
    )
    plot_lines(
        "natural_connectivity",
        "natural connectivity change rate",
        _series(rows, lambda r: _change_rate(r.natural_connectivity_before, r.natural_connectivity_after)),
    )

    sc_fields = ("betweenness_sc", "closeness_sc", "eigenvector_sc", "kshell_sc")
    sc_series: dict[str, tuple[list[float], list[float]]] = {}
    for fld in sc_fields:
        per_method = _series(rows, lambda r, f=fld: getattr(r, f))
        for method, data in per_method.items():
            label = fld.removesuffix("_sc") if len(per_method) == 1 else f"{method} {fld.removesuffix('_sc')}"
            sc_series[label] = data
    plot_lines("centrality_sc", "centrality rank stability (SC)", sc_series)
    return written
