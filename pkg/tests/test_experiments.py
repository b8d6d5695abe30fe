import csv
import io

import pytest

from rewire import (
    ExperimentSpec,
    Graph,
    run_experiment,
    run_ratio_study,
    write_edge_list,
)
from rewire.cli import main
from rewire.experiments import CSV_COLUMNS, SCHEMA_LINE
from rewire.figures import render_figures


@pytest.fixture
def g8_file(tmp_path, g8):
    path = tmp_path / "g8.txt"
    path.write_text(write_edge_list(g8))
    return path


def read_rows(path):
    lines = path.read_text().splitlines()
    assert lines[0] == SCHEMA_LINE
    reader = csv.DictReader(io.StringIO("\n".join(lines[1:])))
    return list(reader)


def test_run_experiment_fixture_row(g8_file, tmp_path):
    out = tmp_path / "out.csv"
    spec = ExperimentSpec(
        input_path=g8_file,
        method="ga",
        budget=2,
        metrics=("assortativity",),
        output_path=out,
    )
    rows = run_experiment(spec)
    assert len(rows) == 1
    row = rows[0]
    assert row.r_before == pytest.approx(-29 / 34, abs=1e-12)
    assert row.delta_s == 5
    assert row.steps_applied == 2
    assert row.r_after == pytest.approx(row.r_before + row.delta_r, abs=1e-12)
    assert row.wall_time > 0
    on_disk = read_rows(out)
    assert on_disk[0]["delta_s"] == "5"
    assert list(on_disk[0].keys()) == list(CSV_COLUMNS)


def test_csv_rerun_byte_identical(g8_file, tmp_path):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    for out in (out1, out2):
        spec = ExperimentSpec(
            input_path=g8_file,
            method="pea",
            budget_sweep=[0.1, 0.2, 0.3],
            seeds=[1, 2, 3],
            metrics=("assortativity", "spearman"),
            output_path=out,
        )
        run_experiment(spec)
    assert out1.read_bytes() == out2.read_bytes()


def test_parallel_cells_keep_csv_identical(g8_file, tmp_path, monkeypatch):
    outs = []
    for threads, name in (("1", "serial.csv"), ("4", "parallel.csv")):
        monkeypatch.setenv("REWIRE_THREADS", threads)
        out = tmp_path / name
        spec = ExperimentSpec(
            input_path=g8_file,
            method="ra",
            budget_sweep=[0.15, 0.3, 0.45],
            seeds=[1, 2, 3],
            metrics=("assortativity",),
            output_path=out,
        )
        run_experiment(spec)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_sweep_monotone_delta_s_for_ga(g8_file, tmp_path):
    spec = ExperimentSpec(
        input_path=g8_file,
        method="ga",
        budget_sweep=[0.15, 0.3, 0.45, 1.0],
        metrics=("assortativity",),
    )
    rows = run_experiment(spec)
    deltas = [r.delta_s for r in rows]
    assert deltas == sorted(deltas)


def test_undefined_metrics_reported_not_raised(tmp_path):
    ring = Graph(6, [(i, (i + 1) % 6) for i in range(6)])
    path = tmp_path / "c6.txt"
    path.write_text(write_edge_list(ring))
    spec = ExperimentSpec(
        input_path=path,
        method="ra",
        budget=1,
        seeds=[3],
        metrics=("assortativity", "spearman"),
    )
    rows = run_experiment(spec)
    assert rows[0].r_before is None
    assert rows[0].r_after is None
    assert "assortativity" in rows[0].reason


def test_exact_method_in_harness(g8_file):
    spec = ExperimentSpec(input_path=g8_file, method="exact", budget=2, metrics=("assortativity",))
    rows = run_experiment(spec)
    assert rows[0].delta_s == 5
    assert rows[0].proven_optimal is True


def test_centrality_sc_columns(g8_file):
    spec = ExperimentSpec(
        input_path=g8_file,
        method="ga",
        budget=1,
        metrics=("assortativity", "kshell", "closeness"),
        top_fraction=1.0,
    )
    rows = run_experiment(spec)
    assert rows[0].closeness_sc is not None
    # rewiring the fixture leaves every node in the 1-shell: constant vector
    assert rows[0].kshell_sc is None
    assert "kshell" in rows[0].reason


def test_ratio_study_smoke():
    summary = run_ratio_study("er", n=20, k=2, trials=10, seed=12, edges=30)
    assert summary.valid_trials + summary.excluded_nonproven + summary.excluded_zero_optimum == 10
    if summary.valid_trials:
        assert 0 < summary.min_ratio <= 1.0
        assert summary.min_ratio <= summary.mean_ratio <= 1.0


def test_ratio_study_zero_budget_reports_no_valid_trials():
    summary = run_ratio_study("ba", n=12, k=0, trials=4, seed=1)
    assert summary.valid_trials == 0
    assert summary.mean_ratio is None


def test_ratio_study_validation():
    with pytest.raises(ValueError):
        run_ratio_study("er", n=10, k=1, trials=2, seed=0)  # missing edges
    with pytest.raises(ValueError):
        run_ratio_study("nope", n=10, k=1, trials=2, seed=0)


def test_cli_run_end_to_end(g8_file, tmp_path, capsys):
    out = tmp_path / "cli.csv"
    code = main(
        [
            "run",
            "--input", str(g8_file),
            "--method", "ga",
            "--budget", "2",
            "--metrics", "assortativity,spearman",
            "--output", str(out),
            "--dump-ep",
        ]
    )
    assert code == 0
    assert out.exists()
    ep_path = out.with_suffix(".ep.csv")
    assert ep_path.exists()
    with open(ep_path) as fh:
        ep_rows = list(csv.DictReader(fh))
    assert len(ep_rows) == 12
    assert ep_rows[0]["value"] == "4"


def test_cli_budget_sweep_with_figures_and_plan(g8_file, tmp_path):
    out = tmp_path / "sweep.csv"
    figs = tmp_path / "figs"
    plan = tmp_path / "plan.csv"
    code = main(
        [
            "run",
            "--input", str(g8_file),
            "--method", "ga",
            "--budget-sweep", "0.15:0.45:0.15",
            "--metrics", "assortativity",
            "--output", str(out),
            "--figures", str(figs),
            "--dump-plan", str(plan),
        ]
    )
    assert code == 0
    pngs = list(figs.glob("*.png"))
    assert pngs and all(p.stat().st_size > 0 for p in pngs)
    assert plan.exists()


def test_cli_ratio_subcommand(capsys):
    code = main(["ratio", "--model", "ba", "--n", "14", "--k", "2", "--trials", "3", "--seed", "4"])
    assert code == 0
    text = capsys.readouterr().out
    assert "model=ba" in text
    assert "attachment" in text


def test_cli_exit_codes(tmp_path):
    missing = tmp_path / "nope.txt"
    assert main(["run", "--input", str(missing), "--method", "ga", "--budget", "1", "--output", str(tmp_path / "o.csv")]) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 3\n")
    assert main(["run", "--input", str(bad), "--method", "ga", "--budget", "1", "--output", str(tmp_path / "o.csv")]) == 1
    assert main(["run", "--input", str(bad), "--method", "bogus", "--budget", "1", "--output", "o.csv"]) == 1
    assert main(["ratio", "--model", "er", "--n", "10", "--k", "1", "--trials", "1"]) == 1  # missing --edges


def test_cli_exact_reports_proof(g8_file, tmp_path, capsys):
    out = tmp_path / "exact.csv"
    code = main(
        ["run", "--input", str(g8_file), "--method", "exact", "--budget", "2",
         "--metrics", "assortativity", "--output", str(out), "--node-budget", "100000"]
    )
    assert code == 0
    assert "proven optimal" in capsys.readouterr().out


def test_render_figures_handles_seed_averaging(g8_file, tmp_path):
    spec = ExperimentSpec(
        input_path=g8_file,
        method="ra",
        budget_sweep=[0.15, 0.3],
        seeds=[1, 2, 3, 4],
        metrics=("assortativity",),
    )
    rows = run_experiment(spec)
    written = render_figures(rows, tmp_path / "figs")
    assert any("assortativity" in str(p) for p in written)
