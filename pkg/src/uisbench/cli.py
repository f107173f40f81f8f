"""Command-line entry points for the workbench."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from .agents import AgentProfile, NoiseSpec, tune_iteratively, tune_search
from .config import cell_key, load_domain_config
from .domain import CELLS, bayes_optimal_accuracy, sample_cases
from .engines import ENGINE_KINDS, system_to_dict
from .experiment import ReplicationConfig, ReplicationReport, report, run_replication

FORMATS = click.Choice(["text", "csv", "json"])


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
        click.echo(f"wrote {out}")
    else:
        click.echo(text)


@click.group()
def main():
    """Workbench for comparing uncertain inference systems."""


@main.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="Domain config JSON (defaults embedded).")
@click.option("--n", "n_samples", type=int, default=100_000, show_default=True,
              help="Monte Carlo sample count.")
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
@click.option("--out", type=click.Path(), default=None)
def simulate(seed, config_path, n_samples, fmt, out):
    """Sample the domain: empirical cell frequencies and the oracle accuracy."""
    table, readings = load_domain_config(config_path)
    rng = np.random.default_rng(seed)
    cases = sample_cases(table, readings, n_samples, rng)
    counts = {cell_key(c): 0 for c in CELLS}
    for case in cases:
        counts[cell_key(case.cell)] += 1
    empirical = {k: v / n_samples for k, v in counts.items()}
    oracle = bayes_optimal_accuracy(table, readings, n_samples,
                                    np.random.default_rng(seed + 1))
    payload = {
        "seed": seed,
        "n": n_samples,
        "configured": {cell_key(c): table.joint[c] for c in CELLS},
        "empirical": empirical,
        "bayes_optimal_accuracy": oracle,
    }
    if fmt == "json":
        _write(json.dumps(payload, indent=2, sort_keys=True), out)
    elif fmt == "csv":
        lines = ["cell,configured,empirical"]
        lines += [f"{k},{payload['configured'][k]},{empirical[k]}" for k in sorted(empirical)]
        lines.append(f"bayes_optimal_accuracy,{oracle},")
        _write("\n".join(lines) + "\n", out)
    else:
        lines = [f"{'cell':<6}{'configured':>12}{'empirical':>12}"]
        lines += [f"{k:<6}{payload['configured'][k]:>12.4f}{empirical[k]:>12.4f}"
                  for k in sorted(empirical)]
        lines.append(f"Bayes-optimal accuracy ({n_samples} samples): {oracle:.4f}")
        _write("\n".join(lines), out)


@main.command()
@click.option("--engine", type=click.Choice(ENGINE_KINDS), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--sigma", type=float, default=0.0, show_default=True,
              help="Estimation-noise standard deviation.")
@click.option("--mode", type=click.Choice(["search", "iterative"]), default="search",
              show_default=True)
@click.option("--validation-n", type=int, default=2000, show_default=True)
@click.option("--max-trials", type=int, default=200, show_default=True)
@click.option("--vocabulary", type=str, default="simple,and", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
@click.option("--out", type=click.Path(), default=None)
def tune(engine, seed, sigma, mode, validation_n, max_trials, vocabulary,
         config_path, fmt, out):
    """Build and tune one agent's system; print the tuned parameters."""
    table, readings = load_domain_config(config_path)
    profile = AgentProfile(engine, NoiseSpec(sigma, seed),
                           tuple(v.strip() for v in vocabulary.split(",") if v.strip()))
    rng = np.random.default_rng(seed)
    if mode == "search":
        result = tune_search(profile, table, readings, validation_n, rng)
    else:
        result = tune_iteratively(profile, table, readings, max_trials, rng)
    payload = {
        "engine": engine, "mode": mode, "seed": seed, "sigma": sigma,
        "trials_used": result.trials_used, "satisfied": result.satisfied,
        "final_accuracy": result.final_accuracy,
        "system": system_to_dict(result.system),
    }
    if fmt == "json":
        _write(json.dumps(payload, indent=2, sort_keys=True), out)
    elif fmt == "csv":
        _write("engine,mode,trials_used,satisfied,final_accuracy\n"
               f"{engine},{mode},{result.trials_used},{result.satisfied},"
               f"{result.final_accuracy}\n", out)
    else:
        lines = [f"engine: {engine} (mode {mode})",
                 f"trials used: {result.trials_used}",
                 f"satisfied: {result.satisfied}",
                 f"final accuracy: {result.final_accuracy:.4f}",
                 "system:",
                 json.dumps(system_to_dict(result.system), indent=2, sort_keys=True)]
        _write("\n".join(lines), out)


@main.command()
@click.option("--seed", type=int, default=2024, show_default=True)
@click.option("--agents", "agents_per_uis", type=int, default=10, show_default=True)
@click.option("--trials", "test_trials", type=int, default=30, show_default=True)
@click.option("--sigma", type=float, default=0.15, show_default=True)
@click.option("--vocabulary", type=str, default="simple,and", show_default=True)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
@click.option("--out", type=click.Path(), default=None,
              help="Output file; with --format json the report can be re-rendered later.")
def replicate(seed, agents_per_uis, test_trials, sigma, vocabulary, config_path, fmt, out):
    """Run the full replication (agents x engines x test trials) and report."""
    table, readings = load_domain_config(config_path)
    config = ReplicationConfig(
        agents_per_uis=agents_per_uis, test_trials=test_trials, noise_sigma=sigma,
        master_seed=seed,
        vocabulary=tuple(v.strip() for v in vocabulary.split(",") if v.strip()))
    results = run_replication(config, table, readings)
    doc = report(results, config, table, readings)
    if fmt == "json":
        _write(doc.to_json(), out)
    elif fmt == "csv":
        _write(doc.to_csv(), out)
    else:
        _write(doc.render_text(), out)


@main.command("report")
@click.option("--in", "in_path", type=click.Path(exists=True), required=True,
              help="A JSON report produced by 'replicate --format json'.")
@click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
@click.option("--out", type=click.Path(), default=None)
def rerender(in_path, fmt, out):
    """Re-render a saved replication report."""
    from .anova import AnovaRow, AnovaTable
    from .experiment import SubjectResult

    data = json.loads(Path(in_path).read_text())
    subjects = tuple(
        SubjectResult(engine_kind=s["engine"], subject=s["subject"],
                      correct=tuple(bool(x) for x in s["correct"]),
                      evidence_types=tuple(s["evidence_types"]),
                      trials_to_tune=s["trials_to_tune"], satisfied=s["satisfied"],
                      mixed_estimates=tuple(s["mixed_estimates"]))
        for s in data["subjects"])
    anova = None
    if data.get("anova"):
        anova = AnovaTable(tuple(
            AnovaRow(r["source"], r["df"], r["ss"], r["ms"], r["f"])
            for r in data["anova"]["rows"]))
    doc = ReplicationReport(
        config=data["metadata"]["config"], trials_to_tune=data["trials_to_tune"],
        accuracy=data["accuracy"], overall_accuracy=data["overall_accuracy"],
        mixed_parameters=data["mixed_parameters"], anova=anova, subjects=subjects)
    if fmt == "json":
        _write(doc.to_json(), out)
    elif fmt == "csv":
        _write(doc.to_csv(), out)
    else:
        _write(doc.render_text(), out)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--data-dir", type=click.Path(), default="sessions", show_default=True,
              envvar="UISBENCH_DATA_DIR")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--ui-dir", type=click.Path(), default=None, envvar="UISBENCH_UI_DIR",
              help="Static directory with the built participant UI.")
def serve(host, port, data_dir, config_path, ui_dir):
    """Serve the participant-protocol HTTP API (and the UI when provided)."""
    import uvicorn

    from .service import create_app

    app = create_app(data_dir=data_dir, config_path=config_path, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
