"""Thin command-line client over the core package."""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .errors import HearlinkError


def _data_dir(option_value: str | None) -> Path:
    """HEARLINK_DATA overrides --data when set."""
    env = os.environ.get("HEARLINK_DATA")
    if env:
        return Path(env)
    if option_value is None:
        raise click.UsageError("--data is required (or set HEARLINK_DATA)")
    return Path(option_value)


@click.group()
def main() -> None:
    """Local speech-indicator pipeline: stream, analyze, benchmark, serve."""


@main.command()
@click.option("--input", "source", required=True,
              help="WAV file path, or '-' for length-prefixed PCM16 chunks on stdin")
@click.option("--config", "config_path", default=None, type=click.Path())
@click.option("--data", "data", default=None, type=click.Path())
@click.option("--subject", default="local", show_default=True)
def run(source: str, config_path: str | None, data: str | None, subject: str) -> None:
    """Process a stream end-to-end into the data directory."""
    from .pipeline import run_stream

    try:
        report = run_stream(
            source if source == "-" else Path(source),
            _data_dir(data),
            config=config_path,
            subject_id=subject,
        )
    except (HearlinkError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(
        f"windows={report.windows} scored={report.scored} "
        f"warmup={report.warmup} low_quality={report.low_quality} "
        f"support_flags={report.support_flags}"
    )


@main.command()
@click.option("--data", "data", default=None, type=click.Path())
@click.option("--config", "config_path", default=None, type=click.Path())
def analyze(data: str | None, config_path: str | None) -> None:
    """Recompute indicator trajectories from stored contextual metrics."""
    from .pipeline import run_analysis

    try:
        report = run_analysis(_data_dir(data), config=config_path)
    except HearlinkError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(
        f"subjects={report.subjects} windows={report.windows_scored} "
        f"written={report.records_written} existing={report.records_existing} "
        f"corrupt_skipped={report.corrupt_lines_skipped}"
    )


@main.command()
@click.option("--input", "source", required=True, type=click.Path(exists=True))
@click.option("--runs", default=1, show_default=True)
@click.option("--config", "config_path", default=None, type=click.Path())
def bench(source: str, runs: int, config_path: str | None) -> None:
    """Benchmark per-window stage timings against the real-time budget."""
    from .pipeline import benchmark

    report = benchmark(Path(source), config=config_path, runs=runs)
    summary = report.summary()
    click.echo(json.dumps(summary, indent=2))
    if not summary["real_time"]:
        sys.exit(1)


@main.command()
@click.option("--profile", "profile_path", default=None, type=click.Path(),
              help="JSON profile sequence; defaults to the three-phase test stream")
@click.option("--seed", default=0, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def synth(profile_path: str | None, seed: int, out_path: str) -> None:
    """Render a deterministic synthetic speech-like WAV."""
    from .synth import load_profiles, synth_wav, three_phase_profiles

    try:
        profiles = (
            load_profiles(profile_path) if profile_path else three_phase_profiles()
        )
        Path(out_path).write_bytes(synth_wav(profiles, seed=seed))
    except HearlinkError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"wrote {out_path}")


@main.command()
@click.option("--manifest", "manifest_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--alpha", default=0.05, show_default=True)
@click.option("--method", default="pearson", show_default=True,
              type=click.Choice(["pearson", "spearman"]))
def stats(manifest_path: str, out_dir: str, alpha: float, method: str) -> None:
    """Run the association protocol over a subject manifest."""
    from .stats.protocol import ProtocolConfig, export_report, load_manifest, run_protocol

    try:
        rows = load_manifest(Path(manifest_path))
        report = run_protocol(rows, ProtocolConfig(alpha=alpha, method=method))
        paths = export_report(report, out_dir)
    except HearlinkError as exc:
        raise click.ClickException(str(exc)) from exc
    significant = sum(1 for r in report.results if r.significant)
    click.echo(
        f"tests={len(report.results)} significant={significant} "
        f"skipped={len(report.skipped)} exports={sorted(p.name for p in paths.values())}"
    )


@main.command()
@click.option("--data", "data", default=None, type=click.Path())
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--config", "config_path", default=None, type=click.Path())
@click.option("--ui", "ui_dir", default=None, type=click.Path(),
              help="Static dashboard bundle to mount at /app (e.g. frontend/dist)")
def serve(data: str | None, port: int, host: str, config_path: str | None,
          ui_dir: str | None) -> None:
    """Serve the dashboard API over the data directory."""
    import uvicorn

    from .service.app import create_app

    app = create_app(_data_dir(data), config=config_path, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
