"""Command-line interface: run, porosity, select-k, and synth subcommands.

Exit codes: 0 success, 1 input error (unreadable or malformed LAS),
2 configuration error, 3 numeric failure (degenerate data).
"""

from __future__ import annotations

import functools
import os

import click

from .cluster import KmeansConfig, kmeans_fit, silhouette_values
from .config import DEFAULT_FEATURE_CURVES, load_config, load_well_spec
from .errors import ConfigError, InputError, NumericError
from .las import CurveSelection, parse_las, write_las
from .pipeline import run_pipeline
from .porosity import PetroParams, porosity_profile
from .qc import QcConfig, run_qc
from .report import (
    atomic_write,
    emit_figures,
    write_elbow,
    write_porosity_depth,
    write_silhouette,
)
from .synth import generate_well, ground_truth_to_csv, inject_artifacts


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InputError as exc:
            _fail(str(exc), 1)
        except ConfigError as exc:
            _fail(str(exc), 2)
        except NumericError as exc:
            _fail(str(exc), 3)
    return wrapper


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    raise SystemExit(code)


def _parse_las_file(path: str):
    try:
        with open(path) as fh:
            return parse_las(fh)
    except OSError as exc:
        raise InputError(f"cannot read LAS file {path}: {exc}") from exc


def _parse_k_range(text: str) -> tuple[int, int]:
    parts = text.split(":")
    try:
        k_min, k_max = (int(p) for p in parts)
    except ValueError:
        raise ConfigError(f"k range must look like MIN:MAX, got {text!r}") from None
    if k_min > k_max:
        raise ConfigError(f"k range minimum {k_min} exceeds maximum {k_max}")
    return k_min, k_max


def _default_selection(cs) -> CurveSelection:
    """Feature curves when no config file names them: the standard six
    log suite where present, otherwise every curve in the file."""
    present = tuple(m for m in DEFAULT_FEATURE_CURVES if m in cs.curves)
    if len(present) >= 2:
        return CurveSelection(present)
    return CurveSelection(tuple(cs.mnemonics))


@click.group()
def main():
    """Log-only electrofacies workflow: QC, porosity, clustering, reports."""


@main.command()
@click.option("--las", "las_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Input LAS 2.0 file.")
@click.option("--config", "config_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Pipeline config file.")
@click.option("--out", "out_dir", required=True,
              type=click.Path(file_okay=False), help="Output directory.")
@click.option("--k", type=int, default=None,
              help="Fixed cluster count (skips the k scan).")
@click.option("--k-range", "k_range_text", default=None,
              help="Scan range MIN:MAX; the best mean-silhouette k is used.")
@click.option("--seed", type=int, default=None, help="Clustering seed override.")
@_guarded
def run(las_path, config_path, out_dir, k, k_range_text, seed):
    """Full pipeline: QC, porosity, clustering, facies labels, figures."""
    cfg = load_config(config_path)
    k_range = _parse_k_range(k_range_text) if k_range_text else None
    cs = _parse_las_file(las_path)
    result = run_pipeline(cs, cfg, k=k, k_range=k_range, seed=seed)
    paths = emit_figures(result, out_dir)
    if result.selection is not None:
        click.echo(
            f"selected k = {result.k_used} "
            f"(best mean silhouette over "
            f"{result.selection.k_values[0]}..{result.selection.k_values[-1]}; "
            f"elbow knee at k = {result.selection.knee_k})"
        )
    else:
        click.echo(f"using fixed k = {result.k_used}")
    click.echo(f"{result.audit.rows_out} of {result.audit.rows_in} rows retained by QC")
    click.echo(f"wrote {len(paths)} files to {out_dir}")


@main.command()
@click.option("--las", "las_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Input LAS 2.0 file.")
@click.option("--out", "out_dir", required=True,
              type=click.Path(file_okay=False), help="Output directory.")
@_guarded
def porosity(las_path, out_dir):
    """Density, neutron, and average porosity only."""
    cs = _parse_las_file(las_path)
    profile = porosity_profile(cs, PetroParams())
    paths = write_porosity_depth(profile, out_dir)
    click.echo(f"wrote {len(paths)} files to {out_dir}")


@main.command("select-k")
@click.option("--las", "las_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Input LAS 2.0 file.")
@click.option("--k-range", "k_range_text", default="2:8", show_default=True,
              help="Scan range MIN:MAX.")
@click.option("--out", "out_dir", required=True,
              type=click.Path(file_okay=False), help="Output directory.")
@_guarded
def select_k_command(las_path, k_range_text, out_dir):
    """Elbow and silhouette diagnostics over a k range."""
    from .cluster import select_k as scan_k

    k_min, k_max = _parse_k_range(k_range_text)
    if k_min < 2:
        raise ConfigError(f"k range must start at 2 or above, got {k_min}")
    cs = _parse_las_file(las_path)
    selection = _default_selection(cs)
    _, features, audit = run_qc(cs, selection, QcConfig())
    report = scan_k(features, k_min, k_max, KmeansConfig(k=k_min))
    paths = write_elbow(report, out_dir)
    model = kmeans_fit(features, KmeansConfig(k=report.best_silhouette_k))
    values = silhouette_values(features, model.assignments)
    paths += write_silhouette(model.assignments, values, features.depth_index, out_dir)
    click.echo(
        f"best mean silhouette at k = {report.best_silhouette_k}; "
        f"elbow knee at k = {report.knee_k}"
    )
    click.echo(f"{audit.rows_out} of {audit.rows_in} rows retained by QC")
    click.echo(f"wrote {len(paths)} files to {out_dir}")


@main.command()
@click.option("--spec", "spec_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Well spec config file ([synth] sections).")
@click.option("--out", "out_dir", required=True,
              type=click.Path(file_okay=False), help="Output directory.")
@_guarded
def synth(spec_path, out_dir):
    """Generate a synthetic well: LAS file plus ground-truth facies CSV."""
    spec, artifacts = load_well_spec(spec_path)
    cs, truth = generate_well(spec)
    manifest = None
    if artifacts and (artifacts["washout_fraction"] or artifacts["spike_fraction"]):
        cs, manifest = inject_artifacts(
            cs,
            artifacts["washout_fraction"],
            artifacts["spike_fraction"],
            artifacts["seed"],
        )
    os.makedirs(out_dir, exist_ok=True)
    paths = [
        atomic_write(os.path.join(out_dir, "synthetic.las"), write_las(cs)),
        atomic_write(os.path.join(out_dir, "ground_truth.csv"),
                     ground_truth_to_csv(cs.depth, truth)),
    ]
    if manifest is not None:
        lines = ["row,kind,curve"]
        for row in manifest.washout_rows:
            lines.append(f"{int(row)},washout,{manifest.caliper_mnemonic}")
        for row, curve in zip(manifest.spike_rows, manifest.spike_curves):
            lines.append(f"{int(row)},spike,{curve}")
        paths.append(atomic_write(
            os.path.join(out_dir, "artifact_manifest.csv"), "\n".join(lines) + "\n"
        ))
    click.echo(f"generated {cs.n_rows} samples across {len(spec.facies)} facies")
    click.echo(f"wrote {len(paths)} files to {out_dir}")


if __name__ == "__main__":
    main()
