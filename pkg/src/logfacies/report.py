"""Figure-equivalent data products: CSV tables and SVG plots.

Every figure is emitted twice: a CSV holding exactly the plotted numbers,
and an SVG rendered from them, so external plotters can reproduce any
figure from the CSV alone. Depth-indexed plots put depth on the vertical
axis increasing downward (well-log convention). File writes go through a
temp-file-then-rename step so readers never observe partial output.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .cluster import selection_report_to_csv, silhouette_table_to_csv
from .errors import ConfigError, DegenerateSpreadError
from .facies import (
    _run_lengths,
    facies_column_to_csv,
    facies_summary_to_csv,
    transition_matrix_to_csv,
)
from .porosity import porosity_profile_to_csv

_RC = {
    "figure.figsize": (7.0, 5.0),
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.fonttype": "none",
}


@dataclass(frozen=True)
class CrossplotSpec:
    """One crossplot: axis mnemonics plus kernel-density settings."""

    x_mnemonic: str
    y_mnemonic: str
    kde_grid: int = 128
    kde_bandwidth: str | tuple[float, float] = "scott"
    contour_mass: float = 0.75

    def __post_init__(self):
        if self.x_mnemonic == self.y_mnemonic:
            raise ConfigError("crossplot axes must use distinct curves")
        if self.kde_grid < 16:
            raise ConfigError(f"kde_grid must be >= 16, got {self.kde_grid}")
        if isinstance(self.kde_bandwidth, str):
            if self.kde_bandwidth != "scott":
                raise ConfigError(
                    f"kde_bandwidth must be 'scott' or a (hx, hy) pair, "
                    f"got {self.kde_bandwidth!r}"
                )
        else:
            hx, hy = self.kde_bandwidth
            if hx <= 0 or hy <= 0:
                raise ConfigError("explicit bandwidths must be > 0")
        if not (0.0 < self.contour_mass < 1.0):
            raise ConfigError(f"contour_mass must lie in (0, 1), got {self.contour_mass}")


DEFAULT_CROSSPLOTS = (
    CrossplotSpec("GR", "RHOZ"),
    CrossplotSpec("NPHI", "DT"),
    CrossplotSpec("PEFZ", "GR"),
)


@dataclass(frozen=True)
class KdeGrid:
    """Density evaluated on a regular grid; density[i, j] is at (x[i], y[j])."""

    x: np.ndarray
    y: np.ndarray
    density: np.ndarray
    bandwidth: tuple[float, float]


def kde2d(points, spec: CrossplotSpec) -> KdeGrid:
    """Gaussian product-kernel density of 2-D points on a regular grid.

    Bandwidths follow Scott's rule per axis, h = sigma_hat * n^(-1/6) with
    the sample (ddof=1) standard deviation, unless the spec fixes a pair.
    The grid spans the data range padded by 3 bandwidths, so the trapezoid
    mass comes out within 1% of 1.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("expected an (n, 2) array of points")
    n = len(pts)
    if n < 2:
        raise ValueError("kde2d requires at least 2 points")
    if not np.isfinite(pts).all():
        raise ValueError("kde2d requires finite points")
    x, y = pts[:, 0], pts[:, 1]
    if isinstance(spec.kde_bandwidth, str):
        factor = n ** (-1.0 / 6.0)
        sx, sy = x.std(ddof=1), y.std(ddof=1)
        if sx == 0 or sy == 0:
            raise DegenerateSpreadError(
                "kernel density needs non-degenerate spread on both axes"
            )
        hx, hy = sx * factor, sy * factor
    else:
        hx, hy = (float(b) for b in spec.kde_bandwidth)

    gx = np.linspace(x.min() - 3 * hx, x.max() + 3 * hx, spec.kde_grid)
    gy = np.linspace(y.min() - 3 * hy, y.max() + 3 * hy, spec.kde_grid)
    kx = np.exp(-0.5 * ((gx[:, None] - x[None, :]) / hx) ** 2) / (hx * np.sqrt(2 * np.pi))
    ky = np.exp(-0.5 * ((gy[:, None] - y[None, :]) / hy) ** 2) / (hy * np.sqrt(2 * np.pi))
    density = (kx @ ky.T) / n
    return KdeGrid(x=gx, y=gy, density=density, bandwidth=(hx, hy))


def grid_mass(grid: KdeGrid) -> float:
    """Trapezoid quadrature of the density over the grid."""
    return float(np.trapezoid(np.trapezoid(grid.density, grid.y, axis=1), grid.x))


def density_level_for_mass(grid: KdeGrid, mass: float = 0.75) -> float:
    """Density level whose superlevel set encloses the requested mass.

    Cells are weighted by trapezoid quadrature weights and accumulated
    from the densest down until the target mass is reached.
    """
    if not (0.0 < mass < 1.0):
        raise ValueError(f"mass must lie in (0, 1), got {mass}")

    def trapezoid_weights(g):
        w = np.empty_like(g)
        w[1:-1] = (g[2:] - g[:-2]) / 2.0
        w[0] = (g[1] - g[0]) / 2.0
        w[-1] = (g[-1] - g[-2]) / 2.0
        return w

    cell_mass = (
        grid.density
        * trapezoid_weights(grid.x)[:, None]
        * trapezoid_weights(grid.y)[None, :]
    ).ravel()
    order = np.argsort(grid.density.ravel())[::-1]
    cumulative = np.cumsum(cell_mass[order])
    target = mass * cumulative[-1]
    idx = int(np.searchsorted(cumulative, target))
    idx = min(idx, len(order) - 1)
    return float(grid.density.ravel()[order[idx]])


def kde_grid_to_csv(grid: KdeGrid) -> str:
    """Long-format CSV dump: x,y,density (row-major over the grid)."""
    lines = ["x,y,density"]
    for i, xv in enumerate(grid.x):
        for j, yv in enumerate(grid.y):
            lines.append(f"{float(xv)!r},{float(yv)!r},{float(grid.density[i, j])!r}")
    return "\n".join(lines) + "\n"


def atomic_write(path: str, content: str) -> str:
    """Write text via a temp file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    tmp = os.path.join(directory, f".{os.path.basename(path)}.tmp")
    with open(tmp, "w") as fh:
        fh.write(content)
    os.replace(tmp, path)
    return path


def _save_figure(fig, path: str) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    tmp = os.path.join(directory, f".{os.path.basename(path)}.tmp")
    try:
        fig.savefig(tmp, format="svg")
    finally:
        plt.close(fig)
    os.replace(tmp, path)
    return path


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", text).strip("_")


def _facies_palette(cluster_ids):
    cmap = plt.get_cmap("viridis")
    k = len(cluster_ids)
    return {
        cid: cmap(0.15 + 0.7 * (i / max(1, k - 1)))
        for i, cid in enumerate(cluster_ids)
    }


def porosity_figure(pp):
    """Porosity curves against depth, depth increasing downward."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.5, 7.0))
        ax.plot(pp.phi_d, pp.depth, lw=0.6, label="density porosity")
        ax.plot(pp.phi_n, pp.depth, lw=0.6, label="neutron porosity")
        ax.plot(pp.phi_avg, pp.depth, lw=0.8, color="black", label="average porosity")
        ax.set_xlabel("porosity (v/v)")
        ax.set_ylabel("depth (m)")
        ax.invert_yaxis()
        ax.legend(loc="upper right", fontsize=8)
        ax.set_title("Porosity profile")
    return fig


def elbow_figure(report):
    """Inertia against k with the detected knee marked."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.plot(report.k_values, report.inertias, marker="o")
        if report.knee_k is not None:
            ax.axvline(report.knee_k, color="crimson", ls="--", lw=1.0,
                       label=f"knee at k={report.knee_k}")
            ax.legend(fontsize=8)
        ax.set_xlabel("number of clusters k")
        ax.set_ylabel("within-cluster inertia")
        ax.set_title("Elbow diagnostic")
        ax.set_xticks(list(report.k_values))
    return fig


def silhouette_figure(assignments, values):
    """Per-sample silhouette bars grouped by cluster, mean marked."""
    labels = np.asarray(assignments)
    values = np.asarray(values, dtype=float)
    order = np.lexsort((-values, labels))
    palette = _facies_palette(tuple(int(c) for c in np.unique(labels)))
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.barh(
            np.arange(len(order)),
            values[order],
            height=1.0,
            color=[palette[int(c)] for c in labels[order]],
            edgecolor="none",
        )
        mean = float(values.mean())
        ax.axvline(mean, color="crimson", ls="--", lw=1.0,
                   label=f"mean {mean:.3f}")
        ax.set_xlabel("silhouette coefficient")
        ax.set_ylabel("samples (grouped by cluster)")
        ax.set_yticks([])
        ax.invert_yaxis()
        ax.legend(fontsize=8, loc="lower right")
        ax.set_title("Silhouette diagnostic")
    return fig


def crossplot_figure(x, y, cluster_id, label_by_cluster, spec, contours):
    """Facies-colored scatter with kernel-density envelopes.

    contours maps cluster id to (KdeGrid, level); pass an empty dict to
    skip envelopes (degenerate facies).
    """
    cluster_id = np.asarray(cluster_id)
    ids = tuple(int(c) for c in np.unique(cluster_id))
    palette = _facies_palette(ids)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        for cid in ids:
            sel = cluster_id == cid
            ax.scatter(
                x[sel], y[sel], s=3, alpha=0.35, linewidths=0,
                color=palette[cid], label=label_by_cluster.get(cid, str(cid)),
            )
        for cid, (grid, level) in contours.items():
            ax.contour(
                grid.x, grid.y, grid.density.T,
                levels=[level], colors=[palette[cid]], linewidths=1.2,
            )
        ax.set_xlabel(spec.x_mnemonic)
        ax.set_ylabel(spec.y_mnemonic)
        ax.legend(fontsize=8, markerscale=3)
        ax.set_title(f"{spec.x_mnemonic} vs {spec.y_mnemonic} by electrofacies")
    return fig


def facies_panel_figure(cs, column, pp, selected_logs):
    """Depth panel: facies strip, each selected log, then average porosity.

    Track count is 1 (facies strip) + len(selected_logs) + 1 (porosity).
    """
    ids = tuple(int(c) for c in np.unique(column.cluster_id))
    palette = _facies_palette(ids)
    n_tracks = 1 + len(selected_logs) + 1
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(
            1, n_tracks, figsize=(1.6 * n_tracks + 1.0, 7.5), sharey=True
        )
        axes = np.atleast_1d(axes)

        strip = axes[0]
        depth = column.depth
        half = float(np.median(np.diff(depth)) / 2.0) if len(depth) > 1 else 0.5
        for start, length, cid in _run_lengths(np.asarray(column.cluster_id)):
            top = depth[start] - half
            base = depth[start + length - 1] + half
            strip.axhspan(top, base, color=palette[cid], lw=0)
        strip.set_xticks([])
        strip.set_xlim(0, 1)
        strip.set_ylabel("depth (m)")
        strip.set_title("facies", fontsize=8)
        handles = [
            plt.Rectangle((0, 0), 1, 1, color=palette[cid])
            for cid in ids
        ]
        strip.legend(
            handles,
            [column.label_by_cluster.get(cid, str(cid)) for cid in ids],
            fontsize=6, loc="upper left", bbox_to_anchor=(0.0, -0.02),
        )

        for ax, mnemonic in zip(axes[1:], selected_logs):
            values = cs.curves[mnemonic].astype(float).copy()
            values[cs.masks[mnemonic]] = np.nan
            ax.plot(values, cs.depth, lw=0.4, color="#1f4e79")
            ax.set_title(mnemonic, fontsize=8)

        pax = axes[-1]
        pax.plot(pp.phi_avg, pp.depth, lw=0.4, color="black")
        pax.set_title("avg porosity", fontsize=8)

        strip.set_ylim(float(depth.max() + half), float(depth.min() - half))
        fig.suptitle("Electrofacies depth panel", fontsize=10)
    return fig


def crossplot_points(cs, column, spec: CrossplotSpec):
    """Aligned (x, y, cluster_id) for rows where both curves are observed."""
    x_all = cs.require(spec.x_mnemonic)
    y_all = cs.require(spec.y_mnemonic)
    idx = np.searchsorted(cs.depth, column.depth)
    idx = np.clip(idx, 0, len(cs.depth) - 1)
    if not np.array_equal(cs.depth[idx], column.depth):
        raise ValueError("facies column depths are not aligned with the curve set")
    ok = ~(cs.masks[spec.x_mnemonic][idx] | cs.masks[spec.y_mnemonic][idx])
    return x_all[idx[ok]], y_all[idx[ok]], np.asarray(column.cluster_id)[ok]


def crossplot_to_csv(x, y, cluster_id, labels, spec: CrossplotSpec) -> str:
    """Per-sample crossplot table: x,y,cluster_id,label with real axis names."""
    lines = [f"{spec.x_mnemonic},{spec.y_mnemonic},cluster_id,label"]
    for xv, yv, cid, lab in zip(x, y, cluster_id, labels):
        lines.append(f"{float(xv)!r},{float(yv)!r},{int(cid)},{lab}")
    return "\n".join(lines) + "\n"


def write_porosity_depth(pp, out_dir: str) -> list[str]:
    """porosity_depth.csv and porosity_depth.svg."""
    paths = [
        atomic_write(os.path.join(out_dir, "porosity_depth.csv"),
                     porosity_profile_to_csv(pp)),
        _save_figure(porosity_figure(pp), os.path.join(out_dir, "porosity_depth.svg")),
    ]
    return paths


def write_elbow(report, out_dir: str) -> list[str]:
    """elbow.csv and elbow.svg from a k-selection report."""
    return [
        atomic_write(os.path.join(out_dir, "elbow.csv"),
                     selection_report_to_csv(report)),
        _save_figure(elbow_figure(report), os.path.join(out_dir, "elbow.svg")),
    ]


def write_silhouette(assignments, values, depth, out_dir: str) -> list[str]:
    """silhouette.csv (sorted by cluster, descending value) and silhouette.svg."""
    return [
        atomic_write(os.path.join(out_dir, "silhouette.csv"),
                     silhouette_table_to_csv(assignments, values, depth)),
        _save_figure(silhouette_figure(assignments, values),
                     os.path.join(out_dir, "silhouette.svg")),
    ]


def write_crossplots(cs, column, specs, out_dir: str) -> list[str]:
    """Per spec: crossplot CSV, per-facies KDE grid CSVs, and the SVG.

    A facies whose points are too few or degenerate on either axis simply
    gets no envelope; the scatter still includes it.
    """
    paths = []
    for spec in specs:
        x, y, cluster_id = crossplot_points(cs, column, spec)
        labels = [column.label_by_cluster.get(int(c), str(c)) for c in cluster_id]
        stem = f"crossplot_{_slug(spec.x_mnemonic)}_{_slug(spec.y_mnemonic)}"
        paths.append(atomic_write(
            os.path.join(out_dir, f"{stem}.csv"),
            crossplot_to_csv(x, y, cluster_id, labels, spec),
        ))
        contours = {}
        for cid in (int(c) for c in np.unique(cluster_id)):
            sel = cluster_id == cid
            pts = np.column_stack((x[sel], y[sel]))
            if len(pts) < 2:
                continue
            try:
                grid = kde2d(pts, spec)
            except DegenerateSpreadError:
                continue
            contours[cid] = (grid, density_level_for_mass(grid, spec.contour_mass))
            paths.append(atomic_write(
                os.path.join(out_dir, f"{stem}_kde_c{cid}.csv"),
                kde_grid_to_csv(grid),
            ))
        paths.append(_save_figure(
            crossplot_figure(x, y, cluster_id, column.label_by_cluster, spec, contours),
            os.path.join(out_dir, f"{stem}.svg"),
        ))
    return paths


def write_facies_column(cs, column, pp, selected_logs, out_dir: str) -> list[str]:
    """facies_column.csv and the multi-track facies_column.svg."""
    return [
        atomic_write(os.path.join(out_dir, "facies_column.csv"),
                     facies_column_to_csv(column)),
        _save_figure(facies_panel_figure(cs, column, pp, selected_logs),
                     os.path.join(out_dir, "facies_column.svg")),
    ]


def write_facies_tables(summaries, continuity, out_dir: str) -> list[str]:
    """facies_summary.csv and transition_matrix.csv."""
    return [
        atomic_write(os.path.join(out_dir, "facies_summary.csv"),
                     facies_summary_to_csv(summaries)),
        atomic_write(os.path.join(out_dir, "transition_matrix.csv"),
                     transition_matrix_to_csv(continuity)),
    ]


def write_qc_audit(audit, out_dir: str) -> list[str]:
    """qc_audit.txt with the row-count ledger."""
    return [atomic_write(os.path.join(out_dir, "qc_audit.txt"), audit.as_text())]


def emit_figures(result, out_dir: str) -> list[str]:
    """Write every data product of a pipeline run into out_dir.

    result duck-types the pipeline RunResult: curveset, audit, porosity,
    features, model, selection (None when k was fixed), silhouettes (None
    when k was fixed), column, summaries, continuity, selected_logs,
    crossplots. Returns the written paths. Elbow and silhouette files are
    emitted only when a k scan ran.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    paths += write_qc_audit(result.audit, out_dir)
    paths += write_porosity_depth(result.porosity, out_dir)
    if result.selection is not None:
        paths += write_elbow(result.selection, out_dir)
    if result.silhouettes is not None:
        paths += write_silhouette(
            result.model.assignments, result.silhouettes,
            result.features.depth_index, out_dir,
        )
    paths += write_crossplots(result.curveset, result.column, result.crossplots, out_dir)
    paths += write_facies_column(
        result.curveset, result.column, result.porosity, result.selected_logs, out_dir
    )
    paths += write_facies_tables(result.summaries, result.continuity, out_dir)
    return paths
