"""Electrofacies labeling and depth-continuity statistics.

Clusters carry no intrinsic meaning, so labels are attached by ordering
clusters on mean raw gamma-ray: the lowest-GR cluster takes the first
(cleanest) label and the highest-GR cluster the last (shaliest). Ties
break on descending mean bulk density, then on cluster id. Ranking uses
raw curve values, not z-scores, so the reported means stay in physical
units.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, MissingCurveError

DEFAULT_LABEL_SETS: dict[int, tuple[str, ...]] = {
    2: ("Sand-prone", "Shale-prone"),
    3: ("Sandstone-dominated", "Mixed", "Shale-dominated"),
    4: (
        "Sandstone-dominated",
        "Sand-prone mixed",
        "Shale-prone mixed",
        "Shale-dominated",
    ),
    5: (
        "Sandstone-dominated",
        "Sand-prone mixed",
        "Mixed",
        "Shale-prone mixed",
        "Shale-dominated",
    ),
}


@dataclass(frozen=True)
class FaciesScheme:
    """Label names in increasing-clay order plus the ordering mnemonics."""

    ordered_labels: tuple[str, ...]
    gr_mnemonic: str = "GR"
    rhoz_mnemonic: str = "RHOZ"

    def __post_init__(self):
        object.__setattr__(self, "ordered_labels", tuple(self.ordered_labels))
        if len(self.ordered_labels) == 0:
            raise ConfigError("ordered_labels must not be empty")
        if len(set(self.ordered_labels)) != len(self.ordered_labels):
            raise ConfigError("ordered_labels must be unique")

    @classmethod
    def default_for(cls, k: int, gr_mnemonic: str = "GR", rhoz_mnemonic: str = "RHOZ"):
        """Built-in label set for k clusters; generic names outside 2..5."""
        labels = DEFAULT_LABEL_SETS.get(k)
        if labels is None:
            labels = tuple(f"Facies {i + 1}" for i in range(k))
        return cls(labels, gr_mnemonic, rhoz_mnemonic)


@dataclass(frozen=True)
class FaciesColumn:
    """Labeled clustering along depth, with the GR means that ordered it.

    cluster_summaries starts empty; facies_summaries() computes the table
    and with_summaries() returns a column carrying it.
    """

    depth: np.ndarray
    cluster_id: np.ndarray
    label: tuple[str, ...]
    cluster_gr_means: dict[int, float]
    label_by_cluster: dict[int, str]
    cluster_summaries: dict[int, dict] | None = None

    def __post_init__(self):
        n = len(self.depth)
        if len(self.cluster_id) != n or len(self.label) != n:
            raise ValueError("depth, cluster_id and label must have equal length")

    @property
    def n_samples(self) -> int:
        return len(self.depth)

    def with_summaries(self, summaries: dict[int, dict]) -> "FaciesColumn":
        return replace(self, cluster_summaries=summaries)


@dataclass(frozen=True)
class ContinuityStats:
    """Run-length and transition structure of a facies column.

    transition_matrix[i, j] counts adjacent sample pairs going from cluster
    cluster_ids[i] to cluster_ids[j], self-transitions included, so entries
    sum to n - 1 and each row sums to that cluster's sample count minus one
    if the column ends in it. gap_count is the number of adjacent pairs
    whose depth step exceeds twice the median sampling interval (QC-removed
    intervals show up as such steps; contacts across them are still counted
    but flagged here).
    """

    cluster_ids: tuple[int, ...]
    n_runs: int
    mean_run_length: float
    mean_run_thickness: float
    transition_matrix: np.ndarray
    gap_count: int
    run_lengths_by_cluster: dict[int, list[int]]


def _rows_for_depths(curveset, depths: np.ndarray) -> np.ndarray:
    """Indices into curveset.depth for each requested depth (exact match)."""
    idx = np.searchsorted(curveset.depth, depths)
    idx = np.clip(idx, 0, len(curveset.depth) - 1)
    if not np.array_equal(curveset.depth[idx], depths):
        raise ValueError("depths are not aligned with the curve set")
    return idx


def _cluster_curve_means(curveset, rows, cluster_ids, assignments, mnemonic):
    """Mean of a raw curve per cluster, masked values excluded."""
    values = curveset.curves[mnemonic]
    mask = curveset.masks[mnemonic]
    means = {}
    for cid in cluster_ids:
        idx = rows[assignments == cid]
        observed = values[idx[~mask[idx]]]
        means[int(cid)] = float(observed.mean()) if observed.size else np.nan
    return means


def assign_labels(model, curveset, fm, scheme: FaciesScheme) -> FaciesColumn:
    """Attach scheme labels to clusters by ascending mean raw gamma-ray.

    Retained rows come from fm.depth_index; their raw curve values come
    from the curve set. The scheme must provide exactly one label per
    cluster of the model.
    """
    assignments = np.asarray(model.assignments)
    depth = np.asarray(fm.depth_index, dtype=float)
    if len(assignments) != len(depth):
        raise ValueError("model assignments and feature rows must have equal length")
    cluster_ids = np.unique(assignments)
    if len(scheme.ordered_labels) != len(cluster_ids):
        raise ConfigError(
            f"scheme has {len(scheme.ordered_labels)} labels "
            f"but the clustering has {len(cluster_ids)} clusters"
        )
    if scheme.gr_mnemonic not in curveset.mnemonics:
        raise MissingCurveError(f"curve {scheme.gr_mnemonic!r} not present")

    rows = _rows_for_depths(curveset, depth)
    gr_means = _cluster_curve_means(
        curveset, rows, cluster_ids, assignments, scheme.gr_mnemonic
    )
    if scheme.rhoz_mnemonic in curveset.mnemonics:
        rhoz_means = _cluster_curve_means(
            curveset, rows, cluster_ids, assignments, scheme.rhoz_mnemonic
        )
    else:
        rhoz_means = {int(c): 0.0 for c in cluster_ids}

    # Ascending GR; ties prefer the denser (more compacted, typically
    # cleaner) cluster first, then the lower id.
    order = sorted(
        (int(c) for c in cluster_ids),
        key=lambda c: (gr_means[c], -rhoz_means[c], c),
    )
    label_by_cluster = {c: scheme.ordered_labels[i] for i, c in enumerate(order)}
    labels = tuple(label_by_cluster[int(c)] for c in assignments)
    return FaciesColumn(
        depth=depth,
        cluster_id=assignments,
        label=labels,
        cluster_gr_means=gr_means,
        label_by_cluster=label_by_cluster,
    )


def _run_lengths(cluster_id: np.ndarray):
    """(start_index, length, cluster) for each maximal constant run."""
    n = len(cluster_id)
    boundaries = np.nonzero(np.diff(cluster_id) != 0)[0] + 1
    starts = np.concatenate(([0], boundaries))
    ends = np.concatenate((boundaries, [n]))
    return [(int(s), int(e - s), int(cluster_id[s])) for s, e in zip(starts, ends)]


def continuity_stats(column: FaciesColumn) -> ContinuityStats:
    """Vertical continuity of a facies column.

    Run thickness is the depth extent between a run's first and last
    sample plus one median sampling step, so a single-sample run covers
    one step and contiguous runs tile the logged interval.
    """
    depth = column.depth
    cluster_id = np.asarray(column.cluster_id)
    n = len(cluster_id)
    if n == 0:
        raise ValueError("empty facies column")
    cluster_ids = tuple(int(c) for c in np.unique(cluster_id))
    id_index = {c: i for i, c in enumerate(cluster_ids)}

    runs = _run_lengths(cluster_id)
    lengths = np.array([r[1] for r in runs], dtype=float)
    if n > 1:
        steps = np.diff(depth)
        median_step = float(np.median(steps))
        gap_count = int(np.count_nonzero(steps > 2.0 * median_step))
    else:
        median_step = 0.0
        gap_count = 0
    thicknesses = np.array(
        [depth[s + ln - 1] - depth[s] + median_step for s, ln, _ in runs]
    )

    k = len(cluster_ids)
    transitions = np.zeros((k, k), dtype=np.int64)
    if n > 1:
        src = np.fromiter((id_index[int(c)] for c in cluster_id[:-1]), dtype=int)
        dst = np.fromiter((id_index[int(c)] for c in cluster_id[1:]), dtype=int)
        np.add.at(transitions, (src, dst), 1)

    by_cluster: dict[int, list[int]] = {c: [] for c in cluster_ids}
    for _, length, cid in runs:
        by_cluster[cid].append(length)

    return ContinuityStats(
        cluster_ids=cluster_ids,
        n_runs=len(runs),
        mean_run_length=float(lengths.mean()),
        mean_run_thickness=float(thicknesses.mean()),
        transition_matrix=transitions,
        gap_count=gap_count,
        run_lengths_by_cluster=by_cluster,
    )


def facies_summaries(column: FaciesColumn, curveset, porosity=None):
    """Per-cluster sample count and mean/std of each raw curve.

    Returns {cluster_id: {"label", "count", "curves": {mnemonic: (mean, std)}}}.
    Statistics use observed (unmasked) values only; population std. When a
    porosity profile is supplied its average porosity joins the table
    under the name PHI_AVG.
    """
    rows = _rows_for_depths(curveset, column.depth)
    cluster_ids = np.unique(column.cluster_id)
    summaries: dict[int, dict] = {}
    for cid in cluster_ids:
        cid = int(cid)
        idx = rows[column.cluster_id == cid]
        curves: dict[str, tuple[float, float]] = {}
        for mnemonic in curveset.mnemonics:
            observed = curveset.curves[mnemonic][idx[~curveset.masks[mnemonic][idx]]]
            if observed.size:
                curves[mnemonic] = (float(observed.mean()), float(observed.std()))
            else:
                curves[mnemonic] = (np.nan, np.nan)
        if porosity is not None:
            observed = porosity.phi_avg[idx[~porosity.phi_avg_mask[idx]]]
            if observed.size:
                curves["PHI_AVG"] = (float(observed.mean()), float(observed.std()))
            else:
                curves["PHI_AVG"] = (np.nan, np.nan)
        summaries[cid] = {
            "label": column.label_by_cluster[cid],
            "count": int(idx.size),
            "curves": curves,
        }
    return summaries


def facies_column_to_csv(column: FaciesColumn) -> str:
    """CSV dump: depth,cluster_id,label in depth order."""
    out = io.StringIO()
    out.write("depth,cluster_id,label\n")
    for d, c, lab in zip(column.depth, column.cluster_id, column.label):
        out.write(f"{float(d)!r},{int(c)},{lab}\n")
    return out.getvalue()


def facies_summary_to_csv(summaries: dict[int, dict]) -> str:
    """One row per (cluster, curve): cluster_id,label,count,curve,mean,std."""
    out = io.StringIO()
    out.write("cluster_id,label,count,curve,mean,std\n")
    for cid in sorted(summaries):
        entry = summaries[cid]
        for mnemonic, (mean, std) in entry["curves"].items():
            mean_s = "" if np.isnan(mean) else repr(mean)
            std_s = "" if np.isnan(std) else repr(std)
            out.write(
                f"{cid},{entry['label']},{entry['count']},{mnemonic},{mean_s},{std_s}\n"
            )
    return out.getvalue()


def transition_matrix_to_csv(stats: ContinuityStats) -> str:
    """Square transition-count table with cluster ids on both margins."""
    out = io.StringIO()
    out.write(",".join(["from\\to"] + [str(c) for c in stats.cluster_ids]) + "\n")
    for i, cid in enumerate(stats.cluster_ids):
        row = ",".join([str(cid)] + [str(int(v)) for v in stats.transition_matrix[i]])
        out.write(row + "\n")
    return out.getvalue()
