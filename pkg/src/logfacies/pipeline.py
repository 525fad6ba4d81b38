"""End-to-end orchestration: QC, porosity, clustering, labeling, reporting.

run_pipeline() is the library entry point behind the CLI's run subcommand;
each stage is also callable on its own from the individual modules.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from .cluster import (
    ClusterModel,
    KmeansConfig,
    KSelectionReport,
    kmeans_fit,
    select_k,
    silhouette_values,
)
from .config import PipelineConfig
from .errors import ConfigError
from .facies import (
    ContinuityStats,
    FaciesColumn,
    FaciesScheme,
    assign_labels,
    continuity_stats,
    facies_summaries,
)
from .las import CurveSet
from .porosity import PorosityProfile, porosity_profile
from .qc import FeatureMatrix, QcAudit, run_qc
from .report import CrossplotSpec

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunResult:
    """Everything one pipeline run produced, ready for report emission."""

    curveset: CurveSet
    audit: QcAudit
    porosity: PorosityProfile
    features: FeatureMatrix
    model: ClusterModel
    selection: KSelectionReport | None
    silhouettes: np.ndarray | None
    column: FaciesColumn
    summaries: dict[int, dict]
    continuity: ContinuityStats
    selected_logs: tuple[str, ...]
    crossplots: tuple[CrossplotSpec, ...]
    k_used: int


def _resolve_scheme(cfg: PipelineConfig, k: int) -> FaciesScheme:
    if cfg.scheme is not None:
        if len(cfg.scheme.ordered_labels) != k:
            raise ConfigError(
                f"configured facies labels count {len(cfg.scheme.ordered_labels)} "
                f"does not match k={k}"
            )
        return cfg.scheme
    return FaciesScheme.default_for(k, cfg.gr_mnemonic, cfg.rhoz_mnemonic)


def _usable_crossplots(cs: CurveSet, specs) -> tuple[CrossplotSpec, ...]:
    usable = []
    for spec in specs:
        missing = [m for m in (spec.x_mnemonic, spec.y_mnemonic)
                   if m not in cs.curves]
        if missing:
            log.warning(
                "skipping crossplot %s-%s: curve(s) %s not in this well",
                spec.x_mnemonic, spec.y_mnemonic, ", ".join(missing),
            )
            continue
        usable.append(spec)
    return tuple(usable)


def run_pipeline(
    cs: CurveSet,
    cfg: PipelineConfig,
    k: int | None = None,
    k_range: tuple[int, int] | None = None,
    seed: int | None = None,
) -> RunResult:
    """Run QC, porosity, clustering, and labeling on a parsed curve set.

    k picks a fixed cluster count (skipping the k scan, so elbow and
    silhouette diagnostics stay empty); k_range scans and adopts the best
    mean-silhouette k. Passing neither uses the config's fixed k when set,
    else scans 2..8. seed overrides the configured clustering seed.
    """
    if k is not None and k_range is not None:
        raise ConfigError("choose either a fixed k or a k range, not both")
    cfg.selection.validate_against(cs)
    kmeans_cfg = cfg.kmeans if seed is None else replace(cfg.kmeans, seed=seed)

    porosity = porosity_profile(cs, cfg.petro)
    screened, features, audit = run_qc(cs, cfg.selection, cfg.qc)

    if k is None and k_range is None:
        if cfg.fixed_k is not None:
            k = cfg.fixed_k
        else:
            k_range = (2, 8)

    if k is not None:
        selection_report = None
        silhouettes = None
        model = kmeans_fit(features, replace(kmeans_cfg, k=k))
        k_used = k
    else:
        k_min, k_max = k_range
        if k_min < 2:
            raise ConfigError(f"k range must start at 2 or above, got {k_min}")
        selection_report = select_k(features, k_min, k_max, kmeans_cfg)
        k_used = selection_report.best_silhouette_k
        model = kmeans_fit(features, replace(kmeans_cfg, k=k_used))
        silhouettes = silhouette_values(features, model.assignments)

    scheme = _resolve_scheme(cfg, k_used)
    column = assign_labels(model, cs, features, scheme)
    summaries = facies_summaries(column, cs, porosity)
    column = column.with_summaries(summaries)
    continuity = continuity_stats(column)

    return RunResult(
        curveset=cs,
        audit=audit,
        porosity=porosity,
        features=features,
        model=model,
        selection=selection_report,
        silhouettes=silhouettes,
        column=column,
        summaries=summaries,
        continuity=continuity,
        selected_logs=cfg.selection.mnemonics,
        crossplots=_usable_crossplots(cs, cfg.crossplots),
        k_used=k_used,
    )
