"""Preprocessing chain: washout removal, sigma screening, z-score features.

The pipeline order is fixed: washout -> outlier screen -> row-completeness
filter -> standardize. Each step returns a new object; nothing is mutated.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NumericError, ZeroVarianceError
from .las import CurveSelection, CurveSet

logger = logging.getLogger(__name__)

_STD_MODES = ("population", "sample")


@dataclass(frozen=True)
class QcConfig:
    """Tunables for the quality-control steps."""

    sigma_threshold: float = 3.0
    washout_margin: float = 2.0  # inches above bit size
    std_mode: str = "population"

    def __post_init__(self):
        if not self.sigma_threshold > 0:
            raise ConfigError(f"sigma_threshold must be > 0, got {self.sigma_threshold}")
        if self.washout_margin < 0:
            raise ConfigError(f"washout_margin must be >= 0, got {self.washout_margin}")
        if self.std_mode not in _STD_MODES:
            raise ConfigError(f"std_mode must be one of {_STD_MODES}, got {self.std_mode!r}")

    @property
    def ddof(self) -> int:
        return 0 if self.std_mode == "population" else 1


@dataclass(frozen=True)
class FeatureMatrix:
    """Standardized, fully observed samples ready for clustering.

    rows[i] corresponds to depth_index[i]; columns follow feature_names.
    means/stds record the standardization actually applied, per feature.
    """

    rows: np.ndarray
    depth_index: np.ndarray
    feature_names: tuple[str, ...]
    means: np.ndarray
    stds: np.ndarray

    @property
    def n_samples(self) -> int:
        return self.rows.shape[0]

    @property
    def n_features(self) -> int:
        return self.rows.shape[1]


@dataclass
class QcAudit:
    """Row counts dropped by each QC step, for the audit log."""

    rows_in: int = 0
    washout_dropped: int = 0
    outlier_dropped: int = 0
    incomplete_dropped: int = 0
    rows_out: int = 0

    def as_text(self) -> str:
        lines = [
            f"rows in: {self.rows_in}",
            f"washout rows dropped: {self.washout_dropped}",
            f"outlier rows dropped: {self.outlier_dropped}",
            f"incomplete rows dropped: {self.incomplete_dropped}",
            f"rows retained: {self.rows_out}",
        ]
        return "\n".join(lines) + "\n"


def remove_washout(cs: CurveSet, sel: CurveSelection, cfg: QcConfig) -> CurveSet:
    """Drop rows where the caliper reads more than bit size + margin.

    Without a configured caliper the input passes through unchanged. Rows
    with a masked caliper reading are kept; there is no washout evidence
    for them.
    """
    if sel.caliper_mnemonic is None:
        logger.info("no caliper configured; washout removal skipped")
        return cs
    if sel.bit_size is None:
        raise ConfigError("caliper_mnemonic is set but bit_size is not")
    caliper = cs.require(sel.caliper_mnemonic)
    observed = ~cs.mask(sel.caliper_mnemonic)
    washed = observed & (caliper > sel.bit_size + cfg.washout_margin)
    if not washed.any():
        return cs
    logger.info("washout removal dropped %d of %d rows", int(washed.sum()), cs.n_rows)
    return cs.take(np.nonzero(~washed)[0])


def screen_outliers(cs: CurveSet, sel: CurveSelection, cfg: QcConfig) -> CurveSet:
    """Single-pass +/- k*sigma screen applied independently to each log.

    Mean and std are computed once per curve over the unmasked values of the
    input, before any row is dropped, so screening one curve never shifts
    the statistics used for another. A row is dropped when any selected
    curve's observed value falls outside its band. Curves with zero spread
    drop nothing.
    """
    drop = np.zeros(cs.n_rows, dtype=bool)
    for mnem in sel.mnemonics:
        values = cs.require(mnem)
        observed = ~cs.mask(mnem)
        n_obs = int(observed.sum())
        if n_obs < 2:
            raise NumericError(
                f"curve {mnem!r} has {n_obs} unmasked values; need at least 2 to screen"
            )
        mu = float(values[observed].mean())
        sigma = float(values[observed].std(ddof=cfg.ddof))
        if sigma == 0.0:
            continue
        k = cfg.sigma_threshold
        drop |= observed & ((values < mu - k * sigma) | (values > mu + k * sigma))
    if not drop.any():
        return cs
    logger.info("sigma screen dropped %d of %d rows", int(drop.sum()), cs.n_rows)
    return cs.take(np.nonzero(~drop)[0])


def standardize(cs: CurveSet, sel: CurveSelection, cfg: QcConfig) -> FeatureMatrix:
    """Z-score the selected curves over fully observed rows.

    Rows with any masked value in a selected curve are dropped first.
    Raises ZeroVarianceError if a feature has no spread over the rows that
    remain.
    """
    complete = np.ones(cs.n_rows, dtype=bool)
    for mnem in sel.mnemonics:
        cs.require(mnem)
        complete &= ~cs.mask(mnem)
    n_kept = int(complete.sum())
    if n_kept < 2:
        raise NumericError(
            f"only {n_kept} fully observed rows remain; need at least 2 to standardize"
        )
    raw = np.column_stack([cs.curves[m][complete] for m in sel.mnemonics])
    means = raw.mean(axis=0)
    stds = raw.std(axis=0, ddof=cfg.ddof)
    for j, mnem in enumerate(sel.mnemonics):
        if stds[j] == 0.0:
            raise ZeroVarianceError(mnem)
    return FeatureMatrix(
        rows=(raw - means) / stds,
        depth_index=cs.depth[complete].copy(),
        feature_names=tuple(sel.mnemonics),
        means=means,
        stds=stds,
    )


def run_qc(cs: CurveSet, sel: CurveSelection, cfg: QcConfig):
    """Run the full QC chain in its fixed order.

    Returns (qc'd CurveSet, FeatureMatrix, QcAudit). The returned CurveSet
    reflects washout and sigma screening; the FeatureMatrix additionally
    drops rows that are not fully observed.
    """
    sel.validate_against(cs)
    audit = QcAudit(rows_in=cs.n_rows)
    after_washout = remove_washout(cs, sel, cfg)
    audit.washout_dropped = cs.n_rows - after_washout.n_rows
    screened = screen_outliers(after_washout, sel, cfg)
    audit.outlier_dropped = after_washout.n_rows - screened.n_rows
    fm = standardize(screened, sel, cfg)
    audit.incomplete_dropped = screened.n_rows - fm.n_samples
    audit.rows_out = fm.n_samples
    return screened, fm, audit
