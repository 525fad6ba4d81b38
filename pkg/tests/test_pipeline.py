"""End-to-end pipeline orchestration on synthetic wells."""

import logging

import numpy as np
import pytest

from logfacies.cluster import KmeansConfig
from logfacies.config import PipelineConfig
from logfacies.errors import ConfigError
from logfacies.facies import FaciesScheme
from logfacies.las import CurveSelection
from logfacies.pipeline import run_pipeline
from logfacies.synth import FaciesSpec, WellSpec, generate_well, inject_artifacts

FACIES = (
    FaciesSpec(
        "sand",
        {"GR": 30.0, "RHOZ": 2.62, "NPHI": 0.10, "DT": 60.0},
        {"GR": 5.0, "RHOZ": 0.03, "NPHI": 0.02, "DT": 3.0},
        mean_bed_thickness=6.0,
    ),
    FaciesSpec(
        "shale",
        {"GR": 120.0, "RHOZ": 2.42, "NPHI": 0.35, "DT": 95.0},
        {"GR": 8.0, "RHOZ": 0.03, "NPHI": 0.03, "DT": 4.0},
        mean_bed_thickness=10.0,
    ),
)


def make_well(seed=1, with_artifacts=False):
    cs, truth = generate_well(
        WellSpec(top=1000.0, base=1150.0, facies=FACIES, seed=seed)
    )
    if with_artifacts:
        cs, manifest = inject_artifacts(cs, 0.02, 0.01, seed=seed + 1)
        return cs, truth, manifest
    return cs, truth, None


def config(**kw):
    defaults = dict(
        selection=CurveSelection(("GR", "RHOZ", "NPHI", "DT")),
        kmeans=KmeansConfig(k=2, n_restarts=8, seed=0),
    )
    defaults.update(kw)
    return PipelineConfig(**defaults)


class TestFixedK:
    def test_structure(self):
        cs, truth, _ = make_well()
        result = run_pipeline(cs, config(), k=2)
        assert result.k_used == 2
        assert result.selection is None
        assert result.silhouettes is None
        assert result.model.k == 2
        assert result.column.n_samples == result.features.n_samples
        assert result.audit.rows_in == cs.n_rows
        assert result.selected_logs == ("GR", "RHOZ", "NPHI", "DT")
        assert set(result.summaries) == {0, 1}
        assert result.continuity.n_runs >= 2

    def test_porosity_covers_the_full_well(self):
        cs, _, manifest = make_well(with_artifacts=True)
        result = run_pipeline(cs, config(
            selection=CurveSelection(
                ("GR", "RHOZ", "NPHI", "DT"),
                caliper_mnemonic="CALI", bit_size=8.5,
            ),
        ), k=2)
        # porosity is computed before QC drops rows
        assert len(result.porosity.depth) == cs.n_rows
        assert result.features.n_samples < cs.n_rows
        assert result.audit.washout_dropped == manifest.washout_rows.size

    def test_labels_recover_the_lithology(self):
        cs, truth, _ = make_well()
        result = run_pipeline(cs, config(), k=2)
        # retained rows map back to curve-set rows by depth
        rows = np.searchsorted(cs.depth, result.features.depth_index)
        sandy = np.asarray(result.column.label)[truth[rows] == 0]
        assert (sandy == "Sand-prone").mean() > 0.95

    def test_summaries_include_average_porosity(self):
        cs, _, _ = make_well()
        result = run_pipeline(cs, config(), k=2)
        for entry in result.summaries.values():
            assert "PHI_AVG" in entry["curves"]

    def test_custom_scheme_applied(self):
        cs, _, _ = make_well()
        scheme = FaciesScheme(("Clean", "Dirty"))
        result = run_pipeline(cs, config(scheme=scheme), k=2)
        assert set(result.column.label_by_cluster.values()) == {"Clean", "Dirty"}

    def test_scheme_size_mismatch_rejected(self):
        cs, _, _ = make_well()
        scheme = FaciesScheme(("A", "B", "C"))
        with pytest.raises(ConfigError):
            run_pipeline(cs, config(scheme=scheme), k=2)

    def test_config_fixed_k_used_when_no_override(self):
        cs, _, _ = make_well()
        result = run_pipeline(cs, config(fixed_k=2))
        assert result.k_used == 2
        assert result.selection is None

    def test_seed_override(self):
        cs, _, _ = make_well()
        result = run_pipeline(cs, config(), k=2, seed=99)
        assert result.model.seed_used == 99


class TestScannedK:
    def test_scan_selects_two_clusters(self):
        cs, _, _ = make_well()
        result = run_pipeline(cs, config(), k_range=(2, 4))
        assert result.selection is not None
        assert result.selection.best_silhouette_k == 2
        assert result.k_used == 2
        assert result.silhouettes is not None
        assert len(result.silhouettes) == result.features.n_samples
        assert list(result.selection.k_values) == [2, 3, 4]

    def test_conflicting_k_arguments_rejected(self):
        cs, _, _ = make_well()
        with pytest.raises(ConfigError):
            run_pipeline(cs, config(), k=2, k_range=(2, 4))

    def test_k_range_must_start_at_two(self):
        cs, _, _ = make_well()
        with pytest.raises(ConfigError):
            run_pipeline(cs, config(), k_range=(1, 4))

    def test_missing_feature_curve_rejected(self):
        cs, _, _ = make_well()
        bad = config(selection=CurveSelection(("GR", "PEFZ")))
        with pytest.raises(Exception):
            run_pipeline(cs, bad, k=2)


class TestCrossplotFilter:
    def test_unavailable_crossplots_dropped_with_warning(self, caplog):
        cs, _, _ = make_well()
        with caplog.at_level(logging.WARNING, logger="logfacies.pipeline"):
            result = run_pipeline(cs, config(), k=2)
        # the default crossplot list references PEFZ, absent here
        assert len(result.crossplots) == 2
        assert any("PEFZ" in rec.message for rec in caplog.records)
