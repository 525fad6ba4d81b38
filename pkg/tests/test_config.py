"""INI configuration loading for pipeline runs and synthetic well specs."""

import numpy as np
import pytest

from logfacies.config import DEFAULT_FEATURE_CURVES, load_config, load_well_spec
from logfacies.errors import ConfigError
from logfacies.report import DEFAULT_CROSSPLOTS
from logfacies.synth import generate_well

FULL_CONFIG = """\
[features]
curves = GR, RHOZ, NPHI
caliper = CALI
bit_size = 8.5

[qc]
sigma_threshold = 2.5
washout_margin = 1.5
std_mode = sample

[petro]
rho_matrix = 2.65
rho_fluid = 1.1
rhoz_curve = RHOB
nphi_curve = PHIN
nphi_unit = percent

[kmeans]
k = 3
n_restarts = 10
max_iter = 200
tol = 1e-5
seed = 7
init = random-points

[facies]
labels = Clean, Middling, Dirty
gr_curve = SGR
rhoz_curve = RHOB

[crossplot.main]
x = GR
y = RHOZ
kde_grid = 64
bandwidth = 0.5, 0.8
contour_mass = 0.6
"""

WELL_SPEC = """\
[synth]
top = 1000.0
base = 1200.0
sample_interval = 0.25
compaction_gradient = 0.1
seed = 42
well_name = DEMO

[synth.facies.sand]
mean_bed_thickness = 6.0
GR = 30.0, 5.0
DT = 60.0, 4.0

[synth.facies.shale]
mean_bed_thickness = 10.0
GR = 120.0, 8.0
DT = 95.0, 5.0

[synth.artifacts]
washout_fraction = 0.02
spike_fraction = 0.01
"""


def write(tmp_path, text, name="cfg.ini"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestLoadConfig:
    def test_defaults_from_empty_file(self, tmp_path):
        cfg = load_config(write(tmp_path, ""))
        assert cfg.selection.mnemonics == DEFAULT_FEATURE_CURVES
        assert cfg.selection.caliper_mnemonic is None
        assert cfg.qc.sigma_threshold == 3.0
        assert cfg.petro.rho_ma == 2.71
        assert cfg.fixed_k is None
        assert cfg.scheme is None
        assert cfg.crossplots == DEFAULT_CROSSPLOTS

    def test_full_configuration(self, tmp_path):
        cfg = load_config(write(tmp_path, FULL_CONFIG))
        assert cfg.selection.mnemonics == ("GR", "RHOZ", "NPHI")
        assert cfg.selection.caliper_mnemonic == "CALI"
        assert cfg.selection.bit_size == 8.5
        assert cfg.qc.sigma_threshold == 2.5
        assert cfg.qc.washout_margin == 1.5
        assert cfg.qc.ddof == 1
        assert cfg.petro.rho_ma == 2.65
        assert cfg.petro.rho_f == 1.1
        assert cfg.petro.rhoz_mnemonic == "RHOB"
        assert cfg.petro.nphi_unit == "percent"
        assert cfg.fixed_k == 3
        assert cfg.kmeans.k == 3
        assert cfg.kmeans.n_restarts == 10
        assert cfg.kmeans.tol == 1e-5
        assert cfg.kmeans.seed == 7
        assert cfg.kmeans.init == "random-points"
        assert cfg.scheme.ordered_labels == ("Clean", "Middling", "Dirty")
        assert cfg.scheme.gr_mnemonic == "SGR"
        assert cfg.gr_mnemonic == "SGR"
        assert len(cfg.crossplots) == 1
        plot = cfg.crossplots[0]
        assert plot.x_mnemonic == "GR" and plot.y_mnemonic == "RHOZ"
        assert plot.kde_grid == 64
        assert plot.kde_bandwidth == (0.5, 0.8)
        assert plot.contour_mass == 0.6

    def test_case_sensitive_mnemonics(self, tmp_path):
        cfg = load_config(write(tmp_path, "[features]\ncurves = Gr, rhoZ\n"))
        assert cfg.selection.mnemonics == ("Gr", "rhoZ")

    def test_unknown_section_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(write(tmp_path, "[clustering]\nk = 3\n"))

    def test_unknown_key_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(write(tmp_path, "[qc]\nsigma = 3\n"))

    def test_malformed_number_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(write(tmp_path, "[qc]\nsigma_threshold = lots\n"))

    def test_crossplot_requires_both_axes(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(write(tmp_path, "[crossplot.broken]\nx = GR\n"))

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(str(tmp_path / "nope.ini"))

    def test_malformed_ini_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(write(tmp_path, "curves = GR\n"))  # key before any section


class TestLoadWellSpec:
    def test_full_spec(self, tmp_path):
        spec, artifacts = load_well_spec(write(tmp_path, WELL_SPEC))
        assert spec.top == 1000.0 and spec.base == 1200.0
        assert spec.sample_interval == 0.25
        assert spec.compaction_gradient == 0.1
        assert spec.seed == 42
        assert spec.well_name == "DEMO"
        names = [f.name for f in spec.facies]
        assert names == ["sand", "shale"]
        assert spec.facies[0].log_means == {"GR": 30.0, "DT": 60.0}
        assert spec.facies[0].log_stds == {"GR": 5.0, "DT": 4.0}
        assert spec.facies[1].mean_bed_thickness == 10.0
        assert artifacts == {
            "washout_fraction": 0.02,
            "spike_fraction": 0.01,
            "seed": 43,  # defaults to the well seed + 1
        }

    def test_artifacts_section_optional(self, tmp_path):
        text = WELL_SPEC.split("[synth.artifacts]")[0]
        spec, artifacts = load_well_spec(write(tmp_path, text))
        assert artifacts == {}
        assert len(spec.facies) == 2

    def test_loaded_spec_generates_the_same_well(self, tmp_path):
        spec, _ = load_well_spec(write(tmp_path, WELL_SPEC))
        cs1, t1 = generate_well(spec)
        cs2, t2 = generate_well(spec)
        assert np.array_equal(t1, t2)
        for m in cs1.mnemonics:
            assert np.array_equal(cs1.curves[m], cs2.curves[m])

    def test_requires_synth_section(self, tmp_path):
        with pytest.raises(ConfigError):
            load_well_spec(write(tmp_path, "[synth.facies.sand]\nGR = 1, 1\n"))

    def test_requires_top_and_base(self, tmp_path):
        with pytest.raises(ConfigError):
            load_well_spec(write(tmp_path, "[synth]\ntop = 1000.0\n"))

    def test_requires_facies_sections(self, tmp_path):
        with pytest.raises(ConfigError):
            load_well_spec(write(tmp_path, "[synth]\ntop = 0.0\nbase = 10.0\n"))

    def test_facies_needs_bed_thickness(self, tmp_path):
        text = "[synth]\ntop = 0.0\nbase = 10.0\n[synth.facies.sand]\nGR = 1, 1\n"
        with pytest.raises(ConfigError):
            load_well_spec(write(tmp_path, text))

    def test_unknown_section_rejected(self, tmp_path):
        text = WELL_SPEC + "\n[synthetics]\nx = 1\n"
        with pytest.raises(ConfigError):
            load_well_spec(write(tmp_path, text))
