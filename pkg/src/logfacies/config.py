"""Plain-text configuration files (INI key-value format).

One file can configure the whole pipeline: feature curves, QC thresholds,
porosity constants, clustering controls, facies labels, and crossplots.
Synthetic well specs use the same format with [synth] sections. Unknown
sections and keys raise ConfigError so typos fail loudly instead of
silently falling back to defaults.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field

from .cluster import KmeansConfig
from .errors import ConfigError
from .facies import FaciesScheme
from .las import CurveSelection
from .porosity import PetroParams
from .qc import QcConfig
from .report import DEFAULT_CROSSPLOTS, CrossplotSpec
from .synth import FaciesSpec, WellSpec

DEFAULT_FEATURE_CURVES = ("GR", "RHOZ", "NPHI", "DT", "PEFZ", "AHT60")


@dataclass(frozen=True)
class PipelineConfig:
    """Everything a full run needs besides the LAS file itself.

    scheme None means: pick the built-in label set for whatever k the run
    settles on.
    """

    selection: CurveSelection = field(
        default_factory=lambda: CurveSelection(DEFAULT_FEATURE_CURVES)
    )
    qc: QcConfig = field(default_factory=QcConfig)
    petro: PetroParams = field(default_factory=PetroParams)
    kmeans: KmeansConfig = field(default_factory=lambda: KmeansConfig(k=4))
    fixed_k: int | None = None
    scheme: FaciesScheme | None = None
    gr_mnemonic: str = "GR"
    rhoz_mnemonic: str = "RHOZ"
    crossplots: tuple[CrossplotSpec, ...] = DEFAULT_CROSSPLOTS


def _read_ini(path: str) -> configparser.ConfigParser:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keep curve mnemonics case-sensitive
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc
    return parser


class _Section:
    """One INI section with typed getters and unknown-key detection."""

    def __init__(self, name: str, data: dict[str, str]):
        self.name = name
        self.data = dict(data)
        self.seen: set[str] = set()

    def _raw(self, key: str):
        self.seen.add(key)
        return self.data.get(key)

    def text(self, key: str, default=None):
        value = self._raw(key)
        return default if value is None else value.strip()

    def number(self, key: str, default=None, kind=float):
        value = self._raw(key)
        if value is None:
            return default
        try:
            return kind(value.strip())
        except ValueError:
            raise ConfigError(
                f"[{self.name}] {key}: expected a {kind.__name__}, got {value!r}"
            ) from None

    def integer(self, key: str, default=None):
        return self.number(key, default, kind=int)

    def names(self, key: str, default=None):
        value = self._raw(key)
        if value is None:
            return default
        items = tuple(part.strip() for part in value.split(",") if part.strip())
        if not items:
            raise ConfigError(f"[{self.name}] {key}: expected a comma-separated list")
        return items

    def pair(self, key: str, default=None):
        value = self._raw(key)
        if value is None:
            return default
        parts = [part.strip() for part in value.split(",")]
        if len(parts) != 2:
            raise ConfigError(f"[{self.name}] {key}: expected 'mean, std'")
        try:
            return float(parts[0]), float(parts[1])
        except ValueError:
            raise ConfigError(f"[{self.name}] {key}: expected two numbers") from None

    def reject_unknown(self):
        unknown = set(self.data) - self.seen
        if unknown:
            raise ConfigError(
                f"[{self.name}] unknown keys: {', '.join(sorted(unknown))}"
            )


def _section(parser, name: str) -> _Section:
    data = dict(parser[name]) if parser.has_section(name) else {}
    return _Section(name, data)


def load_config(path: str) -> PipelineConfig:
    """Load a pipeline configuration, filling defaults for absent keys."""
    parser = _read_ini(path)
    known = {"features", "qc", "petro", "kmeans", "facies"}
    for section in parser.sections():
        if section not in known and not section.startswith("crossplot."):
            raise ConfigError(f"unknown config section [{section}]")

    feats = _section(parser, "features")
    selection = CurveSelection(
        mnemonics=feats.names("curves", DEFAULT_FEATURE_CURVES),
        caliper_mnemonic=feats.text("caliper"),
        bit_size=feats.number("bit_size"),
    )
    feats.reject_unknown()

    qc_sec = _section(parser, "qc")
    qc = QcConfig(
        sigma_threshold=qc_sec.number("sigma_threshold", 3.0),
        washout_margin=qc_sec.number("washout_margin", 2.0),
        std_mode=qc_sec.text("std_mode", "population"),
    )
    qc_sec.reject_unknown()

    petro_sec = _section(parser, "petro")
    petro = PetroParams(
        rho_ma=petro_sec.number("rho_matrix", 2.71),
        rho_f=petro_sec.number("rho_fluid", 1.0),
        rhoz_mnemonic=petro_sec.text("rhoz_curve", "RHOZ"),
        nphi_mnemonic=petro_sec.text("nphi_curve", "NPHI"),
        nphi_unit=petro_sec.text("nphi_unit", "auto"),
    )
    petro_sec.reject_unknown()

    km_sec = _section(parser, "kmeans")
    fixed_k = km_sec.integer("k")
    kmeans = KmeansConfig(
        k=fixed_k if fixed_k is not None else 4,
        n_restarts=km_sec.integer("n_restarts", 25),
        max_iter=km_sec.integer("max_iter", 300),
        tol=km_sec.number("tol", 1e-6),
        seed=km_sec.integer("seed", 0),
        init=km_sec.text("init", "kmeans++"),
    )
    km_sec.reject_unknown()

    fac_sec = _section(parser, "facies")
    labels = fac_sec.names("labels")
    gr = fac_sec.text("gr_curve", "GR")
    rhoz = fac_sec.text("rhoz_curve", "RHOZ")
    scheme = FaciesScheme(labels, gr, rhoz) if labels else None
    fac_sec.reject_unknown()

    crossplots = []
    for name in parser.sections():
        if not name.startswith("crossplot."):
            continue
        sec = _Section(name, dict(parser[name]))
        x = sec.text("x")
        y = sec.text("y")
        if x is None or y is None:
            raise ConfigError(f"[{name}] needs both x and y curve names")
        bandwidth = sec.text("bandwidth", "scott")
        if bandwidth != "scott":
            sec.seen.discard("bandwidth")
            bandwidth = sec.pair("bandwidth")
        crossplots.append(CrossplotSpec(
            x_mnemonic=x,
            y_mnemonic=y,
            kde_grid=sec.integer("kde_grid", 128),
            kde_bandwidth=bandwidth,
            contour_mass=sec.number("contour_mass", 0.75),
        ))
        sec.reject_unknown()

    return PipelineConfig(
        selection=selection,
        qc=qc,
        petro=petro,
        kmeans=kmeans,
        fixed_k=fixed_k,
        scheme=scheme,
        gr_mnemonic=gr,
        rhoz_mnemonic=rhoz,
        crossplots=tuple(crossplots) if crossplots else DEFAULT_CROSSPLOTS,
    )


def load_well_spec(path: str) -> tuple[WellSpec, dict]:
    """Load a synthetic well spec plus optional artifact-injection settings.

    Returns (WellSpec, artifacts) where artifacts is {} or has keys
    washout_fraction, spike_fraction, seed from an [synth.artifacts]
    section.
    """
    parser = _read_ini(path)
    if not parser.has_section("synth"):
        raise ConfigError("well spec needs a [synth] section")
    for name in parser.sections():
        if name != "synth" and name != "synth.artifacts" and not name.startswith("synth.facies."):
            raise ConfigError(f"unknown config section [{name}]")

    synth = _section(parser, "synth")
    top = synth.number("top")
    base = synth.number("base")
    if top is None or base is None:
        raise ConfigError("[synth] needs top and base depths")
    interval = synth.number("sample_interval", 0.1524)
    gradient = synth.number("compaction_gradient", 0.0)
    seed = synth.integer("seed", 0)
    well_name = synth.text("well_name", "SYNTHETIC")
    synth.reject_unknown()

    facies = []
    for name in parser.sections():
        if not name.startswith("synth.facies."):
            continue
        label = name[len("synth.facies."):]
        sec = _Section(name, dict(parser[name]))
        thickness = sec.number("mean_bed_thickness")
        if thickness is None:
            raise ConfigError(f"[{name}] needs mean_bed_thickness")
        means, stds = {}, {}
        for key in sec.data:
            if key == "mean_bed_thickness":
                continue
            means[key], stds[key] = sec.pair(key)
        if not means:
            raise ConfigError(f"[{name}] defines no log curves")
        facies.append(FaciesSpec(label, means, stds, thickness))
    if not facies:
        raise ConfigError("well spec needs at least one [synth.facies.NAME] section")

    spec = WellSpec(
        top=top,
        base=base,
        facies=tuple(facies),
        sample_interval=interval,
        compaction_gradient=gradient,
        seed=seed,
        well_name=well_name,
    )

    artifacts = {}
    if parser.has_section("synth.artifacts"):
        art = _section(parser, "synth.artifacts")
        artifacts = {
            "washout_fraction": art.number("washout_fraction", 0.0),
            "spike_fraction": art.number("spike_fraction", 0.0),
            "seed": art.integer("seed", seed + 1),
        }
        art.reject_unknown()
    return spec, artifacts
