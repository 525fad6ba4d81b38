"""Density, neutron, and average porosity from bulk-density and neutron logs.

Density porosity is (rho_ma - rho_b) / (rho_ma - rho_f); neutron porosity is
the NPHI reading taken at face value; the average is their arithmetic mean.
Raw values outside [0, 1] are flagged, never clamped.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .las import CurveSet

_NPHI_UNIT_MODES = ("auto", "fraction", "percent")
_PERCENT_UNITS = frozenset({"PERC", "PERCENT", "PCT", "%"})


@dataclass(frozen=True)
class PetroParams:
    """Matrix/fluid densities and curve bindings for the porosity equations."""

    rho_ma: float = 2.71  # limestone matrix, g/cm3
    rho_f: float = 1.0    # fluid, g/cm3
    rhoz_mnemonic: str = "RHOZ"
    nphi_mnemonic: str = "NPHI"
    nphi_unit: str = "auto"

    def __post_init__(self):
        if not (self.rho_ma > self.rho_f > 0):
            raise ConfigError(
                f"need rho_ma > rho_f > 0, got rho_ma={self.rho_ma}, rho_f={self.rho_f}"
            )
        if self.nphi_unit not in _NPHI_UNIT_MODES:
            raise ConfigError(f"nphi_unit must be one of {_NPHI_UNIT_MODES}")


@dataclass(frozen=True)
class PorosityProfile:
    """Per-depth porosity estimates with mask and out-of-range bookkeeping.

    Value arrays hold NaN at masked positions; the masks are authoritative.
    clip_flags marks samples whose raw phi_d or phi_n fell outside [0, 1];
    values are reported as computed.
    """

    depth: np.ndarray
    phi_d: np.ndarray
    phi_n: np.ndarray
    phi_avg: np.ndarray
    phi_d_mask: np.ndarray
    phi_n_mask: np.ndarray
    phi_avg_mask: np.ndarray
    clip_flags: np.ndarray


def density_porosity(rho_b, p: PetroParams):
    """Porosity implied by bulk density: (rho_ma - rho_b) / (rho_ma - rho_f)."""
    return (p.rho_ma - np.asarray(rho_b, dtype=float)) / (p.rho_ma - p.rho_f)


def neutron_porosity(nphi):
    """Neutron porosity is the NPHI log value itself (limestone units)."""
    return np.asarray(nphi, dtype=float) + 0.0


def average_porosity(phi_d, phi_n):
    """Arithmetic mean of density and neutron porosity."""
    return (np.asarray(phi_d, dtype=float) + np.asarray(phi_n, dtype=float)) / 2.0


def porosity_profile(cs: CurveSet, p: PetroParams) -> PorosityProfile:
    """Apply the three porosity relations sample by sample.

    Masked inputs yield masked outputs; phi_avg is only defined where both
    phi_d and phi_n are observed. NPHI curves logged in percent are divided
    by 100 (driven by the LAS unit when nphi_unit is "auto").
    """
    rho_b = cs.require(p.rhoz_mnemonic)
    nphi = cs.require(p.nphi_mnemonic).astype(float)
    d_mask = cs.mask(p.rhoz_mnemonic).copy()
    n_mask = cs.mask(p.nphi_mnemonic).copy()

    if _nphi_is_percent(cs, p):
        nphi = nphi / 100.0

    phi_d = np.full(cs.n_rows, np.nan)
    phi_n = np.full(cs.n_rows, np.nan)
    phi_avg = np.full(cs.n_rows, np.nan)
    phi_d[~d_mask] = density_porosity(rho_b[~d_mask], p)
    phi_n[~n_mask] = neutron_porosity(nphi[~n_mask])
    avg_mask = d_mask | n_mask
    phi_avg[~avg_mask] = average_porosity(phi_d[~avg_mask], phi_n[~avg_mask])

    clip = np.zeros(cs.n_rows, dtype=bool)
    clip |= ~d_mask & ((phi_d < 0.0) | (phi_d > 1.0))
    clip |= ~n_mask & ((phi_n < 0.0) | (phi_n > 1.0))

    return PorosityProfile(
        depth=cs.depth.copy(),
        phi_d=phi_d, phi_n=phi_n, phi_avg=phi_avg,
        phi_d_mask=d_mask, phi_n_mask=n_mask, phi_avg_mask=avg_mask,
        clip_flags=clip,
    )


def _nphi_is_percent(cs: CurveSet, p: PetroParams) -> bool:
    if p.nphi_unit == "percent":
        return True
    if p.nphi_unit == "fraction":
        return False
    unit = cs.units.get(p.nphi_mnemonic, "").strip().upper()
    return unit in _PERCENT_UNITS or "%" in unit


def porosity_profile_to_csv(pp: PorosityProfile) -> str:
    """CSV dump: depth,phi_d,phi_n,phi_avg,clipped with masked cells empty."""
    out = io.StringIO()
    out.write("depth,phi_d,phi_n,phi_avg,clipped\n")
    for i in range(len(pp.depth)):
        cells = [
            repr(float(pp.depth[i])),
            "" if pp.phi_d_mask[i] else repr(float(pp.phi_d[i])),
            "" if pp.phi_n_mask[i] else repr(float(pp.phi_n[i])),
            "" if pp.phi_avg_mask[i] else repr(float(pp.phi_avg[i])),
            str(int(pp.clip_flags[i])),
        ]
        out.write(",".join(cells) + "\n")
    return out.getvalue()
