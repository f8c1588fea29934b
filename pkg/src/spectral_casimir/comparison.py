"""Proximity-force-approximation (PFA) estimates for the sphere-plane force.

Two textbook forms are provided:

``ideal_retarded``
    perfect conductors, retarded: ``F = -pi^3 hbar c R / (360 z^3)``
``hamaker_nonretarded``
    non-retarded with a Hamaker constant ``A``: ``F = -A R / (6 z^2)``

Forces are negative (attractive) and reported in pN.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from .errors import DomainError, ValidationError
from .modes_energy import ANALYTIC, PN_PER_EV_PER_NM, force
from .system import SystemSpec

HBAR_C_EV_NM = 197.3269804
IDEAL_RETARDED = "ideal_retarded"
HAMAKER_NONRETARDED = "hamaker_nonretarded"
VARIANTS = (IDEAL_RETARDED, HAMAKER_NONRETARDED)

RATIO_WINDOW = (1e2, 1e4)


@dataclass(frozen=True)
class PfaResult:
    force_pN: float
    variant: str
    radius_nm: float
    gap_nm: float
    hamaker_ev: float | None = None

    @property
    def force_ev_per_nm(self):
        return self.force_pN / PN_PER_EV_PER_NM


def pfa_force(radius_nm, gap_nm, variant=IDEAL_RETARDED, hamaker_ev=None) -> PfaResult:
    if not radius_nm > 0:
        raise ValidationError(f"radius must be > 0 nm, got {radius_nm!r}")
    if gap_nm == 0:
        raise DomainError("the proximity force approximation diverges at contact (z = 0)")
    if not gap_nm > 0:
        raise ValidationError(f"gap must be > 0 nm, got {gap_nm!r}")
    if variant == IDEAL_RETARDED:
        f = -(math.pi**3) * HBAR_C_EV_NM * radius_nm / (360.0 * gap_nm**3)
    elif variant == HAMAKER_NONRETARDED:
        if hamaker_ev is None or not hamaker_ev > 0:
            raise ValidationError("the Hamaker variant requires a Hamaker constant > 0 (eV)")
        f = -hamaker_ev * radius_nm / (6.0 * gap_nm**2)
    else:
        raise ValidationError(f"unknown PFA variant {variant!r}; expected one of {VARIANTS}")
    return PfaResult(f * PN_PER_EV_PER_NM, variant, float(radius_nm), float(gap_nm), hamaker_ev)


@dataclass(frozen=True)
class ComparisonReport:
    pfa_force_pN: float
    spectral_force_pN: float
    ratio: float | None
    in_window: bool
    applicable: bool
    variant: str
    system: dict

    def to_dict(self):
        return asdict(self)

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)


def ratio_report(pfa: PfaResult, spectral_force_pN: float, system: dict | None = None) -> ComparisonReport:
    """Build the ``|F_pfa| / |F_spectral|`` report from two forces."""
    applicable = spectral_force_pN != 0 and math.isfinite(spectral_force_pN)
    ratio = abs(pfa.force_pN) / abs(spectral_force_pN) if applicable else None
    in_window = ratio is not None and RATIO_WINDOW[0] <= ratio <= RATIO_WINDOW[1]
    return ComparisonReport(pfa.force_pN, spectral_force_pN, ratio, in_window, applicable,
                            pfa.variant, dict(system or {}))


def compare_with_spectral(system: SystemSpec, variant=IDEAL_RETARDED, hamaker_ev=None) -> ComparisonReport:
    if not system.gap_nm > 0:
        raise DomainError("PFA comparison needs z > 0")
    pfa = pfa_force(system.radius_nm, system.gap_nm, variant, hamaker_ev)
    spectral = force(system, ANALYTIC).force_pN
    return ratio_report(pfa, spectral, system.snapshot())
