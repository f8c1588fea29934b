"""Proper-mode frequencies, the mode-sum interaction energy and the force.

The interaction energy is the zero-point energy of the coupled modes minus
that of the isolated sphere (three modes at ``u = n0``):

    E = sum_s m_s w_s / 2 - 3 w' / 2.

Damping is ignored on this route; ``w_s`` solves the undamped Drude
``u(w_s) = n_s``. Dissipation is handled by :mod:`spectral_casimir.dos`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, UnsupportedModelError, ValidationError
from .materials import DRUDE, DielectricModel, drude_mode_frequency
from .spectral_core import (
    PARALLEL,
    PERPENDICULAR,
    ISOTROPIC,
    SpectralDecomposition,
    eigen_decompose,
    interaction_matrix,
)
from .system import SystemSpec

# 1 eV/nm = 1.602176634e-19 J / 1e-9 m = 1.602176634e-10 N
PN_PER_EV_PER_NM = 160.2176634

ANALYTIC = "analytic"
CENTRAL_DIFFERENCE = "central_difference"
DERIVATIVE_METHODS = (ANALYTIC, CENTRAL_DIFFERENCE)

MODE_SUM = "mode_sum"
DOS = "dos"


@dataclass(frozen=True)
class ModeSpectrum:
    frequencies: tuple  # eV
    multiplicities: tuple
    labels: tuple
    shifts: tuple  # frequencies - reference_omega, free of cancellation
    reference_omega: float
    reference_multiplicity: int = 3

    def modes(self):
        return list(zip(self.frequencies, self.multiplicities))

    def _by_label(self, label):
        for w, lab in zip(self.frequencies, self.labels):
            if lab in (label, ISOTROPIC):
                return w
        raise KeyError(label)

    @property
    def omega_parallel(self):
        return self._by_label(PARALLEL)

    @property
    def omega_perpendicular(self):
        return self._by_label(PERPENDICULAR)


@dataclass(frozen=True)
class EnergyResult:
    energy_ev: float
    system: SystemSpec
    method: str = MODE_SUM
    at_contact: bool = False
    error_estimate: float | None = None
    decomposition: SpectralDecomposition | None = None
    modes: ModeSpectrum | None = None


@dataclass(frozen=True)
class ForceResult:
    """Force on the sphere along the surface normal; negative pulls it toward the substrate."""

    force_ev_per_nm: float
    method: str
    system: SystemSpec
    at_contact: bool = False

    @property
    def force_pN(self):
        return self.force_ev_per_nm * PN_PER_EV_PER_NM


def _denominator(n, ambient):
    return ambient - n * (ambient - 1.0)


def _frequency_shift(shift, n, reference, omega_p, ambient):
    # w(n) - w(n0) = wp eps_a (n - n0) / (g g0 (sqrt(n/g) + sqrt(n0/g0))),  g = eps_a - n (eps_a - 1)
    g = _denominator(n, ambient)
    g0 = _denominator(reference, ambient)
    return omega_p * ambient * shift / (g * g0 * (math.sqrt(n / g) + math.sqrt(reference / g0)))


def _frequency_slope(n, omega_p, ambient):
    """d w / d n for the undamped Drude inversion."""
    g = _denominator(n, ambient)
    return omega_p * ambient / (2.0 * g * g * math.sqrt(n / g))


def _require_drude(sphere):
    if sphere.kind != DRUDE:
        raise UnsupportedModelError(
            f"mode frequencies need a Drude sphere; got {sphere.kind} "
            "(u(w) = n_s has no solution for a frequency-independent permittivity)"
        )


def mode_frequencies(decomposition: SpectralDecomposition, sphere: DielectricModel,
                     ambient=1.0) -> ModeSpectrum:
    _require_drude(sphere)
    wp = sphere.omega_p
    ref = decomposition.reference
    freqs, shifts = [], []
    for n, dn in zip(decomposition.eigenvalues, decomposition.shifts):
        if not n > 0:
            raise DomainError(f"eigenvalue {n!r} is not positive; no real mode frequency")
        freqs.append(drude_mode_frequency(n, wp, ambient))
        shifts.append(_frequency_shift(dn, n, ref, wp, ambient))
    return ModeSpectrum(
        tuple(freqs),
        tuple(decomposition.multiplicities),
        tuple(decomposition.labels),
        tuple(shifts),
        drude_mode_frequency(ref, wp, ambient),
    )


def decompose(system: SystemSpec) -> SpectralDecomposition:
    return eigen_decompose(interaction_matrix(system.geometry, system.contrast_factor))


def interaction_energy(system: SystemSpec) -> EnergyResult:
    """Mode-sum interaction energy in eV (negative = bound)."""
    _require_drude(system.sphere)
    dec = decompose(system)
    modes = mode_frequencies(dec, system.sphere, system.ambient)
    energy = 0.0
    for m, dw in zip(modes.multiplicities, modes.shifts):
        energy += 0.5 * m * dw
    return EnergyResult(energy, system, MODE_SUM, system.at_contact, None, dec, modes)


def _central_step(system):
    return max(1e-5 * (system.gap_nm + system.radius_nm), 1e-8)


def energy_derivative(system: SystemSpec, method=ANALYTIC):
    """``dE/dz`` in eV/nm."""
    _require_drude(system.sphere)
    if method == ANALYTIC:
        # K scales as (z+R)^-3, hence d(n_s - n0)/dz = -3 (n_s - n0) / (z + R)
        dec = decompose(system)
        total = 0.0
        for n, dn, m in zip(dec.eigenvalues, dec.shifts, dec.multiplicities):
            dndz = -3.0 * dn / (system.gap_nm + system.radius_nm)
            total += 0.5 * m * _frequency_slope(n, system.sphere.omega_p, system.ambient) * dndz
        return total
    if method == CENTRAL_DIFFERENCE:
        h = _central_step(system)
        if system.gap_nm - h < 0:
            raise DomainError(
                f"central difference at z={system.gap_nm!r} nm would cross z=0 (step {h:g} nm); "
                "use the analytic derivative"
            )
        e_plus = interaction_energy(system.at_gap(system.gap_nm + h)).energy_ev
        e_minus = interaction_energy(system.at_gap(system.gap_nm - h)).energy_ev
        return (e_plus - e_minus) / (2.0 * h)
    raise ValidationError(f"unknown derivative method {method!r}; expected one of {DERIVATIVE_METHODS}")


def force(system: SystemSpec, method=ANALYTIC) -> ForceResult:
    """``F = -dE/dz``; attraction is negative."""
    return ForceResult(-energy_derivative(system, method), method, system, system.at_contact)
