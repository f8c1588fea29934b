"""Density of states of the damped sphere-image system and the energy it implies.

Two routes give ``rho(w)`` for a Drude sphere in vacuum:

* ``lorentzian_sum`` -- the explicit broadened form

      rho(w) = (2 wp / pi) sum_s m_s sqrt(n_s) (w g) / ((w^2 - wp^2 n_s)^2 + (w g)^2)

* ``greens_trace`` -- ``-(1/pi) Im Tr G(u(w)) * (2 w / wp^2)`` with the
  damped ``u(w) = w (w + i g) / wp^2``.

Both are sums over modes of a single-resonance profile, so energies and
normalisations are computed one resonance at a time by adaptive
Gauss-Kronrod quadrature on ``[0, omega_max]`` plus an asymptotic tail.
The two routes differ off resonance by the factor ``w / w_s``.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._io import atomic_write_text, format_number
from .errors import DomainError, UnsupportedModelError, ValidationError
from .materials import DRUDE, DielectricModel, spectral_variable
from .modes_energy import DOS, EnergyResult, _require_drude, decompose
from .spectral_core import SpectralDecomposition, greens_trace, reference_decomposition
from .system import SystemSpec

LORENTZIAN = "lorentzian_sum"
GREENS = "greens_trace"
ROUTES = (LORENTZIAN, GREENS)

_RHO_KIND = {LORENTZIAN: kernels.LORENTZ_RHO, GREENS: kernels.GREENS_RHO}
_ENERGY_KIND = {LORENTZIAN: kernels.LORENTZ_ENERGY, GREENS: kernels.GREENS_ENERGY}


@dataclass(frozen=True)
class QuadratureSpec:
    """Settings for the frequency integrals.

    ``omega_max`` (eV) defaults to ``10 * omega_p`` of the sphere and must be
    at least ``5 * omega_p``; the part beyond it is added in closed form.
    """

    omega_max: float | None = None
    rtol: float = 1e-8
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not 0 < self.rtol <= 1e-4:
            raise ValidationError(f"quadrature rtol must lie in (0, 1e-4], got {self.rtol!r}")
        if self.max_subdivisions < 1:
            raise ValidationError("max_subdivisions must be >= 1")
        if self.omega_max is not None and not self.omega_max > 0:
            raise ValidationError("omega_max must be > 0")

    def upper_limit(self, omega_p):
        om = 10.0 * omega_p if self.omega_max is None else self.omega_max
        if om < 5.0 * omega_p:
            raise ValidationError(f"omega_max={om:g} eV is below 5 * omega_p = {5 * omega_p:g} eV")
        return om


@dataclass(frozen=True)
class DOSProfile:
    omega: np.ndarray  # eV
    rho: np.ndarray  # 1/eV
    damping_ratio: float
    route: str

    def integral(self):
        """Trapezoid integral of ``rho`` over the sampled grid."""
        return float(np.trapezoid(self.rho, self.omega))

    def to_csv_text(self):
        buf = io.StringIO()
        buf.write("omega_ev,rho_per_ev\n")
        for w, r in zip(self.omega, self.rho):
            buf.write(f"{format_number(w)},{format_number(r)}\n")
        return buf.getvalue()

    def to_csv(self, path):
        return atomic_write_text(path, self.to_csv_text())


def _damped_drude(sphere):
    if sphere.kind != DRUDE:
        raise UnsupportedModelError("the density of states is defined for a Drude sphere only")
    if not sphere.damping_ratio > 0:
        raise DomainError(
            "damping_ratio must be > 0: the density of states collapses to delta "
            "functions without damping (use mode_frequencies instead)"
        )


def _check_grid(grid):
    omega = np.asarray(grid, dtype=float)
    if omega.ndim != 1 or omega.size < 2:
        raise ValidationError("frequency grid must be a 1-d array with at least two points")
    if np.any(np.diff(omega) <= 0):
        raise ValidationError("frequency grid must be strictly increasing")
    if omega[0] <= 0:
        raise DomainError("frequency grid must be positive")
    return omega


def dos_lorentzian(decomposition: SpectralDecomposition, sphere: DielectricModel, grid) -> DOSProfile:
    _damped_drude(sphere)
    omega = _check_grid(grid)
    rho = kernels.lorentzian_rho(
        omega, sphere.omega_p, np.asarray(decomposition.eigenvalues),
        np.asarray(decomposition.multiplicities, dtype=float), sphere.damping_rate,
    )
    return DOSProfile(omega, rho, sphere.damping_ratio, LORENTZIAN)


def dos_greens(decomposition: SpectralDecomposition, sphere: DielectricModel, grid) -> DOSProfile:
    _damped_drude(sphere)
    omega = _check_grid(grid)
    u = spectral_variable(sphere, 1.0, omega)
    trace = greens_trace(u, decomposition)
    rho = -np.imag(trace) / np.pi * (2.0 * omega / sphere.omega_p**2)
    return DOSProfile(omega, rho, sphere.damping_ratio, GREENS)


def dos_profile(decomposition, sphere, grid, route=LORENTZIAN):
    if route == LORENTZIAN:
        return dos_lorentzian(decomposition, sphere, grid)
    if route == GREENS:
        return dos_greens(decomposition, sphere, grid)
    raise ValidationError(f"unknown DOS route {route!r}; expected one of {ROUTES}")


def _tail(kind, omega_s, gamma, omega_p, upper):
    # three leading terms of the large-w expansion, integrated from `upper` to infinity;
    # 1 / ((w^2 - ws^2)^2 + (w g)^2) = w^-4 (1 + a w^-2 + b w^-4 + c w^-6 + ...)
    a = 2.0 * omega_s**2 - gamma**2
    b = a * a - omega_s**4
    c = a**3 - 2.0 * a * omega_s**4
    u2 = upper * upper
    if kind == kernels.LORENTZ_RHO:
        return 2.0 / math.pi * omega_s * gamma / u2 * (0.5 + a / (4.0 * u2) + b / (6.0 * u2 * u2))
    if kind == kernels.LORENTZ_ENERGY:
        return omega_s * gamma / math.pi / upper * (1.0 + a / (3.0 * u2) + b / (5.0 * u2 * u2))
    if kind == kernels.GREENS_RHO:
        return 2.0 / math.pi * gamma / upper * (1.0 + a / (3.0 * u2) + b / (5.0 * u2 * u2))
    p2 = omega_p**2
    return gamma / math.pi / u2 * (
        (a + p2) / 2.0 + (b - p2 * p2) / (4.0 * u2) + (c + p2**3) / (6.0 * u2 * u2)
    )


def _breakpoints(omega_s, gamma, upper):
    pts = {0.0, upper, omega_s}
    for k in (1.0, 10.0, 100.0, 1000.0):
        pts.add(omega_s - k * gamma)
        pts.add(omega_s + k * gamma)
    return np.array(sorted(p for p in pts if 0.0 <= p <= upper))


def mode_integral(kind, omega_s, gamma, omega_p, quad: QuadratureSpec, upper=None):
    """Integral over ``(0, inf)`` of one single-resonance integrand.

    Returns ``(value, error_estimate)``; the error estimate covers the
    quadrature on ``[0, upper]`` only.
    """
    if upper is None:
        upper = quad.upper_limit(omega_p)
    value, err, _ = kernels.integrate_mode(
        kind, omega_s, gamma, omega_p, _breakpoints(omega_s, gamma, upper),
        rtol=quad.rtol, limit=quad.max_subdivisions,
    )
    return value + _tail(kind, omega_s, gamma, omega_p, upper), err


def _mode_sum(kind, decomposition, sphere, quad):
    wp = sphere.omega_p
    gamma = sphere.damping_rate
    upper = quad.upper_limit(wp)
    total = 0.0
    error = 0.0
    for n, m in zip(decomposition.eigenvalues, decomposition.multiplicities):
        value, err = mode_integral(kind, wp * math.sqrt(n), gamma, wp, quad, upper)
        total += m * value
        error += m * err
    return total, error


def total_states(decomposition: SpectralDecomposition, sphere: DielectricModel,
                 route=LORENTZIAN, quad: QuadratureSpec | None = None):
    """``int_0^inf rho(w) dw`` and its quadrature error estimate."""
    _damped_drude(sphere)
    if route not in ROUTES:
        raise ValidationError(f"unknown DOS route {route!r}; expected one of {ROUTES}")
    return _mode_sum(_RHO_KIND[route], decomposition, sphere, quad or QuadratureSpec())


def dos_interaction_energy(system: SystemSpec, quad: QuadratureSpec | None = None,
                           route=LORENTZIAN) -> EnergyResult:
    """``V(z) - V(inf)`` with ``V = (1/2) int_0^inf w rho(w) dw`` (eV).

    Both terms use the same damping and quadrature settings. On the
    ``greens_trace`` route ``V`` itself diverges logarithmically; every mode
    is then integrated against a common regulator that cancels in the
    difference because both spectra carry three modes in total.
    """
    _require_drude(system.sphere)
    _damped_drude(system.sphere)
    if system.ambient != 1.0:
        raise UnsupportedModelError("the density-of-states route is implemented for a vacuum ambient only")
    if route not in ROUTES:
        raise ValidationError(f"unknown DOS route {route!r}; expected one of {ROUTES}")
    quad = quad or QuadratureSpec()
    kind = _ENERGY_KIND[route]
    dec = decompose(system)
    v_z, err_z = _mode_sum(kind, dec, system.sphere, quad)
    v_inf, err_inf = _mode_sum(kind, reference_decomposition(), system.sphere, quad)
    return EnergyResult(v_z - v_inf, system, DOS, system.at_contact, err_z + err_inf, dec, None)
