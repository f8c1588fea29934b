"""Dielectric models, the spectral variable and the substrate contrast factor.

Frequencies and energies are in eV (hbar = 1). The Drude damping rate is
stored as the dimensionless ratio ``1 / (tau * omega_p)`` so that the rate in
eV is ``damping_ratio * omega_p``.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from .errors import (
    DomainError,
    SingularValueError,
    UnknownMaterialError,
    UnsupportedModelError,
    ValidationError,
)

DRUDE = "drude"
CONSTANT = "constant"
PERFECT_CONDUCTOR = "perfect_conductor"
VARIANTS = (DRUDE, CONSTANT, PERFECT_CONDUCTOR)


@dataclass(frozen=True)
class DielectricModel:
    """Local, isotropic permittivity.

    Use the :meth:`drude`, :meth:`constant` and :meth:`perfect_conductor`
    constructors rather than filling the fields by hand.
    """

    kind: str
    omega_p: float | None = None
    damping_ratio: float | None = None
    epsilon: float | None = None

    def __post_init__(self):
        if self.kind == DRUDE:
            if self.omega_p is None or not self.omega_p > 0:
                raise ValidationError(f"Drude plasma frequency must be > 0, got {self.omega_p!r}")
            if self.damping_ratio is None or not self.damping_ratio >= 0:
                raise ValidationError(f"damping ratio must be >= 0, got {self.damping_ratio!r}")
        elif self.kind == CONSTANT:
            if self.epsilon is None or not self.epsilon > 0:
                raise ValidationError(f"constant permittivity must be > 0, got {self.epsilon!r}")
        elif self.kind != PERFECT_CONDUCTOR:
            raise ValidationError(f"unknown dielectric variant {self.kind!r}; expected one of {VARIANTS}")

    @classmethod
    def drude(cls, omega_p, damping_ratio=0.0):
        return cls(DRUDE, omega_p=float(omega_p), damping_ratio=float(damping_ratio))

    @classmethod
    def constant(cls, epsilon):
        return cls(CONSTANT, epsilon=float(epsilon))

    @classmethod
    def perfect_conductor(cls):
        return cls(PERFECT_CONDUCTOR)

    @property
    def damping_rate(self):
        """Drude damping rate ``1/tau`` in eV."""
        if self.kind != DRUDE:
            raise UnsupportedModelError(f"{self.kind} model has no damping rate")
        return self.damping_ratio * self.omega_p

    def undamped(self):
        if self.kind != DRUDE:
            return self
        return DielectricModel.drude(self.omega_p, 0.0)

    def with_damping(self, damping_ratio):
        if self.kind != DRUDE:
            raise UnsupportedModelError(f"cannot set damping on a {self.kind} model")
        return DielectricModel.drude(self.omega_p, damping_ratio)

    def describe(self):
        if self.kind == DRUDE:
            return f"drude(omega_p={self.omega_p:g} eV, damping_ratio={self.damping_ratio:g})"
        if self.kind == CONSTANT:
            return f"constant(epsilon={self.epsilon:g})"
        return "perfect_conductor"


def _check_ambient(ambient):
    if not ambient > 0:
        raise ValidationError(f"ambient permittivity must be > 0, got {ambient!r}")


def _scalar_or_array(value, like):
    return complex(value[()]) if np.ndim(like) == 0 else value


def epsilon_at(model: DielectricModel, omega):
    """Complex permittivity of ``model`` at photon energy ``omega`` (eV).

    Accepts a scalar or an array of frequencies. Drude:
    ``1 - wp^2 / (w (w + i g))`` with ``g = damping_ratio * wp``.
    """
    if model.kind == PERFECT_CONDUCTOR:
        raise UnsupportedModelError("a perfect conductor has no finite permittivity")
    w = np.asarray(omega, dtype=float)
    if model.kind == CONSTANT:
        return _scalar_or_array(np.full(w.shape, complex(model.epsilon)), omega)
    if np.any(w <= 0):
        raise DomainError("Drude permittivity requires omega > 0")
    g = model.damping_rate
    out = 1.0 - model.omega_p**2 / (w * (w + 1j * g))
    return _scalar_or_array(out, omega)


def spectral_variable(sphere: DielectricModel, ambient, omega):
    """``u(w) = [1 - eps_sphere(w) / eps_ambient]^-1`` (scalar or array).

    For a Drude sphere the expression is rearranged to
    ``eps_a w (w + i g) / ((eps_a - 1) w (w + i g) + wp^2)`` which is exact
    (no cancellation) and reduces to ``w (w + i g) / wp^2`` in vacuum.
    """
    _check_ambient(ambient)
    if sphere.kind == PERFECT_CONDUCTOR:
        raise UnsupportedModelError("spectral variable is undefined for a perfect conductor")
    w = np.asarray(omega, dtype=float)
    if sphere.kind == CONSTANT:
        den = np.full(w.shape, 1.0 - sphere.epsilon / ambient, dtype=complex)
        num = np.ones(w.shape, dtype=complex)
    else:
        if np.any(w <= 0):
            raise DomainError("Drude spectral variable requires omega > 0")
        ww = w * (w + 1j * sphere.damping_rate)
        num = ambient * ww
        den = (ambient - 1.0) * ww + sphere.omega_p**2
    if np.any(den == 0):
        raise SingularValueError("eps_sphere equals eps_ambient: u(omega) has a pole")
    return _scalar_or_array(num / den, omega)


def drude_mode_frequency(n, omega_p, ambient=1.0):
    """Invert the undamped Drude ``u(w) = n`` for ``w`` (eV).

    ``w^2 = n wp^2 / (eps_a - n (eps_a - 1))``; in vacuum ``w = wp sqrt(n)``.
    """
    _check_ambient(ambient)
    n = np.asarray(n, dtype=float)
    den = ambient - n * (ambient - 1.0)
    if np.any(n <= 0) or np.any(den <= 0):
        raise DomainError("no real Drude mode for this eigenvalue")
    out = omega_p * np.sqrt(n / den)
    return float(out) if out.ndim == 0 else out


def contrast_factor(substrate: DielectricModel, ambient=1.0):
    """Image-dipole strength ``(eps_a - eps_sub) / (eps_a + eps_sub)``.

    Only frequency-independent substrates are accepted; a perfect conductor
    gives exactly ``-1``.
    """
    _check_ambient(ambient)
    if substrate.kind == PERFECT_CONDUCTOR:
        return -1.0
    if substrate.kind != CONSTANT:
        raise UnsupportedModelError(
            "substrate must be a constant permittivity or a perfect conductor "
            "(frequency-dependent contrast factors are not supported)"
        )
    return (ambient - substrate.epsilon) / (ambient + substrate.epsilon)


# tabulated plasma energies (eV) and (tau * omega_p)^-1
PRESETS = MappingProxyType({
    "K": DielectricModel.drude(3.80, 0.105),
    "Au": DielectricModel.drude(8.55, 0.0126),
    "Ag": DielectricModel.drude(9.60, 0.00188),
    "Al": DielectricModel.drude(15.80, 0.04),
    "Al2O3": DielectricModel.constant(3.13),
    "TiO2": DielectricModel.constant(7.81),
    "Inf": DielectricModel.perfect_conductor(),
})


class MaterialLibrary(Mapping):
    """Case-insensitive name -> :class:`DielectricModel` lookup.

    Presets cannot be replaced; user materials are added with
    :meth:`register` and keep the spelling they were registered with.
    """

    def __init__(self, extra=None):
        self._entries = {}
        for name, model in PRESETS.items():
            self._entries[name.lower()] = (name, model)
        for name, model in (extra or {}).items():
            self.register(name, model)

    def register(self, name, model):
        if not isinstance(model, DielectricModel):
            raise ValidationError(f"material {name!r} must be a DielectricModel")
        key = name.strip().lower()
        if not key:
            raise ValidationError("material name must be non-empty")
        if key in self._entries and self._entries[key][0] in PRESETS:
            raise ValidationError(f"cannot redefine preset material {self._entries[key][0]!r}")
        self._entries[key] = (name.strip(), model)

    def canonical_name(self, name):
        try:
            return self._entries[name.strip().lower()][0]
        except KeyError:
            raise UnknownMaterialError(name, self.names()) from None

    def user_materials(self):
        return [(name, model) for name, model in self._entries.values() if name not in PRESETS]

    def names(self):
        return [entry[0] for entry in self._entries.values()]

    def __getitem__(self, name):
        try:
            return self._entries[name.strip().lower()][1]
        except KeyError:
            raise UnknownMaterialError(name, self.names()) from None

    def __iter__(self):
        return iter(self.names())

    def __len__(self):
        return len(self._entries)


def parse_material_definition(text):
    """Parse ``"omega_p_ev=5.0, damping_ratio=0.01"`` or ``"epsilon=2.5"``."""
    fields = {}
    for part in text.replace(";", ",").split(","):
        if not part.strip():
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise ValidationError(f"malformed material field {part.strip()!r}")
        try:
            fields[key.strip().lower()] = float(value)
        except ValueError:
            raise ValidationError(f"non-numeric value in material field {part.strip()!r}") from None
    if set(fields) == {"epsilon"}:
        return DielectricModel.constant(fields["epsilon"])
    if "omega_p_ev" in fields and set(fields) <= {"omega_p_ev", "damping_ratio"}:
        return DielectricModel.drude(fields["omega_p_ev"], fields.get("damping_ratio", 0.0))
    if set(fields) == {"perfect_conductor"} and fields["perfect_conductor"]:
        return DielectricModel.perfect_conductor()
    raise ValidationError(
        f"material definition {text!r} must give epsilon=... or omega_p_ev=...[, damping_ratio=...]"
    )
