from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ValidationError
from .materials import DRUDE, DielectricModel, contrast_factor
from .spectral_core import Geometry


@dataclass(frozen=True)
class SystemSpec:
    """A sphere of ``radius_nm`` held ``gap_nm`` above a substrate.

    ``sphere_name`` / ``substrate_name`` are labels for reporting only.
    """

    radius_nm: float
    gap_nm: float
    sphere: DielectricModel
    substrate: DielectricModel
    ambient: float = 1.0
    sphere_name: str | None = None
    substrate_name: str | None = None

    def __post_init__(self):
        Geometry(self.radius_nm, self.gap_nm)
        if not self.ambient > 0:
            raise ValidationError(f"ambient permittivity must be > 0, got {self.ambient!r}")

    @property
    def geometry(self):
        return Geometry(self.radius_nm, self.gap_nm)

    @property
    def contrast_factor(self):
        return contrast_factor(self.substrate, self.ambient)

    @property
    def at_contact(self):
        return self.gap_nm == 0

    @property
    def has_drude_sphere(self):
        return self.sphere.kind == DRUDE

    def at_gap(self, gap_nm):
        return replace(self, gap_nm=float(gap_nm))

    def scaled(self, factor):
        return replace(self, radius_nm=self.radius_nm * factor, gap_nm=self.gap_nm * factor)

    def snapshot(self):
        """Plain-dict description, JSON serialisable."""
        return {
            "radius_nm": self.radius_nm,
            "gap_nm": self.gap_nm,
            "sphere": self.sphere_name or self.sphere.describe(),
            "substrate": self.substrate_name or self.substrate.describe(),
            "ambient": self.ambient,
        }
