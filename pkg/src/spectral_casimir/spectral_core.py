"""Sphere-image coupling and its spectral decomposition.

The sphere's dipole couples to its image below the substrate through the
non-retarded dipole tensor ``T = (3 r r - 1) / r^3`` and the parity matrix
``M = diag(-1, -1, 1)``. The resulting geometry matrix

    H = n0 [1 + f_c R^3 T M],    n0 = 1/3,

has eigenvalues ``n_s``; the poles of the Green's operator sit at
``u(w) = n_s``. ``H`` is carried as ``n0 * 1 + K`` with the coupling part
``K`` kept separately, so that eigenvalue shifts ``n_s - n0`` are obtained
without cancellation even when the sphere is far from the substrate.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PoleError, ValidationError
from .kernels import jacobi_eigh

N0 = 1.0 / 3.0
PARITY = np.diag([-1.0, -1.0, 1.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])

DEGENERACY_RTOL = 1e-9
SYMMETRY_RTOL = 1e-12
POLE_ATOL = 1e-14

PARALLEL = "parallel"
PERPENDICULAR = "perpendicular"
ISOTROPIC = "isotropic"


@dataclass(frozen=True)
class Geometry:
    """Sphere of radius ``radius`` (nm) whose surface is ``gap`` nm above the substrate."""

    radius: float
    gap: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValidationError(f"radius must be > 0 nm, got {self.radius!r}")
        if not self.gap >= 0:
            raise ValidationError(f"gap must be >= 0 nm, got {self.gap!r}")
        if not np.isfinite(self.radius):
            raise ValidationError("radius must be finite")

    @property
    def separation(self):
        """Distance between the sphere centre and the image dipole, ``2 (z + R)``."""
        return 2.0 * (self.gap + self.radius)

    @property
    def size_ratio_cubed(self):
        """``(R / r)^3``, in ``(0, 1/8]``."""
        if np.isinf(self.gap):
            return 0.0
        return (self.radius / self.separation) ** 3


@dataclass(frozen=True)
class CouplingTensor:
    matrix: np.ndarray  # nm^-3
    separation: float

    @property
    def diagonal(self):
        return np.diag(self.matrix).copy()


def dipole_tensor(geometry: Geometry) -> CouplingTensor:
    """Non-retarded dipole-dipole tensor between the sphere and its image."""
    r = geometry.separation
    if np.isinf(r):
        return CouplingTensor(np.zeros((3, 3)), r)
    rhat = Z_AXIS
    t = (3.0 * np.outer(rhat, rhat) - np.eye(3)) / r**3
    return CouplingTensor(t, r)


@dataclass(frozen=True)
class InteractionMatrix:
    """``H = reference * 1 + coupling`` (dimensionless, symmetric)."""

    coupling: np.ndarray
    reference: float = N0

    @property
    def matrix(self):
        return self.reference * np.eye(self.coupling.shape[0]) + self.coupling


def interaction_matrix(geometry: Geometry, f_c: float) -> InteractionMatrix:
    if not -1.0 <= f_c < 1.0:
        raise ValidationError(f"contrast factor must lie in [-1, 1), got {f_c!r}")
    # n0 f_c R^3 T M, written with (R/r)^3 so it depends on z/R only
    tm = dipole_tensor(Geometry(1.0, geometry.gap / geometry.radius)).matrix @ PARITY
    return InteractionMatrix(N0 * f_c * tm)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues of ``H``, ascending, with multiplicities and labels.

    ``shifts`` holds ``eigenvalues - reference`` computed without
    cancellation; ``vectors`` holds all eigenvectors (columns) in the same
    ascending order, expanded over multiplicity.
    """

    eigenvalues: tuple
    shifts: tuple
    multiplicities: tuple
    labels: tuple
    vectors: np.ndarray
    reference: float = N0

    def __len__(self):
        return len(self.eigenvalues)

    def modes(self):
        return list(zip(self.eigenvalues, self.multiplicities, self.labels))

    def expanded(self):
        """All eigenvalues repeated by multiplicity, ascending."""
        return np.repeat(np.asarray(self.eigenvalues), self.multiplicities)

    def _by_label(self, label):
        for n, lab in zip(self.eigenvalues, self.labels):
            if lab in (label, ISOTROPIC):
                return n
        raise KeyError(label)

    @property
    def n_parallel(self):
        return self._by_label(PARALLEL)

    @property
    def n_perpendicular(self):
        return self._by_label(PERPENDICULAR)


def _check_symmetric(a):
    scale = max(np.abs(a).max(), np.finfo(float).tiny)
    if np.abs(a - a.T).max() > SYMMETRY_RTOL * scale:
        raise ValidationError("interaction matrix is not symmetric")


def _label(vectors):
    if vectors.shape[1] == vectors.shape[0]:
        return ISOTROPIC
    weight = float(np.sum(vectors[2, :] ** 2)) / vectors.shape[1]
    return PERPENDICULAR if weight > 0.5 else PARALLEL


def eigen_decompose(h) -> SpectralDecomposition:
    """Diagonalise ``H`` with the Jacobi solver and group degenerate modes.

    ``h`` is an :class:`InteractionMatrix` (its coupling part is
    diagonalised, shifts are exact) or a plain symmetric array, in which
    case shifts are ``eigenvalues - n0``. Eigenvalues closer than
    ``1e-9`` relative to the spread of the diagonalised spectrum are merged.
    """
    if isinstance(h, InteractionMatrix):
        target = np.asarray(h.coupling, dtype=float)
        reference = h.reference
    else:
        target = np.asarray(h, dtype=float)
        reference = N0
    if target.shape != (3, 3):
        raise ValidationError(f"expected a 3x3 matrix, got shape {target.shape}")
    _check_symmetric(target)
    w, v, _ = jacobi_eigh(target)
    order = np.argsort(w, kind="stable")
    w, v = w[order], v[:, order]

    tol = DEGENERACY_RTOL * np.abs(w).max()
    groups = [[0]]
    for i in range(1, w.size):
        if w[i] - w[groups[-1][0]] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])

    values, shifts, mults, labels = [], [], [], []
    for g in groups:
        mean = float(np.mean(w[g]))
        if isinstance(h, InteractionMatrix):
            shift, value = mean, reference + mean
        else:
            shift, value = mean - reference, mean
        values.append(value)
        shifts.append(shift)
        mults.append(len(g))
        labels.append(_label(v[:, g]))
    return SpectralDecomposition(tuple(values), tuple(shifts), tuple(mults), tuple(labels), v, reference)


def reference_decomposition() -> SpectralDecomposition:
    """Spectrum of an isolated sphere: ``n0`` three times."""
    return eigen_decompose(InteractionMatrix(np.zeros((3, 3))))


def greens_trace(u, decomposition: SpectralDecomposition):
    """``Tr G(u) = sum_s m_s / (u - n_s)``; scalar or array ``u``."""
    u_arr = np.asarray(u)
    on_axis = np.imag(u_arr) == 0
    for n in decomposition.eigenvalues:
        if np.any(on_axis & (np.abs(u_arr - n) <= POLE_ATOL)):
            raise PoleError(f"u is on the pole n_s = {n!r}")
    total = 0.0
    for n, m in zip(decomposition.eigenvalues, decomposition.multiplicities):
        total = total + m / (u_arr - n)
    return complex(total) if u_arr.ndim == 0 else total
