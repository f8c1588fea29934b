"""Parameter sweeps over (sphere, substrate, R, z), row emission and power-law fits."""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np
from scipy import stats

from ._io import atomic_write_text, format_number
from .dos import LORENTZIAN, QuadratureSpec, dos_interaction_energy
from .errors import DomainError, ValidationError
from .materials import DRUDE, MaterialLibrary
from .modes_energy import (
    ANALYTIC,
    CENTRAL_DIFFERENCE,
    DERIVATIVE_METHODS,
    DOS,
    MODE_SUM,
    PN_PER_EV_PER_NM,
    force,
    interaction_energy,
)
from .system import SystemSpec

METHODS = (MODE_SUM, DOS)
SPACINGS = ("linear", "log")
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class SweepRow:
    z_nm: float
    R_nm: float
    z_over_R: float
    f_c: float
    n_parallel: float
    n_perp: float
    omega_parallel_ev: float
    omega_perp_ev: float
    energy_ev: float
    force_ev_per_nm: float
    force_pN: float
    method: str
    sphere: str
    substrate: str

    @classmethod
    def columns(cls):
        return [f.name for f in fields(cls)]

    @classmethod
    def from_dict(cls, data):
        kwargs = {}
        for f in fields(cls):
            value = data[f.name]
            kwargs[f.name] = value if f.type == "str" else float(value)
        return cls(**kwargs)

    def csv_fields(self):
        return [v if isinstance(v, str) else format_number(v) for v in asdict(self).values()]


@dataclass(frozen=True)
class SweepSpec:
    """Everything needed to reproduce one sweep.

    Rows are produced for every (sphere, substrate) combination -- the
    Cartesian product of ``spheres`` and ``substrates`` unless ``pairs`` is
    given -- then every radius, then every gap, in that nesting order.
    """

    z_min: float
    z_max: float
    points: int
    spacing: str = "linear"
    radii: tuple = (10.0,)
    spheres: tuple = ("K",)
    substrates: tuple = ("Inf",)
    pairs: tuple | None = None
    ambient: float = 1.0
    method: str = MODE_SUM
    damping: float | None = None
    force_method: str = ANALYTIC
    output_format: str = "csv"
    output: str | None = None
    workers: int = 1
    materials: tuple = field(default=())  # extra (name, DielectricModel) pairs
    quad_rtol: float = 1e-8

    def library(self):
        return MaterialLibrary(dict(self.materials))

    def validate(self, library=None):
        library = library or self.library()
        if int(self.points) != self.points or self.points < 2:
            raise ValidationError(f"grid needs at least 2 points, got {self.points!r}")
        if not self.z_min < self.z_max:
            raise ValidationError(f"z_min ({self.z_min!r}) must be < z_max ({self.z_max!r})")
        if self.z_min < 0:
            raise ValidationError("z_min must be >= 0")
        if self.spacing not in SPACINGS:
            raise ValidationError(f"spacing must be one of {SPACINGS}, got {self.spacing!r}")
        if self.spacing == "log" and not self.z_min > 0:
            raise ValidationError("log spacing requires z_min > 0 (z = 0 needs linear spacing)")
        if not self.radii or any(not r > 0 for r in self.radii):
            raise ValidationError("radii must be a non-empty list of positive values")
        if self.method not in METHODS:
            raise ValidationError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.force_method not in DERIVATIVE_METHODS:
            raise ValidationError(f"force method must be one of {DERIVATIVE_METHODS}")
        if self.output_format not in FORMATS:
            raise ValidationError(f"format must be one of {FORMATS}, got {self.output_format!r}")
        if self.damping is not None and not self.damping >= 0:
            raise ValidationError("damping override must be >= 0")
        if self.workers < 1:
            raise ValidationError("workers must be >= 1")
        if not self.ambient > 0:
            raise ValidationError("ambient permittivity must be > 0")
        combos = self.combinations()
        if not combos:
            raise ValidationError("no sphere/substrate combinations to evaluate")
        for sphere, substrate in combos:
            model = library[sphere]
            if model.kind != DRUDE:
                raise ValidationError(f"sphere material {sphere!r} must be a Drude metal")
            library.canonical_name(substrate)
        if self.method == DOS:
            for sphere, _ in combos:
                d = self.damping if self.damping is not None else library[sphere].damping_ratio
                if not d > 0:
                    raise ValidationError(f"the dos method needs damping > 0 for {sphere!r}")
            if self.ambient != 1.0:
                raise ValidationError("the dos method is implemented for a vacuum ambient only")
        QuadratureSpec(rtol=self.quad_rtol)

    def combinations(self):
        if self.pairs is not None:
            return [tuple(p) for p in self.pairs]
        return list(itertools.product(self.spheres, self.substrates))

    def z_grid(self):
        if self.spacing == "log":
            return np.geomspace(self.z_min, self.z_max, int(self.points))
        return np.linspace(self.z_min, self.z_max, int(self.points))

    def systems(self, library=None):
        library = library or self.library()
        out = []
        for sphere, substrate in self.combinations():
            sphere_model = library[sphere]
            if self.damping is not None:
                sphere_model = sphere_model.with_damping(self.damping)
            for radius in self.radii:
                for z in self.z_grid():
                    out.append(SystemSpec(
                        float(radius), float(z), sphere_model, library[substrate], float(self.ambient),
                        library.canonical_name(sphere), library.canonical_name(substrate),
                    ))
        return out


def evaluate_row(system: SystemSpec, method=MODE_SUM, force_method=ANALYTIC, quad_rtol=1e-8) -> SweepRow:
    mode = interaction_energy(system)
    if method == DOS:
        energy = dos_interaction_energy(system, QuadratureSpec(rtol=quad_rtol), LORENTZIAN).energy_ev
    else:
        energy = mode.energy_ev
    # the force is always the derivative of the mode-sum energy
    fm = ANALYTIC if system.gap_nm == 0 else force_method
    if fm == CENTRAL_DIFFERENCE and system.gap_nm < max(1e-5 * (system.gap_nm + system.radius_nm), 1e-8):
        fm = ANALYTIC
    f = force(system, fm).force_ev_per_nm
    dec, modes = mode.decomposition, mode.modes
    return SweepRow(
        z_nm=system.gap_nm,
        R_nm=system.radius_nm,
        z_over_R=system.gap_nm / system.radius_nm,
        f_c=system.contrast_factor,
        n_parallel=dec.n_parallel,
        n_perp=dec.n_perpendicular,
        omega_parallel_ev=modes.omega_parallel,
        omega_perp_ev=modes.omega_perpendicular,
        energy_ev=energy,
        force_ev_per_nm=f,
        force_pN=f * PN_PER_EV_PER_NM,
        method=method,
        sphere=system.sphere_name or system.sphere.describe(),
        substrate=system.substrate_name or system.substrate.describe(),
    )


def _evaluate_task(task):
    return evaluate_row(*task)


def compute_rows(spec: SweepSpec, library=None):
    library = library or spec.library()
    spec.validate(library)
    tasks = [(s, spec.method, spec.force_method, spec.quad_rtol) for s in spec.systems(library)]
    if spec.workers == 1 or len(tasks) < 2:
        return [_evaluate_task(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * spec.workers))
    with ProcessPoolExecutor(max_workers=spec.workers) as pool:
        # map() yields in submission order whatever the completion order
        return list(pool.map(_evaluate_task, tasks, chunksize=chunk))


def rows_to_csv(rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SweepRow.columns())
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()


def rows_to_json(rows):
    payload = {"columns": SweepRow.columns(), "rows": [asdict(r) for r in rows]}
    return json.dumps(payload, indent=1) + "\n"


def write_rows(rows, path, fmt="csv"):
    if fmt not in FORMATS:
        raise ValidationError(f"format must be one of {FORMATS}")
    text = rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows)
    return atomic_write_text(path, text)


def read_rows(path, fmt=None):
    path = Path(path)
    fmt = fmt or ("json" if path.suffix.lower() == ".json" else "csv")
    text = path.read_text(encoding="utf-8")
    if fmt == "json":
        return [SweepRow.from_dict(d) for d in json.loads(text)["rows"]]
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != SweepRow.columns():
        raise ValidationError(f"unexpected CSV header {reader.fieldnames!r}")
    return [SweepRow.from_dict(d) for d in reader]


def run_sweep(spec: SweepSpec, library=None):
    """Evaluate the sweep and, if ``spec.output`` is set, write it atomically.

    Returns ``(rows, path_or_None)``.
    """
    rows = compute_rows(spec, library)
    path = None
    if spec.output is not None:
        path = write_rows(rows, spec.output, spec.output_format)
    return rows, path


@dataclass(frozen=True)
class PowerLawFit:
    slope: float
    slope_stderr: float
    intercept: float
    intercept_stderr: float
    residual: float  # RMS of log-space residuals
    n_points: int

    def to_dict(self):
        return asdict(self)


def _column(row, name):
    return row[name] if isinstance(row, dict) else getattr(row, name)


def fit_power_law(rows, x="z_over_R", y="energy_ev", x_range=None, min_points=8) -> PowerLawFit:
    """Least-squares line through ``(log|x|, log|y|)``.

    ``x_range`` is an inclusive ``(lo, hi)`` window on ``x``.
    """
    xs = np.array([float(_column(r, x)) for r in rows])
    ys = np.array([float(_column(r, y)) for r in rows])
    if x_range is not None:
        lo, hi = x_range
        finite = [abs(v) for v in (lo, hi) if math.isfinite(v)]
        slack = 1e-12 * max(finite, default=0.0)
        keep = (xs >= lo - slack) & (xs <= hi + slack)
        xs, ys = xs[keep], ys[keep]
    if xs.size < min_points:
        raise ValidationError(f"need at least {min_points} rows in range, got {xs.size}")
    if np.any(ys == 0) or np.any(xs == 0):
        raise DomainError("zero values cannot be fitted on a log scale")
    if not (np.all(ys > 0) or np.all(ys < 0)):
        raise DomainError(f"column {y!r} changes sign within the fit range")
    lx, ly = np.log(np.abs(xs)), np.log(np.abs(ys))
    res = stats.linregress(lx, ly)
    resid = ly - (res.intercept + res.slope * lx)
    return PowerLawFit(float(res.slope), float(res.stderr), float(res.intercept),
                       float(res.intercept_stderr), float(math.sqrt(np.mean(resid**2))), int(xs.size))


# figure recipes; z in nm
FIGURE_PRESETS = {
    "fig2": dict(z_min=0.1, z_max=100.0, points=200, spacing="log", radii=(10.0,),
                 spheres=("K", "Au", "Ag", "Al"), substrates=("Inf", "Al2O3", "TiO2")),
    "fig3": dict(z_min=0.0, z_max=40.0, points=81, spacing="linear", radii=(10.0, 50.0, 100.0, 500.0),
                 pairs=(("K", "Al2O3"), ("Al", "Inf"))),
    "fig4": dict(z_min=0.0, z_max=40.0, points=81, spacing="linear", radii=(50.0,),
                 spheres=("K", "Au", "Ag", "Al"), substrates=("Al2O3", "TiO2")),
}


def figure_spec(name, **overrides) -> SweepSpec:
    try:
        base = dict(FIGURE_PRESETS[name])
    except KeyError:
        raise ValidationError(f"unknown figure preset {name!r}") from None
    base.update({k: v for k, v in overrides.items() if v is not None})
    return SweepSpec(**base)
