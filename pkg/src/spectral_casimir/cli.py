"""Command-line front end.

Exit codes: 0 success, 2 validation error, 3 numerical failure, 4 I/O failure.
``SPECTRAL_CASIMIR_OUTPUT_DIR`` sets the directory used when ``--output`` is
omitted.
"""
from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._io import atomic_write_text
from .comparison import HAMAKER_NONRETARDED, IDEAL_RETARDED, VARIANTS, compare_with_spectral
from .dos import LORENTZIAN, ROUTES, dos_profile
from .errors import NumericalError, SpectralCasimirError, ValidationError
from .materials import MaterialLibrary, parse_material_definition
from .modes_energy import ANALYTIC, DERIVATIVE_METHODS, MODE_SUM, decompose
from .sweep import (
    FORMATS,
    METHODS,
    SPACINGS,
    SweepSpec,
    figure_spec,
    fit_power_law,
    read_rows,
    run_sweep,
)
from .system import SystemSpec

OUTPUT_DIR_ENV = "SPECTRAL_CASIMIR_OUTPUT_DIR"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _names(text):
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated list of names")
    return names


def _floats(text):
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def load_config(path):
    """Read a flat ``key = value`` file.

    Keys are long flag names with or without leading dashes (``z-min`` or
    ``z_min``). ``material.NAME = omega_p_ev=..., damping_ratio=...`` or
    ``material.NAME = epsilon=...`` defines a user material.
    """
    parser = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#", ";"),
                                       inline_comment_prefixes=("#",), interpolation=None)
    parser.optionxform = str
    text = Path(path).read_text(encoding="utf-8")
    try:
        parser.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise ValidationError(f"malformed config file {path}: {exc}") from None
    options, materials = {}, {}
    for key, value in parser["config"].items():
        key = key.strip()
        if key.lower().startswith("material."):
            materials[key.split(".", 1)[1]] = parse_material_definition(value)
        else:
            options[key.lstrip("-").replace("_", "-").lower()] = value.strip()
    return options, materials


def _common(p, *, sweep=True):
    p.add_argument("--config", help="flat key = value file; command-line flags override it")
    p.add_argument("--output", help="output path (default: $%s or cwd)" % OUTPUT_DIR_ENV)
    if sweep:
        p.add_argument("--format", choices=FORMATS, dest="output_format")
        p.add_argument("--method", choices=METHODS)
        p.add_argument("--workers", type=int)
        p.add_argument("--points", type=int)
        p.add_argument("--damping", type=float, help="override the sphere damping ratio")
        p.add_argument("--force-method", choices=DERIVATIVE_METHODS)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spectral-casimir",
        description="Non-retarded sphere-substrate interaction from the spectral representation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="evaluate a (sphere, substrate, R, z) grid")
    _common(p)
    p.add_argument("--sphere", type=_names)
    p.add_argument("--substrate", type=_names)
    p.add_argument("--radius-nm", type=_floats)
    p.add_argument("--z-min", type=float)
    p.add_argument("--z-max", type=float)
    p.add_argument("--spacing", choices=SPACINGS)
    p.add_argument("--ambient", type=float)

    for name, text in (("fig2", "energy vs z/R, 4 spheres x 3 substrates"),
                       ("fig3", "force vs z for K/Al2O3 and Al/Inf, four radii"),
                       ("fig4", "force vs z for 4 spheres over Al2O3 and TiO2, R = 50 nm")):
        _common(sub.add_parser(name, help=text))

    p = sub.add_parser("pfa-compare", help="compare the proximity force approximation to the spectral force")
    _common(p, sweep=False)
    p.add_argument("--sphere", type=_names)
    p.add_argument("--substrate", type=_names)
    p.add_argument("--radius-nm", type=_floats)
    p.add_argument("--z", type=float, help="gap in nm")
    p.add_argument("--ambient", type=float)
    p.add_argument("--variant", choices=VARIANTS)
    p.add_argument("--hamaker-ev", type=float)

    p = sub.add_parser("dos-profile", help="write rho(omega) as CSV")
    _common(p, sweep=False)
    p.add_argument("--sphere", type=_names)
    p.add_argument("--substrate", type=_names)
    p.add_argument("--radius-nm", type=_floats)
    p.add_argument("--z", type=float)
    p.add_argument("--damping", type=float)
    p.add_argument("--omega-min", type=float)
    p.add_argument("--omega-max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--route", choices=ROUTES)

    p = sub.add_parser("fit", help="log-log power-law fit over sweep output")
    _common(p, sweep=False)
    p.add_argument("--input")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--x-min", type=float)
    p.add_argument("--x-max", type=float)
    p.add_argument("--sphere", type=_names)
    p.add_argument("--substrate", type=_names)
    p.add_argument("--radius-nm", type=_floats)
    return parser


def _parse(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    materials = {}
    if args.config:
        options, materials = load_config(args.config)
        tokens = []
        for key, value in options.items():
            if key == "config":
                continue
            tokens += [f"--{key}", value]
        # config first so that explicit flags win
        try:
            args = parser.parse_args([argv[0], *tokens, *argv[1:]])
        except SystemExit as exc:
            if exc.code:
                raise ValidationError(f"invalid entry in config file {args.config}") from None
            raise
    return args, MaterialLibrary(materials)


def _pick(value, default):
    return default if value is None else value


def _default_output(name, fmt):
    return str(Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / f"{name}.{fmt}")


def _single(names, what):
    if names is None:
        return None
    if len(names) != 1:
        raise ValidationError(f"--{what} takes a single value here")
    return names[0]


def _run_sweep_command(args, library):
    fmt = _pick(args.output_format, "csv")
    common = dict(
        method=_pick(args.method, MODE_SUM),
        workers=_pick(args.workers, 1),
        damping=args.damping,
        force_method=_pick(args.force_method, ANALYTIC),
        output_format=fmt,
        output=args.output or _default_output(args.command, fmt),
        materials=tuple(library.user_materials()),
    )
    if args.command == "sweep":
        spec = SweepSpec(
            z_min=_pick(args.z_min, 0.0), z_max=_pick(args.z_max, 40.0),
            points=_pick(args.points, 81), spacing=_pick(args.spacing, "linear"),
            radii=_pick(args.radius_nm, (10.0,)), spheres=_pick(args.sphere, ("K",)),
            substrates=_pick(args.substrate, ("Inf",)), ambient=_pick(args.ambient, 1.0),
            **common,
        )
    else:
        spec = figure_spec(args.command, points=args.points, **common)
    rows, path = run_sweep(spec, library)
    print(f"wrote {len(rows)} rows to {path}", file=sys.stderr)
    return EXIT_OK


def _system_from_args(args, library, default_gap):
    sphere = _pick(_single(args.sphere, "sphere"), "Au")
    substrate = _pick(_single(args.substrate, "substrate"), "Inf")
    radius = _pick(_single(args.radius_nm, "radius-nm"), 100.0)
    return SystemSpec(radius, _pick(args.z, default_gap), library[sphere], library[substrate],
                      _pick(getattr(args, "ambient", None), 1.0),
                      library.canonical_name(sphere), library.canonical_name(substrate))


def _run_pfa(args, library):
    system = _system_from_args(args, library, 10.0)
    variant = _pick(args.variant, IDEAL_RETARDED)
    report = compare_with_spectral(system, variant,
                                   args.hamaker_ev if variant == HAMAKER_NONRETARDED else None)
    text = report.to_json(indent=1) + "\n"
    if args.output:
        atomic_write_text(args.output, text)
    sys.stdout.write(text)
    return EXIT_OK


def _run_dos(args, library):
    system = _system_from_args(args, library, 10.0)
    sphere = system.sphere
    if args.damping is not None:
        sphere = sphere.with_damping(args.damping)
    wp = sphere.omega_p if sphere.kind == "drude" else 1.0
    grid = np.linspace(_pick(args.omega_min, 0.01 * wp), _pick(args.omega_max, 1.5 * wp),
                       _pick(args.points, 2001))
    profile = dos_profile(decompose(system), sphere, grid, _pick(args.route, LORENTZIAN))
    path = profile.to_csv(args.output or _default_output("dos-profile", "csv"))
    print(f"wrote {grid.size} points to {path}", file=sys.stderr)
    return EXIT_OK


def _run_fit(args, library):
    if not args.input:
        raise ValidationError("fit needs --input")
    rows = read_rows(args.input)
    if args.sphere:
        rows = [r for r in rows if r.sphere.lower() in {s.lower() for s in args.sphere}]
    if args.substrate:
        rows = [r for r in rows if r.substrate.lower() in {s.lower() for s in args.substrate}]
    if args.radius_nm:
        rows = [r for r in rows if any(abs(r.R_nm - R) <= 1e-9 * R for R in args.radius_nm)]
    x_range = None
    if args.x_min is not None or args.x_max is not None:
        x_range = (_pick(args.x_min, -np.inf), _pick(args.x_max, np.inf))
    result = fit_power_law(rows, _pick(args.x, "z_over_R"), _pick(args.y, "energy_ev"), x_range)
    text = json.dumps(result.to_dict(), indent=1, sort_keys=True) + "\n"
    if args.output:
        atomic_write_text(args.output, text)
    sys.stdout.write(text)
    return EXIT_OK


_COMMANDS = {
    "sweep": _run_sweep_command,
    "fig2": _run_sweep_command,
    "fig3": _run_sweep_command,
    "fig4": _run_sweep_command,
    "pfa-compare": _run_pfa,
    "dos-profile": _run_dos,
    "fit": _run_fit,
}


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, library = _parse(argv)
        return _COMMANDS[args.command](args, library)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (SpectralCasimirError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
