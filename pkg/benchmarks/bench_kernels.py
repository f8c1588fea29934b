"""Time the numba kernels against their pure-numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel is called once before timing so that JIT compilation is not
counted. Both paths are checked to agree before anything is reported.
"""
import argparse
import timeit

import numpy as np

from spectral_casimir import _jit, kernels
from spectral_casimir.modes_energy import decompose
from spectral_casimir.materials import PRESETS
from spectral_casimir.system import SystemSpec


def cases():
    dec = decompose(SystemSpec(10.0, 3.0, PRESETS["Au"], PRESETS["TiO2"]))
    h = np.diag(dec.expanded()) + 1e-3 * np.array([[0, 1, 2], [1, 0, 3], [2, 3, 0]])
    omega = np.linspace(0.01, 20.0, 20001)
    n_s = np.asarray(dec.eigenvalues)
    mult = np.asarray(dec.multiplicities, dtype=float)
    ws = 8.55 * np.sqrt(n_s[0])
    gamma = 8.55 * 1e-4
    breaks = np.array([0.0, ws - 100 * gamma, ws, ws + 100 * gamma, 85.5])
    return {
        "jacobi 3x3": (kernels._jacobi_eigh_loops, kernels._jacobi_eigh_numpy, (h, 1e-14, 64)),
        "lorentzian rho, 20k points": (kernels._lorentzian_rho_loops, kernels._lorentzian_rho_numpy,
                                       (omega, 8.55, n_s, mult, gamma)),
        "adaptive GK15, damping 1e-4": (kernels._integrate_mode_loops, kernels._integrate_mode_numpy,
                                        (kernels.LORENTZ_ENERGY, ws, gamma, 8.55, breaks, 1e-8, 0.0, 2000)),
    }


def first(result):
    return result[0] if isinstance(result, tuple) else result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=200)
    args = parser.parse_args()
    if not _jit.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'kernel':32s} {'numba [us]':>12s} {'numpy [us]':>12s} {'speed-up':>9s}")
    for name, (fast, slow, call_args) in cases().items():
        a, b = first(fast(*call_args)), first(slow(*call_args))
        if not np.allclose(np.sort(np.atleast_1d(a)), np.sort(np.atleast_1d(b)), rtol=1e-9, atol=0):
            raise SystemExit(f"{name}: kernel paths disagree")
        t_fast = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        t_slow = min(timeit.repeat(lambda: slow(*call_args), number=1, repeat=max(3, args.repeat // 10)))
        print(f"{name:32s} {t_fast * 1e6:12.1f} {t_slow * 1e6:12.1f} {t_slow / t_fast:8.1f}x")


if __name__ == "__main__":
    main()
