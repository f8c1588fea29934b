"""Reference computations that do not touch the package's numerical paths."""
import mpmath
import numpy as np
from scipy import integrate

mpmath.mp.dps = 40
N0 = mpmath.mpf(1) / 3


def closed_form_energy(omega_p, f_c, z_over_r):
    """Mode-sum energy for a Drude sphere in vacuum (eV), 40-digit arithmetic.

    ``(wp sqrt(n0) / 2) [2 sqrt(1 - x) + sqrt(1 - 2x) - 3]`` with
    ``x = |f_c| / (8 (1 + z/R)^3)``.
    """
    x = abs(mpmath.mpf(f_c)) / (8 * (1 + mpmath.mpf(z_over_r)) ** 3)
    val = mpmath.mpf(omega_p) * mpmath.sqrt(N0) / 2 * (
        2 * mpmath.sqrt(1 - x) + mpmath.sqrt(1 - 2 * x) - 3
    )
    return float(val)


def closed_form_force(omega_p, f_c, radius, gap):
    """``-dE/dz`` of :func:`closed_form_energy` by mpmath differentiation (eV/nm)."""
    R = mpmath.mpf(radius)

    def energy(z):
        x = abs(mpmath.mpf(f_c)) * R**3 / (8 * (z + R) ** 3)
        return mpmath.mpf(omega_p) * mpmath.sqrt(N0) / 2 * (
            2 * mpmath.sqrt(1 - x) + mpmath.sqrt(1 - 2 * x) - 3
        )

    return float(-mpmath.diff(energy, mpmath.mpf(gap)))


def closed_form_eigenvalues(f_c, z_over_r):
    """``(n_perp, n_par)`` for the sphere above a planar substrate."""
    k = mpmath.mpf(f_c) / (8 * (1 + mpmath.mpf(z_over_r)) ** 3)
    return float(N0 * (1 + 2 * k)), float(N0 * (1 + k))


def cubic_eigenvalues(a):
    """Roots of the characteristic polynomial of a 3x3 matrix, ascending."""
    a = [[mpmath.mpf(float(v)) for v in row] for row in np.asarray(a)]
    tr = a[0][0] + a[1][1] + a[2][2]
    minors = (a[0][0] * a[1][1] - a[0][1] * a[1][0]
              + a[0][0] * a[2][2] - a[0][2] * a[2][0]
              + a[1][1] * a[2][2] - a[1][2] * a[2][1])
    det = mpmath.det(mpmath.matrix(a))
    roots = mpmath.polyroots([1, -tr, minors, -det], maxsteps=200, extraprec=200)
    return sorted(float(mpmath.re(r)) for r in roots)


def lorentzian_norm(omega_s, gamma):
    """Exact ``int_0^inf (2 ws / pi) w g / ((w^2 - ws^2)^2 + (w g)^2) dw``."""
    ws, g = mpmath.mpf(omega_s), mpmath.mpf(gamma)
    b = ws**2 - g**2 / 2
    c = mpmath.sqrt(g**2 * ws**2 - g**4 / 4)
    return float(ws * g / (mpmath.pi * c) * (mpmath.pi / 2 + mpmath.atan(b / c)))


def scipy_integral(f, a, b, points=None):
    val, _ = integrate.quad(f, a, b, points=points, limit=2000, epsabs=0, epsrel=1e-12)
    return val


def trapezoid_norm(omega_p, n_s, mult, gamma, upper, per_width=40):
    """High-resolution trapezoid integral of the Lorentzian DOS, direct formula."""
    grids = [np.linspace(1e-9, upper, 200001)]
    for n in n_s:
        ws = omega_p * np.sqrt(n)
        grids.append(ws + gamma * np.linspace(-2000, 2000, 4000 * per_width + 1))
    w = np.unique(np.concatenate(grids))
    w = w[(w > 0) & (w <= upper)]
    rho = np.zeros_like(w)
    for n, m in zip(n_s, mult):
        rho += m * 2 * omega_p / np.pi * np.sqrt(n) * w * gamma / ((w**2 - omega_p**2 * n) ** 2 + (w * gamma) ** 2)
    return float(np.sum(0.5 * (rho[1:] + rho[:-1]) * np.diff(w)))
