"""Hot numeric kernels.

Every kernel exists twice: a loop version compiled with numba and a
vectorised numpy version. The public wrappers (:func:`jacobi_eigh`,
:func:`lorentzian_rho`, :func:`integrate_mode`) pick one according to
:data:`spectral_casimir._jit.USE_NUMBA`; the ``*_loops`` / ``*_numpy``
functions stay importable for tests and ``benchmarks/bench_kernels.py``.
"""
import math

import numpy as np

from . import _jit
from ._jit import njit
from .errors import NumericalError, QuadratureError

# ---------------------------------------------------------------------------
# cyclic Jacobi eigensolver for real symmetric matrices
# ---------------------------------------------------------------------------


@njit
def _jacobi_eigh_loops(a, tol, max_sweeps):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += a[i, j] * a[i, j]
    scale = math.sqrt(scale)
    if scale == 0.0:
        return np.zeros(n), v, 0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if math.sqrt(2.0 * off) <= tol * scale:
            w = np.empty(n)
            for i in range(n):
                w[i] = a[i, i]
            return w, v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return np.diag(a).copy(), v, -1


def _jacobi_eigh_numpy(a, tol, max_sweeps):
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v, 0
    iu = np.triu_indices(n, 1)
    for sweep in range(max_sweeps + 1):
        if math.sqrt(2.0) * np.linalg.norm(a[iu]) <= tol * scale:
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p, q in zip(*iu):
            apq = a[p, q]
            if apq == 0.0:
                continue
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            if abs(theta) > 1e150:
                t = 0.5 / theta
            else:
                t = math.copysign(1.0 / (abs(theta) + math.hypot(theta, 1.0)), theta)
            c = 1.0 / math.hypot(t, 1.0)
            s = t * c
            rot = np.array([[c, s], [-s, c]])
            cols = [p, q]
            a[:, cols] = a[:, cols] @ rot
            a[cols, :] = rot.T @ a[cols, :]
            v[:, cols] = v[:, cols] @ rot
    return np.diag(a).copy(), v, -1


def jacobi_eigh(a, tol=1e-14, max_sweeps=64):
    """Eigen-decompose a real symmetric matrix by cyclic Jacobi rotations.

    Iterates until the off-diagonal Frobenius norm drops below
    ``tol * ||a||_F``. Returns ``(eigenvalues, eigenvectors, sweeps)`` with
    eigenvectors in columns, unsorted.
    """
    a = np.ascontiguousarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    # exact power-of-two rescaling keeps the squared norms clear of under/overflow
    peak = np.abs(a).max() if a.size else 0.0
    exponent = int(np.frexp(peak)[1]) if peak > 0.0 else 0
    kernel = _jacobi_eigh_loops if _jit.USE_NUMBA else _jacobi_eigh_numpy
    w, v, sweeps = kernel(np.ldexp(a, -exponent), float(tol), int(max_sweeps))
    if sweeps < 0:
        raise NumericalError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.ldexp(w, exponent), v, sweeps


# ---------------------------------------------------------------------------
# Lorentzian density of states on a grid
# ---------------------------------------------------------------------------


@njit
def _lorentzian_rho_loops(omega, omega_p, n_s, mult, gamma):
    out = np.empty(omega.size)
    pref = 2.0 * omega_p / math.pi
    for i in range(omega.size):
        w = omega[i]
        acc = 0.0
        for s in range(n_s.size):
            det = w * w - omega_p * omega_p * n_s[s]
            acc += mult[s] * math.sqrt(n_s[s]) * (w * gamma) / (det * det + (w * gamma) ** 2)
        out[i] = pref * acc
    return out


def _lorentzian_rho_numpy(omega, omega_p, n_s, mult, gamma):
    w = omega[:, None]
    det = w * w - omega_p**2 * n_s[None, :]
    terms = mult * np.sqrt(n_s) * (w * gamma) / (det**2 + (w * gamma) ** 2)
    return 2.0 * omega_p / np.pi * terms.sum(axis=1)


def lorentzian_rho(omega, omega_p, n_s, mult, gamma):
    """Multiplicity-weighted sum of damped-oscillator Lorentzians.

    ``rho(w) = (2 wp / pi) sum_s m_s sqrt(n_s) (w g) / ((w^2 - wp^2 n_s)^2 + (w g)^2)``
    with ``g`` the Drude damping rate in eV.
    """
    omega = np.ascontiguousarray(omega, dtype=np.float64)
    n_s = np.ascontiguousarray(n_s, dtype=np.float64)
    mult = np.ascontiguousarray(mult, dtype=np.float64)
    kernel = _lorentzian_rho_loops if _jit.USE_NUMBA else _lorentzian_rho_numpy
    return kernel(omega, float(omega_p), n_s, mult, float(gamma))


# ---------------------------------------------------------------------------
# adaptive Gauss-Kronrod (7/15) quadrature of single-mode spectral integrands
# ---------------------------------------------------------------------------

# single resonance at omega_s, damping rate gamma, D = (w^2 - ws^2)^2 + (w g)^2
LORENTZ_RHO = 0  # (2/pi) ws w g / D
LORENTZ_ENERGY = 1  # (1/2) w * LORENTZ_RHO
GREENS_RHO = 2  # (2/pi) w^2 g / D
GREENS_ENERGY = 3  # (1/2) w * GREENS_RHO - (g/pi) w / (w^2 + wp^2)
KINDS = (LORENTZ_RHO, LORENTZ_ENERGY, GREENS_RHO, GREENS_ENERGY)

_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_EPMACH = np.finfo(float).eps
_UFLOW = np.finfo(float).tiny

# full 15-point node/weight vectors for the vectorised rule
_X15 = np.concatenate([-_XGK[:7], [0.0], _XGK[6::-1]])
_WK15 = np.concatenate([_WGK[:7], [_WGK[7]], _WGK[6::-1]])
_WG15 = np.zeros(15)
_WG15[[1, 3, 5]] = _WG[:3]
_WG15[7] = _WG[3]
_WG15[[9, 11, 13]] = _WG[2::-1]


@njit
def _integrand(kind, w, omega_s, gamma, omega_p):
    det = (w - omega_s) * (w + omega_s)
    wg = w * gamma
    den = det * det + wg * wg
    if kind == 0:
        return 2.0 / math.pi * omega_s * wg / den
    if kind == 1:
        return omega_s * w * wg / den / math.pi
    if kind == 2:
        return 2.0 / math.pi * w * wg / den
    return (w * w * wg / den - gamma * w / (w * w + omega_p * omega_p)) / math.pi


def _integrand_numpy(kind, w, omega_s, gamma, omega_p):
    det = (w - omega_s) * (w + omega_s)
    wg = w * gamma
    den = det * det + wg * wg
    if kind == LORENTZ_RHO:
        return 2.0 / np.pi * omega_s * wg / den
    if kind == LORENTZ_ENERGY:
        return omega_s * w * wg / den / np.pi
    if kind == GREENS_RHO:
        return 2.0 / np.pi * w * wg / den
    return (w * w * wg / den - gamma * w / (w * w + omega_p * omega_p)) / np.pi


@njit
def _gk15_loops(kind, a, b, omega_s, gamma, omega_p):
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    fv1 = np.empty(7)
    fv2 = np.empty(7)
    fc = _integrand(kind, centr, omega_s, gamma, omega_p)
    resg = fc * _WG[3]
    resk = fc * _WGK[7]
    resabs = abs(resk)
    for j in range(3):
        jtw = 2 * j + 1
        absc = hlgth * _XGK[jtw]
        f1 = _integrand(kind, centr - absc, omega_s, gamma, omega_p)
        f2 = _integrand(kind, centr + absc, omega_s, gamma, omega_p)
        fv1[jtw] = f1
        fv2[jtw] = f2
        resg += _WG[j] * (f1 + f2)
        resk += _WGK[jtw] * (f1 + f2)
        resabs += _WGK[jtw] * (abs(f1) + abs(f2))
    for j in range(4):
        jtwm1 = 2 * j
        absc = hlgth * _XGK[jtwm1]
        f1 = _integrand(kind, centr - absc, omega_s, gamma, omega_p)
        f2 = _integrand(kind, centr + absc, omega_s, gamma, omega_p)
        fv1[jtwm1] = f1
        fv2[jtwm1] = f2
        resk += _WGK[jtwm1] * (f1 + f2)
        resabs += _WGK[jtwm1] * (abs(f1) + abs(f2))
    reskh = resk * 0.5
    resasc = _WGK[7] * abs(fc - reskh)
    for j in range(7):
        resasc += _WGK[j] * (abs(fv1[j] - reskh) + abs(fv2[j] - reskh))
    result = resk * hlgth
    resabs *= abs(hlgth)
    resasc *= abs(hlgth)
    abserr = abs((resk - resg) * hlgth)
    if resasc != 0.0 and abserr != 0.0:
        abserr = resasc * min(1.0, (200.0 * abserr / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPMACH):
        abserr = max(_EPMACH * 50.0 * resabs, abserr)
    return result, abserr


def _gk15_numpy(kind, a, b, omega_s, gamma, omega_p):
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    f = _integrand_numpy(kind, centr[:, None] + hlgth[:, None] * _X15, omega_s, gamma, omega_p)
    resk = f @ _WK15
    resg = f @ _WG15
    resabs = np.abs(f) @ _WK15 * np.abs(hlgth)
    resasc = np.abs(f - 0.5 * resk[:, None]) @ _WK15 * np.abs(hlgth)
    abserr = np.abs((resk - resg) * hlgth)
    scaled = (resasc != 0.0) & (abserr != 0.0)
    abserr[scaled] = resasc[scaled] * np.minimum(
        1.0, (200.0 * abserr[scaled] / resasc[scaled]) ** 1.5
    )
    floor = resabs > _UFLOW / (50.0 * _EPMACH)
    abserr[floor] = np.maximum(_EPMACH * 50.0 * resabs[floor], abserr[floor])
    return resk * hlgth, abserr


@njit
def _integrate_mode_loops(kind, omega_s, gamma, omega_p, breaks, rtol, atol, limit):
    nb = breaks.size - 1
    cap = max(limit, nb) + 1
    lo = np.empty(cap)
    hi = np.empty(cap)
    res = np.empty(cap)
    err = np.empty(cap)
    for i in range(nb):
        lo[i] = breaks[i]
        hi[i] = breaks[i + 1]
        res[i], err[i] = _gk15_loops(kind, lo[i], hi[i], omega_s, gamma, omega_p)
    n = nb
    while True:
        total = 0.0
        etot = 0.0
        for i in range(n):
            total += res[i]
            etot += err[i]
        if etot <= max(atol, rtol * abs(total)):
            return total, etot, n, 0
        if n >= limit:
            return total, etot, n, 1
        k = 0
        for i in range(1, n):
            if err[i] > err[k]:
                k = i
        mid = 0.5 * (lo[k] + hi[k])
        if not (lo[k] < mid < hi[k]):
            return total, etot, n, 2
        r1, e1 = _gk15_loops(kind, lo[k], mid, omega_s, gamma, omega_p)
        r2, e2 = _gk15_loops(kind, mid, hi[k], omega_s, gamma, omega_p)
        lo[n] = mid
        hi[n] = hi[k]
        res[n] = r2
        err[n] = e2
        hi[k] = mid
        res[k] = r1
        err[k] = e1
        n += 1


def _integrate_mode_numpy(kind, omega_s, gamma, omega_p, breaks, rtol, atol, limit):
    lo = breaks[:-1].copy()
    hi = breaks[1:].copy()
    res, err = _gk15_numpy(kind, lo, hi, omega_s, gamma, omega_p)
    while True:
        total = res.sum()
        etot = err.sum()
        tol = max(atol, rtol * abs(total))
        if etot <= tol:
            return total, etot, lo.size, 0
        room = limit - lo.size
        if room <= 0:
            return total, etot, lo.size, 1
        # bisect the worst intervals, at least the single worst one
        order = np.argsort(-err, kind="stable")
        nsplit = max(1, int(np.count_nonzero(err > tol / lo.size)))
        split = np.sort(order[: min(nsplit, room)])
        mid = 0.5 * (lo[split] + hi[split])
        if np.any(mid <= lo[split]) or np.any(mid >= hi[split]):
            return total, etot, lo.size, 2
        keep = np.ones(lo.size, dtype=bool)
        keep[split] = False
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        new_res, new_err = _gk15_numpy(kind, new_lo, new_hi, omega_s, gamma, omega_p)
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        res = np.concatenate([res[keep], new_res])
        err = np.concatenate([err[keep], new_err])
        perm = np.argsort(lo, kind="stable")
        lo, hi, res, err = lo[perm], hi[perm], res[perm], err[perm]


def integrate_mode(kind, omega_s, gamma, omega_p, breaks, rtol=1e-8, atol=0.0, limit=2000):
    """Integrate one single-resonance integrand over ``[breaks[0], breaks[-1]]``.

    ``breaks`` is an increasing array of initial subdivision points (at
    least two). Returns ``(value, error_estimate, intervals)``; raises
    :class:`QuadratureError` when the requested accuracy is not reached
    within ``limit`` intervals.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown integrand kind {kind!r}")
    breaks = np.ascontiguousarray(breaks, dtype=np.float64)
    if breaks.size < 2 or np.any(np.diff(breaks) <= 0.0):
        raise ValueError("breaks must be strictly increasing with at least two entries")
    kernel = _integrate_mode_loops if _jit.USE_NUMBA else _integrate_mode_numpy
    value, error, nint, ier = kernel(
        int(kind), float(omega_s), float(gamma), float(omega_p), breaks,
        float(rtol), float(atol), int(limit),
    )
    if ier == 1:
        raise QuadratureError("maximum number of subdivisions reached",
                              estimate=value, error=error, intervals=nint)
    if ier == 2:
        raise QuadratureError("roundoff prevents further subdivision",
                              estimate=value, error=error, intervals=nint)
    return float(value), float(error), int(nint)


def integrand(kind, omega, omega_s, gamma, omega_p):
    """Vectorised evaluation of the single-mode integrand ``kind``."""
    return _integrand_numpy(kind, np.asarray(omega, dtype=float), omega_s, gamma, omega_p)
