"""Complex Gamma, Bessel functions of imaginary order, and quadrature helpers.

K_it comes from the real cosh-transform integral, J_2it from its power series
below a cutoff (with an ODE continuation used internally above it), Gamma from
a fixed Lanczos table.  All constants live here so results are reproducible
bit-for-bit across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Lanczos approximation, g = 7, 9 coefficients.  One fixed table; do not tune.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_complex(z: complex) -> complex:
    """Gamma(z) by the Lanczos sum; reflection handles Re(z) < 1/2.

    Relative error below 1e-12 for |Im z| <= 30 away from the poles.
    """
    z = complex(z)
    if z.imag == 0 and z.real == int(z.real) and z.real <= 0:
        raise ValueError(f"gamma pole at z = {z}")
    if z.real < 0.5:
        s = math.pi if z.imag == 0 else np.pi
        return s / (np.sin(np.pi * z) * gamma_complex(1 - z))
    z -= 1
    x = _LANCZOS_C[0]
    for i in range(1, len(_LANCZOS_C)):
        x += _LANCZOS_C[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return complex(math.sqrt(2 * math.pi) * t ** (z + 0.5) * np.exp(-t) * x)


def log_abs_gamma_half_plus(t: float) -> float:
    """log |Gamma(1/2 + it)| via the reflection formula (exact)."""
    # |Gamma(1/2+it)|^2 = pi / cosh(pi t)
    return 0.5 * (math.log(math.pi) - _log_cosh(math.pi * t))


def _log_cosh(x: float) -> float:
    a = abs(x)
    return a + math.log1p(math.exp(-2 * a)) - math.log(2)


# ----------------------------------------------------------------------------
# Gauss-Legendre machinery


@lru_cache(maxsize=None)
def _leggauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def gl_panels(a: float, b: float, n_panels: int, order: int = 16):
    """Nodes and weights of a composite Gauss-Legendre rule on [a, b]."""
    x0, w0 = _leggauss(order)
    edges = np.linspace(a, b, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    xs = (mid[:, None] + half[:, None] * x0[None, :]).ravel()
    ws = (half[:, None] * w0[None, :]).ravel()
    return xs, ws


@dataclass
class Quadrature:
    """Adaptive integration config: refine until two levels agree.

    scheme 'adaptive_gl' doubles composite Gauss-Legendre panels,
    'tanh_sinh' halves the tanh-sinh step, 'trapezoid' doubles trapezoid
    resolution.  integrate() returns (value, error_estimate).
    """

    scheme: str = "adaptive_gl"
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_depth: int = 12

    def integrate(self, f, a: float, b: float) -> tuple[complex, float]:
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.scheme == "adaptive_gl":
            return self._adaptive(lambda k: self._gl_level(f, a, b, k))
        if self.scheme == "tanh_sinh":
            return self._adaptive(lambda k: self._ts_level(f, a, b, k))
        if self.scheme == "trapezoid":
            return self._adaptive(lambda k: self._trap_level(f, a, b, k))
        raise ValueError(f"unknown scheme {self.scheme!r}")

    def _adaptive(self, level):
        prev = level(0)
        err = math.inf
        for k in range(1, self.max_depth + 1):
            cur = level(k)
            err = abs(cur - prev)
            if err <= self.abs_tol + self.rel_tol * abs(cur):
                return cur, err
            prev = cur
        return prev, err

    def _gl_level(self, f, a, b, k):
        xs, ws = gl_panels(a, b, 2**k, 16)
        return np.sum(ws * f(xs))

    def _ts_level(self, f, a, b, k):
        h = 0.5**k
        t = np.arange(-int(3.6 / h), int(3.6 / h) + 1) * h
        u = np.tanh(0.5 * np.pi * np.sinh(t))
        w = 0.5 * np.pi * np.cosh(t) / np.cosh(0.5 * np.pi * np.sinh(t)) ** 2 * h
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        return np.sum(half * w * f(mid + half * u))

    def _trap_level(self, f, a, b, k):
        n = 64 * 2**k
        xs = np.linspace(a, b, n + 1)
        vals = f(xs)
        return (np.sum(vals) - 0.5 * (vals[0] + vals[-1])) * (b - a) / n


# ----------------------------------------------------------------------------
# K-Bessel of (mostly imaginary) order


def _bessel_K_nodes(x_min: float, freq: float):
    """Quadrature nodes for int_0^inf e^{-x cosh u} * (trig in u) du."""
    u_max = math.acosh(max(2.0, 745.0 / x_min))
    width = min(0.5, math.pi / (2.0 * (1.0 + freq)))
    n_panels = max(8, int(u_max / width) + 1)
    return gl_panels(0.0, u_max, n_panels, 16)


def bessel_K_it(t: float, x) -> float | np.ndarray:
    """K_{it}(x) = int_0^inf exp(-x cosh u) cos(tu) du for x > 0; real-valued.

    Absolute error below 1e-10 for x >= 1e-3, |t| <= 30.
    """
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0):
        raise ValueError("bessel_K_it requires x > 0")
    u, w = _bessel_K_nodes(float(np.min(xs)), abs(t))
    out = np.exp(-np.multiply.outer(xs, np.cosh(u))) @ (w * np.cos(t * u))
    return float(out) if np.isscalar(x) or xs.ndim == 0 else out


def bessel_K(nu: complex, x: float) -> complex:
    """K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du, x > 0, complex order.

    Accurate for |Re nu| <= 2 and x bounded away from 0 (the Eisenstein
    Fourier series needs nu = s with Re s in [0, 3/2]).
    """
    if x <= 0:
        raise ValueError("bessel_K requires x > 0")
    nu = complex(nu)
    u_max = math.acosh(max(2.0, (745.0 + 10.0) / x))
    # guard against cosh(nu u) growth for real parts
    if abs(nu.real) > 0:
        lo = x
        while x * math.cosh(u_max) - abs(nu.real) * u_max < 745.0 and u_max < 60.0:
            u_max += 0.5
        _ = lo
    width = min(0.5, math.pi / (2.0 * (1.0 + abs(nu.imag))))
    u, w = gl_panels(0.0, u_max, max(8, int(u_max / width) + 1), 16)
    vals = np.exp(-x * np.cosh(u)) * np.cosh(nu * u)
    return complex(np.sum(w * vals))


def k_squared_integral(t: float, rel_tol: float = 1e-9) -> float:
    """int_0^inf K_{it}(2 pi w)^2 dw, numerically (matches pi/(8 cosh(pi t)))."""
    # substitute w = e^v; integrand decays fast on both ends
    def g(v):
        w = np.exp(v)
        return bessel_K_it(t, 2 * np.pi * w) ** 2 * w

    quad = Quadrature("adaptive_gl", abs_tol=1e-14, rel_tol=rel_tol, max_depth=9)
    val, _ = quad.integrate(g, -26.0, 3.0)
    return float(np.real(val))


# ----------------------------------------------------------------------------
# J-Bessel of imaginary order 2it

J_SERIES_CUTOFF = 30.0
J_SERIES_MAX_TERMS = 120


def bessel_J_2it(t: float, x: float) -> complex:
    """J_{2it}(x) for 0 < x <= J_SERIES_CUTOFF, relative error ~1e-9.

    The power series is used where its cancellation stays harmless
    (x <= 6); for 6 < x <= cutoff the value is continued by integrating
    Bessel's equation from series data at x = 6, which preserves the stated
    accuracy (the raw series loses ~e^x in float64).  Above the cutoff a
    ValueError names the cutoff; larger arguments are reached internally by
    the ktf module through :func:`j2it_values`.
    """
    if x <= 0:
        raise ValueError("bessel_J_2it requires x > 0")
    if x > J_SERIES_CUTOFF:
        raise ValueError(
            f"x = {x} above series cutoff {J_SERIES_CUTOFF}; the ktf module "
            "handles larger arguments internally")
    return complex(j2it_values(np.array([t]), x)[0])


def _j_series(nu: np.ndarray, x: float) -> np.ndarray:
    """Power series of J_nu(x) for an array of complex orders."""
    g = np.array([gamma_complex(1 + v) for v in nu])
    term = np.exp(nu * math.log(x / 2.0)) / g
    total = term.copy()
    z = x * x / 4.0
    for k in range(1, J_SERIES_MAX_TERMS + 1):
        term = term * (-z) / (k * (nu + k))
        total += term
        if np.max(np.abs(term)) < 1e-18 * max(1e-300, float(np.max(np.abs(total)))):
            break
    return total


def _j2it_series(ts: np.ndarray, x: float) -> np.ndarray:
    return _j_series(2j * np.asarray(ts, dtype=float), x)


def _j2it_ode_extend(ts: np.ndarray, x_targets: np.ndarray, x0: float = 6.0,
                     step: float = 0.002) -> dict[float, np.ndarray]:
    """J_{2it}(x) beyond the safe series range by integrating Bessel's ODE.

    Seeds at x0 with series values (cancellation-free there) and the exact
    derivative J_nu' = (nu/x) J_nu - J_{nu+1}, then fixed-step RK4.  For
    imaginary order the equation is oscillatory with bounded solutions, so
    forward integration is stable.
    """
    ts = np.asarray(ts, dtype=float)
    nu = 2j * ts
    nu2 = nu * nu  # = -4 t^2
    y = _j_series(nu, x0)
    yp = (nu / x0) * y - _j_series(nu + 1, x0)

    def rhs(x, y, yp):
        return yp, -(yp / x) - (1.0 - nu2 / (x * x)) * y

    out: dict[float, np.ndarray] = {}
    x = x0
    for xt in np.sort(x_targets):
        if xt < x0:
            raise ValueError("ODE extension only goes upward from the seed")
        while x < xt - 1e-12:
            h = min(step, xt - x)
            k1y, k1p = rhs(x, y, yp)
            k2y, k2p = rhs(x + h / 2, y + h / 2 * k1y, yp + h / 2 * k1p)
            k3y, k3p = rhs(x + h / 2, y + h / 2 * k2y, yp + h / 2 * k2p)
            k4y, k4p = rhs(x + h, y + h * k3y, yp + h * k3p)
            y = y + h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
            yp = yp + h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p)
            x += h
        out[float(xt)] = y.copy()
    return out


def j2it_values(ts: np.ndarray, x: float) -> np.ndarray:
    """J_{2it}(x) on an array of t, choosing series or ODE continuation."""
    ts = np.asarray(ts, dtype=float)
    if x <= 6.0:
        return _j2it_series(ts, x)
    return _j2it_ode_extend(ts, np.array([x]))[float(x)]
