import math

import numpy as np
import pytest

mp = pytest.importorskip("mpmath")

from ktf_kit.specfun import (
    Quadrature,
    bessel_J_2it,
    bessel_K,
    bessel_K_it,
    gamma_complex,
    j2it_values,
    k_squared_integral,
)
from ktf_kit.specfun import _j2it_ode_extend

mp.mp.dps = 30


def test_gamma_one():
    assert abs(gamma_complex(1) - 1) < 1e-14
    assert abs(gamma_complex(5) - 24) < 1e-12


def test_gamma_reflection_line():
    for t in np.linspace(0.0, 20.0, 41):
        v = abs(gamma_complex(complex(0.5, t))) ** 2 * math.cosh(math.pi * t)
        assert abs(v - math.pi) < 1e-10 * math.pi


def test_gamma_vs_highprec_oracle():
    for re in (-2.3, -0.5, 0.1, 0.5, 1.0, 3.7, 10.0):
        for im in (0.0, 0.5, 2.0, 8.0, 15.0, 30.0):
            z = complex(re, im)
            if z.imag == 0 and z.real <= 0 and z.real == int(z.real):
                continue
            ref = complex(mp.gamma(mp.mpc(z.real, z.imag)))
            assert abs(gamma_complex(z) - ref) <= 1e-12 * abs(ref)


def test_gamma_pole():
    with pytest.raises(ValueError):
        gamma_complex(0)
    with pytest.raises(ValueError):
        gamma_complex(-3)


def test_bessel_K_it_against_oracle():
    for t in (0.0, 0.5, 1.0, 2.0, 10.0, 30.0):
        for x in (1e-3, 0.05, 1.0, 2 * math.pi, 20.0, 50.0):
            ref = complex(mp.besselk(mp.mpc(0, t), x))
            assert abs(ref.imag) < 1e-25
            assert abs(bessel_K_it(t, x) - ref.real) < 1e-10


def test_bessel_K_it_properties():
    with pytest.raises(ValueError):
        bessel_K_it(1.0, 0.0)
    # positive and decreasing at t=0
    xs = np.linspace(0.1, 8.0, 40)
    vals = bessel_K_it(0.0, xs)
    assert np.all(vals > 0)
    assert np.all(np.diff(vals) < 0)
    # exponential decay envelope at x = 50
    v = bessel_K_it(1.0, 50.0)
    assert abs(v) <= math.sqrt(math.pi / 100.0) * math.exp(-50) * 1.2


def test_bessel_K_complex_order():
    for nu in (0.6, 0.75, 1.0, 1.5, 0.5 + 1j, 2j):
        for x in (0.5, 2.0, 6.28):
            ref = complex(mp.besselk(mp.mpc(nu), x))
            assert abs(bessel_K(nu, x) - ref) <= 1e-9 * max(1e-12, abs(ref))


@pytest.mark.parametrize("t", [0.0, 0.5, 1.0, 2.0])
def test_k_squared_integral(t):
    val = k_squared_integral(t)
    ref = math.pi / (8 * math.cosh(math.pi * t))
    assert abs(val - ref) <= 1e-6 * ref


def test_bessel_J_series_values():
    assert abs(bessel_J_2it(0.0, 1.0) - float(mp.besselj(0, 1))) < 1e-12
    for t in (0.0, 0.3, 1.0, 2.0, 4.0):
        for x in (0.01, 0.5, 5.0, 10.0, 25.0, 30.0):
            ref = complex(mp.besselj(mp.mpc(0, 2 * t), x))
            assert abs(bessel_J_2it(t, x) - ref) <= 1e-8 * max(1e-300, abs(ref))


def test_bessel_J_conjugate_symmetry():
    for t in (0.3, 1.7):
        for x in (0.5, 4.0):
            v = bessel_J_2it(t, x)
            assert abs(bessel_J_2it(-t, x) - v.conjugate()) < 1e-12


def test_bessel_J_gamma_majorant():
    # |J_{2it}(x)| <= (x/2)^0 * e / |Gamma(2it + 1/2)|-style bound on samples
    for t in (0.5, 1.0, 2.0):
        for x in (0.5, 2.0, 8.0):
            v = abs(bessel_J_2it(t, x))
            bound = 3.0 / abs(gamma_complex(complex(0.5, 2 * t)))
            assert v <= bound


def test_bessel_J_cutoff_error():
    with pytest.raises(ValueError, match="cutoff"):
        bessel_J_2it(0.0, 31.0)
    with pytest.raises(ValueError):
        bessel_J_2it(0.0, -1.0)


def test_j2it_ode_extension():
    ts = np.array([0.01, 0.5, 2.0, 6.0])
    vals = _j2it_ode_extend(ts, np.array([40.0]))[40.0]
    for t, v in zip(ts, vals):
        ref = complex(mp.besselj(mp.mpc(0, 2 * t), 40.0))
        assert abs(v - ref) <= 1e-8 * abs(ref)
    # consistency with the public values at the seam
    seam = j2it_values(ts, 29.9)
    for t, v in zip(ts, seam):
        ref = complex(mp.besselj(mp.mpc(0, 2 * t), 29.9))
        assert abs(v - ref) <= 1e-8 * abs(ref)


def test_quadrature_schemes():
    for scheme in ("adaptive_gl", "tanh_sinh", "trapezoid"):
        q = Quadrature(scheme, abs_tol=1e-10, rel_tol=1e-10)
        val, err = q.integrate(lambda x: np.exp(-x * x), -8.0, 8.0)
        assert abs(val - math.sqrt(math.pi)) < 1e-8
    with pytest.raises(ValueError):
        Quadrature("adaptive_gl", abs_tol=0.0).integrate(lambda x: x, 0, 1)
    with pytest.raises(ValueError):
        Quadrature("bogus").integrate(lambda x: x, 0, 1)
