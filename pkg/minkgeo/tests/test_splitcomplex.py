"""Test split-complex arithmetic, calculus and generalized number systems."""

import numpy as np
import pytest

from minkgeo.core import jets
from minkgeo.core.errors import PreconditionError, ZeroDivisorError
from minkgeo.splitcomplex import (
    ELL,
    ELL_BAR,
    H,
    NumberSystem,
    SplitComplex,
    SplitFunction,
    bounded_entire_function,
    decomposition_residual,
    differentiate,
    generalized_number,
    integrate,
    lorentz_conjugate,
    lorentz_pairing,
    pole_order,
    square_loop,
    wave_operator,
    zero_divisor_lines,
)


def _cubic(w):
    return w**3 + 2 * w


def test_arithmetic_and_idempotents():
    """Test h^2 = 1 and the null idempotents."""
    assert (H * H).isclose(1.0)
    assert (ELL * ELL).isclose(ELL)
    assert (ELL * ELL_BAR).isclose(0.0)
    assert (ELL + ELL_BAR).isclose(1.0)
    w = SplitComplex(3.0, 1.0)
    assert w.norm_sq() == pytest.approx(8.0)
    assert (w * w.inverse()).isclose(1.0)
    assert SplitComplex.from_null(*w.null_components()).isclose(w)
    assert lorentz_pairing(w, w) == pytest.approx(8.0)


def test_zero_divisors_have_no_inverse():
    """Test that |x| = |y| is rejected, and that zero is not a zero divisor."""
    assert SplitComplex(2.0, -2.0).is_zero_divisor()
    assert not SplitComplex(0.0, 0.0).is_zero_divisor()
    assert not SplitComplex(0.0, 0.0).is_invertible()
    assert SplitComplex(2.0, 1.0).is_invertible()
    batch = SplitComplex(np.array([0.0, 1.0, 1.0]), np.array([0.0, -1.0, 0.5]))
    assert batch.is_zero_divisor().tolist() == [False, True, False]
    with pytest.raises(ZeroDivisorError):
        SplitComplex(1.0, 1.0).inverse()
    with pytest.raises(ZeroDivisorError):
        1.0 / SplitComplex(0.0, 0.0)


def test_split_exponential():
    """Test e^(x + h y) = e^x (cosh y + h sinh y)."""
    value = SplitComplex(0.3, -0.7).exp()
    assert value.re == pytest.approx(np.exp(0.3) * np.cosh(0.7))
    assert value.im == pytest.approx(-np.exp(0.3) * np.sinh(0.7))


def test_loop_integral_of_polynomial_vanishes():
    """Test that w^3 + 2w integrates to zero around the unit square."""
    assert integrate(_cubic, square_loop()).magnitude() < 1e-10


def test_path_integral_matches_primitive():
    """Test the integral of w^3 + 2w along a polyline against w^4/4 + w^2."""
    a, b = SplitComplex(0.0, 0.0), SplitComplex(1.0, 0.5)
    got = integrate(_cubic, [(0.0, 0.0), (0.3, 0.9), (1.0, 0.5)])
    primitive = lambda w: w**4 * 0.25 + w * w  # noqa: E731
    assert got.isclose(primitive(b) - primitive(a), tol=1e-10)


def test_differentiate_polynomial():
    """Test Wirtinger derivatives of a split-holomorphic polynomial."""
    w = SplitComplex(0.5, 0.2)
    out = differentiate(_cubic, w)
    assert out.split_holomorphic
    assert out.derivative.isclose(w * w * 3 + 2, tol=1e-12)
    assert out.dwbar.isclose(0.0, tol=1e-12)
    assert out.dalembertian_phi == pytest.approx(0.0, abs=1e-12)


def test_differentiate_conjugate_is_not_holomorphic():
    """Test that conjugation fails the split Cauchy-Riemann equations."""
    out = differentiate(lambda w: w.conj(), SplitComplex(0.1, 0.2))
    assert not out.split_holomorphic
    assert out.derivative is None
    assert out.dwbar.isclose(1.0, tol=1e-12)


def test_black_box_derivative():
    """Test central differences on a black-box cubic."""
    f = SplitFunction(lambda w: w**3, black_box=True)
    out = differentiate(f, SplitComplex(0.5, 0.2))
    assert out.split_holomorphic
    assert out.dw.isclose(SplitComplex(0.87, 0.6), tol=1e-6)


def test_differentiate_outside_domain():
    """Test the domain check."""
    f = SplitFunction(_cubic, ((0.0, 1.0), (0.0, 1.0)))
    with pytest.raises(PreconditionError):
        differentiate(f, SplitComplex(2.0, 0.0))


def test_wave_operator_equals_four_mixed_wirtinger():
    """Test 4 d/dwbar d/dw f against phi_xx - phi_yy and psi_xx - psi_yy."""
    f = lambda w: w.conj() * w.conj() * w  # noqa: E731
    for point in [SplitComplex(0.2, 0.1), SplitComplex(-0.4, 0.6)]:
        box = wave_operator(f, point)
        direct = differentiate(f, point)
        assert box.re == pytest.approx(direct.dalembertian_phi, abs=1e-10)
        assert box.im == pytest.approx(direct.dalembertian_psi, abs=1e-10)
    assert wave_operator(lambda w: w * w.conj(), SplitComplex(0.3, 0.3)).re == pytest.approx(4.0)


def test_lorentz_conjugate_of_exp_cosh():
    """Test that e^x sinh y is the Lorentz conjugate of e^x cosh y."""
    phi = lambda x, y: jets.exp(x) * jets.cosh(y)  # noqa: E731
    psi = lorentz_conjugate(phi)
    for x, y in [(0.5, 0.3), (-0.2, 0.8), (1.0, -0.4)]:
        assert psi(x, y) == pytest.approx(np.exp(x) * np.sinh(y), abs=1e-10)
    assert psi.residual(0.5, 0.3) < 1e-6


def test_lorentz_conjugate_rejects_non_harmonic():
    """Test that x^2 - y^2 has no Lorentz conjugate."""
    with pytest.raises(PreconditionError):
        lorentz_conjugate(lambda x, y: x * x - y * y)


def test_null_decomposition():
    """Test f(w) = lbar f(w + t l) + l f(w + s lbar) for a holomorphic f."""
    assert decomposition_residual(_cubic, SplitComplex(0.2, 0.4), 0.7, -0.3) < 1e-12


def test_bounded_entire_function():
    """Test a bounded non-constant split-holomorphic function."""
    f = bounded_entire_function()
    values = [f(SplitComplex(x, y)).magnitude() for x in (-5.0, 0.0, 5.0) for y in (-5.0, 5.0)]
    assert max(values) <= 1.0
    assert max(values) - min(values) > 0.5
    assert differentiate(f, SplitComplex(0.3, -0.2)).split_holomorphic


def test_pole_order():
    """Test pole orders of 1/w^2 and 1/(w - 1)."""
    assert pole_order(lambda w: (w * w).inverse(), SplitComplex(0.0, 0.0)) == 2
    assert pole_order(lambda w: (w - 1.0).inverse(), SplitComplex(1.0, 0.0)) == 1
    assert pole_order(_cubic, SplitComplex(0.0, 0.0)) == 0
    with pytest.raises(PreconditionError):
        pole_order(lambda w: w.conj(), SplitComplex(0.0, 0.0), max_order=2)


def test_generalized_number_systems():
    """Test classification, norms and products in C_{alpha,beta}."""
    complex_like = generalized_number(1.0, 2.0, -1.0, 0.0, other=(3.0, 4.0))
    assert complex_like.system is NumberSystem.ELLIPTIC
    assert complex_like.norm == pytest.approx(5.0)
    assert [complex_like.product.a, complex_like.product.b] == pytest.approx([-5.0, 10.0])
    inv = complex_like.inverse
    assert [inv.a, inv.b] == pytest.approx([0.2, -0.4])

    split = generalized_number(1.0, 1.0, 1.0, 0.0)
    assert split.system is NumberSystem.HYPERBOLIC
    assert not split.invertible
    assert split.inverse is None
    assert sorted(split.zero_divisor_lines) == pytest.approx([-1.0, 1.0])

    dual = generalized_number(0.0, 1.0, 0.0, 0.0)
    assert dual.system is NumberSystem.PARABOLIC
    assert dual.to_dict()["system"] == "parabolic"
    assert zero_divisor_lines(-1.0, 0.0) == []
