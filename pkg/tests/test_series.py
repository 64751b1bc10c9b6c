"""Laurent/bi-series layer: arithmetic, composition, integration, division."""

import pytest

from kleinian.errors import ResidueError, SeriesError
from kleinian.poly import MultiPoly, param
from kleinian.rationals import Q
from kleinian.series import (
    BiSeries, LaurentSeries, divide_homogeneous, series_compose, series_integrate,
)

A = param("a4", 2)


def geometric(order):
    """1/(1 - xi) as a known series."""
    return LaurentSeries({k: MultiPoly.one() for k in range(order)}, order)


def test_add_mul_truncation():
    s = LaurentSeries({0: 1, 1: 2}, order=5)
    t = LaurentSeries({-1: 1}, order=3)
    prod = s * t
    assert prod.coeff(-1) == MultiPoly.one()
    assert prod.coeff(0) == MultiPoly.const(2)
    # order: min(5 + (-1), 3 + 0) = 3
    assert prod.order == 3


def test_inverse_roundtrip():
    s = LaurentSeries({-2: 3, 0: 1, 1: Q(1, 2)}, order=8)
    inv = s.inverse()
    one = s * inv
    assert one.coeff(0) == MultiPoly.one()
    for k in range(1, one.order):
        assert one.coeff(k).is_zero()


def test_inverse_needs_rational_lead():
    s = LaurentSeries({0: MultiPoly.sym(A)}, order=4)
    with pytest.raises(SeriesError):
        s.inverse()


def test_compose_identity_inner():
    outer = LaurentSeries({2: 1}, order=9)
    xi = LaurentSeries.xi_power(1, order=9)
    assert outer.compose(xi).coeff(2) == MultiPoly.one()


def test_compose_pole_with_geometric_check():
    # compose(1/xi, xi + xi^2) = 1/xi - 1 + xi - xi^2 + ...; check by product
    outer = LaurentSeries({-1: 1}, order=6)
    inner = LaurentSeries({1: 1, 2: 1}, order=8)
    comp = series_compose(outer, inner)
    assert comp.coeff(-1) == MultiPoly.one()
    assert comp.coeff(0) == MultiPoly.const(-1)
    prod = comp * inner
    assert prod.coeff(0) == MultiPoly.one()
    for k in range(1, prod.order):
        assert prod.coeff(k).is_zero()


def test_compose_valuation_violation():
    outer = LaurentSeries({-1: 1}, order=4)
    inner = LaurentSeries({0: 1, 1: 1}, order=4)
    with pytest.raises(SeriesError):
        outer.compose(inner)


def test_integrate_basics():
    assert series_integrate(LaurentSeries({2: 1}, 9)).coeff(3) == MultiPoly.const(Q(1, 3))
    assert series_integrate(LaurentSeries({0: 1}, 9)).coeff(1) == MultiPoly.one()


def test_integrate_rejects_residue():
    with pytest.raises(ResidueError):
        series_integrate(LaurentSeries({-1: 1}, 5))


def test_integrate_then_differentiate_roundtrip():
    s = LaurentSeries({0: 1, 1: Q(1, 2), 3: 7}, order=9)
    assert s.integrate().differentiate().coeffs == s.coeffs


def test_biseries_outer_and_symmetry():
    u = LaurentSeries({0: 1, 1: 2}, 4)
    b = BiSeries.outer(u, u)
    assert b.is_symmetric()
    assert b.coeff(1, 1) == MultiPoly.const(4)


def test_divide_homogeneous_exact():
    # (xi + eta)^2 * (xi - eta) / (xi + eta)^2 = xi - eta
    numer = [MultiPoly.one(), MultiPoly.one(), -MultiPoly.one(), -MultiPoly.one()]
    quot = divide_homogeneous(numer, [1, 2, 1])
    assert quot[0] == MultiPoly.one()
    assert quot[1] == -MultiPoly.one()


def test_divide_homogeneous_rejects_remainder():
    numer = [MultiPoly.one(), MultiPoly.zero(), MultiPoly.zero()]
    with pytest.raises(SeriesError):
        divide_homogeneous(numer, [1, 1])
