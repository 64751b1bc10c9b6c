"""Polynomial layer: canonical form, weights, arithmetic."""

from hypothesis import given, strategies as st

from kleinian.poly import (
    MultiPoly, monomial_div, monomial_divides, monomial_key, monomial_mul,
    param, poly_arith, wp_symbol,
)
from kleinian.rationals import Q

GAPS = (1, 3)
A4 = param("a4", 2)
A3 = param("a3", 4)
P11 = wp_symbol((1, 1), GAPS)
P12 = wp_symbol((1, 2), GAPS)


def test_additive_inverse_is_zero():
    x = MultiPoly.sym(P11)
    assert (x + (-x)).is_zero()
    assert poly_arith(x, -x, "add") == MultiPoly.zero()


def test_weight_additivity_under_mul():
    a = MultiPoly.sym(A4) * MultiPoly.sym(P11)   # weight 4
    b = MultiPoly.sym(P11)                        # weight 2
    prod = poly_arith(a, b, "mul")
    assert prod.is_homogeneous(6)
    assert prod.weight() == 6


def test_canonical_fixpoint_and_order_stability():
    p = MultiPoly.sym(P11, 2, 6) + MultiPoly.sym(P12, 1, 4)
    q = MultiPoly.sym(P12, 1, 4) + MultiPoly.sym(P11, 2, 6)
    assert p == q
    assert p.sorted_terms() == q.sorted_terms()
    # multiplying by one leaves the term map untouched
    assert (p * MultiPoly.one()).terms == p.terms


def test_monomial_division():
    m1 = ((P11, 2), (P12, 1))
    m2 = ((P11, 1),)
    assert monomial_divides(m2, m1)
    assert not monomial_divides(m1, m2)
    assert monomial_div(m1, m2) == ((P11, 1), (P12, 1))
    assert monomial_mul(m2, ((P12, 1),)) == ((P11, 1), (P12, 1))


def test_term_order_is_weight_then_lex():
    lo = ((P11, 1),)          # weight 2
    hi = ((P11, 2),)          # weight 4
    assert monomial_key(lo) < monomial_key(hi)
    # same weight 4: p12 vs p11^2 ordered by name tuples
    assert monomial_key(((P12, 1),)) != monomial_key(hi)


def test_substitute_specializes_parameters():
    p = MultiPoly.sym(A4) * MultiPoly.sym(P11) + MultiPoly.sym(A3)
    out = p.substitute({A4: MultiPoly.const(Q(3, 2)), A3: MultiPoly.const(2)})
    assert out == MultiPoly.sym(P11, coeff=Q(3, 2)) + MultiPoly.const(2)


def test_derive_leibniz():
    # d/dp11 acting formally: p11^2 -> 2 p11
    dmap = lambda s: MultiPoly.one() if s == P11 else None
    p = MultiPoly.sym(P11, 2) * MultiPoly.sym(P12)
    assert p.derive(dmap) == MultiPoly.sym(P11, coeff=2) * MultiPoly.sym(P12)


@st.composite
def homogeneous_poly(draw, weight):
    """Random homogeneous polynomial of the given weight in a4 (2), p11 (2)."""
    terms = {}
    for e in range(weight // 2 + 1):
        c = draw(st.integers(-5, 5))
        if c:
            mono_syms = []
            if e:
                mono_syms.append((A4, e))
            if weight // 2 - e:
                mono_syms.append((P11, weight // 2 - e))
            terms[tuple(sorted(mono_syms))] = Q(c)
    return MultiPoly(terms)


@given(homogeneous_poly(4), homogeneous_poly(6))
def test_homogeneous_product_weights(a, b):
    prod = a * b
    if not prod.is_zero():
        assert prod.is_homogeneous(10)


def test_pow_matches_repeated_mul():
    p = MultiPoly.sym(P11) + MultiPoly.const(1)
    assert p ** 3 == p * p * p
    assert p ** 0 == MultiPoly.one()


def test_text_rendering():
    p = MultiPoly.sym(P11, 2, 6) + MultiPoly.sym(A3, 1, Q(1, 2))
    assert p.text() == "6*p11^2 + 1/2*a3"
