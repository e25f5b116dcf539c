"""Rational functions in the infinitesimal eps: exact base-field layer."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from geokernel.nafield import EPS, Poly, RatFunc, frac_sqrt, poly_sqrt


class TestPoly:
    def test_divmod_exact(self):
        # (x^2 - 1) = (x - 1)(x + 1)
        p = Poly([Fraction(-1), Fraction(0), Fraction(1)])
        d = Poly([Fraction(-1), Fraction(1)])
        q, r = p.divmod(d)
        assert r.is_zero()
        assert (q * d - p).is_zero()

    def test_sqrt_of_square(self):
        p = Poly([Fraction(2), Fraction(3), Fraction(1)])
        sq = p * p
        root = poly_sqrt(sq)
        assert root is not None
        assert (root * root - sq).is_zero()

    def test_sqrt_of_nonsquare(self):
        assert poly_sqrt(Poly([Fraction(0), Fraction(1)])) is None


class TestFracSqrt:
    def test_perfect(self):
        assert frac_sqrt(Fraction(9, 4)) == Fraction(3, 2)

    def test_imperfect(self):
        assert frac_sqrt(Fraction(2)) is None
        assert frac_sqrt(Fraction(1, 3)) is None


class TestRatFunc:
    def test_eps_is_positive_infinitesimal(self):
        assert EPS.sign() > 0
        assert EPS.valuation() == 1
        # smaller than every positive rational
        for k in (1, 10 ** 6):
            assert (RatFunc.const(Fraction(1, k)) - EPS).sign() > 0

    def test_valuation_arithmetic(self):
        x = EPS * EPS
        assert x.valuation() == 2
        inv = RatFunc.const(1) / EPS
        assert inv.valuation() == -1
        assert (x * inv).valuation() == 1

    def test_shadow(self):
        x = RatFunc.const(Fraction(3, 7)) + EPS * 5
        assert x.shadow() == Fraction(3, 7)
        assert (RatFunc.const(1) / EPS).shadow() is None

    def test_sqrt_exact(self):
        sq = EPS * EPS * 4
        r = sq.sqrt_exact()
        assert r is not None and r * r == sq
        assert EPS.sqrt_exact() is None

    small = st.fractions(min_value=-100, max_value=100)

    @given(a=small, b=small, c=small)
    @settings(max_examples=100, deadline=None)
    def test_field_laws(self, a, b, c):
        xa = RatFunc.const(a) + EPS * b
        xb = RatFunc.const(b) - EPS * c
        xc = RatFunc.const(c) + EPS * a
        assert (xa + xb) * xc == xa * xc + xb * xc
        assert xa + xb == xb + xa
        if not xb.is_zero():
            assert (xa / xb) * xb == xa

    @given(a=small, b=small)
    @settings(max_examples=100, deadline=None)
    def test_order_respects_addition(self, a, b):
        xa = RatFunc.const(a) + EPS * b
        if xa.sign() > 0:
            assert (xa + EPS).sign() > 0
