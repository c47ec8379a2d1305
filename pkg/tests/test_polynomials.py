import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moondec.errors import BothZeroError, ZeroDivisionPolyError, ZeroPolyError
from moondec.polynomials import (
    MINUS_INFINITY,
    ONE,
    Poly,
    X,
    poly_divrem,
    poly_gcd,
    poly_text,
    squarefree_decomposition,
)
from oracles import FLAGSHIP_NUM, FLAGSHIP_DEN, naive_mul, naive_pow


def P(*coeffs):
    return Poly.from_coeffs(coeffs)


def test_degree_of_zero_is_a_marker_not_a_number():
    assert Poly.from_coeffs([]).degree is MINUS_INFINITY
    assert MINUS_INFINITY < 0
    assert MINUS_INFINITY < -10 ** 9
    assert not MINUS_INFINITY >= 0
    assert P(3).degree == 0


def test_divrem_telescoping():
    q, r = poly_divrem(P(-1, 0, 0, 1), P(-1, 1))  # (x^3 - 1) / (x - 1)
    assert q == P(1, 1, 1)
    assert r.is_zero


def test_divrem_constant_remainder():
    q, r = poly_divrem(P(1, 0, 1), P(0, 0, 1))  # (x^2 + 1) / x^2
    assert q == ONE
    assert r == ONE


def test_divrem_flagship_numerator_by_cube():
    num = Poly.from_coeffs(FLAGSHIP_NUM)
    cube = Poly.from_coeffs(naive_pow([6, 1], 3))  # (x+6)^3 by the oracle
    q, r = poly_divrem(num, cube)
    assert r.is_zero
    assert q * cube == num


def test_divrem_zero_divisor():
    with pytest.raises(ZeroDivisionPolyError):
        poly_divrem(X, Poly.from_coeffs([]))


coeff = st.integers(min_value=-9, max_value=9)


@settings(max_examples=200, deadline=None)
@given(st.lists(coeff, max_size=9), st.lists(coeff, min_size=1, max_size=9))
def test_divrem_reconstruction(a_coeffs, b_coeffs):
    a = Poly.from_coeffs(a_coeffs)
    b = Poly.from_coeffs(b_coeffs)
    if b.is_zero:
        return
    q, r = poly_divrem(a, b)
    assert q * b + r == a
    assert r.is_zero or r.degree < b.degree


def test_gcd_simple():
    assert poly_gcd(P(-1, 0, 1), P(1, -2, 1)) == P(-1, 1)


def test_gcd_with_zero_gives_monic():
    assert poly_gcd(P(2, 4), Poly.from_coeffs([])) == P(Fraction(1, 2), 1)
    with pytest.raises(BothZeroError):
        poly_gcd(Poly.from_coeffs([]), Poly.from_coeffs([]))


def test_gcd_flagship_parts_coprime():
    num = Poly.from_coeffs(FLAGSHIP_NUM)
    den = Poly.from_coeffs(FLAGSHIP_DEN)
    assert poly_gcd(num, den) == ONE


@settings(max_examples=100, deadline=None)
@given(st.lists(coeff, min_size=1, max_size=5),
       st.lists(coeff, min_size=1, max_size=5),
       st.lists(coeff, min_size=1, max_size=4))
def test_gcd_divides_both_and_catches_common_factor(ac, bc, gc):
    a = Poly.from_coeffs(ac)
    b = Poly.from_coeffs(bc)
    g = Poly.from_coeffs(gc)
    if a.is_zero or b.is_zero or g.is_zero:
        return
    d = poly_gcd(a * g, b * g)
    _, r1 = poly_divrem(a * g, d)
    _, r2 = poly_divrem(b * g, d)
    assert r1.is_zero and r2.is_zero
    if g.degree >= 1:
        _, r3 = poly_divrem(d, g.monic())
        assert r3.is_zero


def test_squarefree_cubed_pair():
    cubed = Poly.from_coeffs(naive_mul(naive_pow([0, 1], 3),
                                       naive_pow([6, 1], 3)))
    assert squarefree_decomposition(cubed) == [(P(0, 6, 1), 3)]


def test_squarefree_trivial_and_unit():
    assert squarefree_decomposition(P(1, 0, 1)) == [(P(1, 0, 1), 1)]
    assert squarefree_decomposition(P(0, 0, 0, 0, 5)) == [(X, 4)]
    with pytest.raises(ZeroPolyError):
        squarefree_decomposition(Poly.from_coeffs([]))


def test_squarefree_reexpansion_random():
    rng = random.Random(5)
    for _ in range(50):
        parts = []
        total = ONE
        for mult in range(1, rng.randint(2, 4)):
            p = Poly.from_coeffs([rng.randint(-4, 4), rng.randint(1, 3)])
            total = total * p ** mult
            parts.append((p, mult))
        out = squarefree_decomposition(total)
        rebuilt = Poly.constant(total.lc)
        for p, m in out:
            rebuilt = rebuilt * p ** m
        assert rebuilt == total


def test_text_round_trip_shapes():
    assert poly_text(P(36, -6, 1)) == "x^2-6*x+36"
    assert poly_text(P(0)) == "0"
    assert poly_text(P(Fraction(3, 2), 0, -1)) == "-x^2+3/2"
    assert poly_text(X) == "x"
