import random
from fractions import Fraction

import pytest

from moondec.errors import (
    LeadingMismatchError,
    SeriesZeroDivisionError,
    ZeroSeriesError,
)
from moondec.parsing import parse_ratfun
from moondec.polynomials import Poly
from moondec.ratfun import make_ratfun
from moondec.series import (
    EXACT,
    GeneralLaurent,
    QSeries,
    eval_ratfun_at_series,
    inner_series_solve,
    power_support,
    series_arith,
    substitute_power,
)
from oracles import j_expansion


def L(lead, coeffs, prec):
    return GeneralLaurent.make(lead, [Fraction(c) for c in coeffs], prec)


def test_mul_sub_add_examples():
    a = L(-1, [1, 0, 1], 1)            # 1/q + q
    b = L(-1, [1, 0, -1], 1)           # 1/q - q
    prod = series_arith(a, b, "mul")
    assert prod.lead == -2 and prod.prec == 0
    assert prod.coeff(-2) == 1 and prod.coeff(-1) == 0 and prod.coeff(0) == 0
    bare = L(-1, [1, 0, 0], 1)            # exactly 1/q, certified to q^1
    total = series_arith(bare, L(-1, [-1, 0, 0], 1), "add")
    assert total.is_zero and total.prec == 1


def test_j_head_subtraction():
    j = QSeries.from_coeffs(j_expansion(4))
    tail = j.to_laurent() - L(-1, [1, 0, 0, 0, 0, 0], 4)
    assert tail.lead == 0
    assert tail.coeff(0) == 744
    assert tail.coeff(1) == 196884


def test_division_and_errors():
    a = L(-2, [1, 0, 0, 0, 1], 2)      # 1/q^2 + q^2
    b = L(-1, [1, 0, 1], 1)            # 1/q + q
    quot = series_arith(a, b, "div")
    back = series_arith(quot, b, "mul")
    for k in range(back.lead, back.prec + 1):
        assert back.coeff(k) == (a.coeff(k) if k <= a.prec else 0)
    with pytest.raises(SeriesZeroDivisionError):
        series_arith(a, L(1, [], 0), "div")


def test_minimal_precision_keeps_only_the_lead():
    shallow = L(-1, [1], -1)           # only the 1/q term is certified
    cube = shallow * shallow * shallow
    assert cube.lead == -3 and cube.prec == -3
    with pytest.raises(ValueError):
        cube.coeff(-2)                 # beyond the certified bound


def test_substitute_power():
    s = QSeries.from_coeffs([0, 1])    # 1/q + q
    out = substitute_power(s, 2)
    assert out.lead == -2 and out.prec == 2
    assert out.coeff(-2) == 1 and out.coeff(2) == 1
    assert all(out.coeff(k) == 0 for k in (-1, 0, 1))
    same = substitute_power(s, 1)
    assert same.lead == -1 and same.coeff(1) == 1


def test_substitute_power_j():
    j = QSeries.from_coeffs(j_expansion(4))
    out = substitute_power(j, 3)
    assert out.lead == -3
    assert out.coeff(0) == 744
    assert out.coeff(3) == 196884
    assert out.coeff(1) == 0 and out.coeff(2) == 0
    assert out.prec == 12


def test_eval_ratfun_examples():
    s = QSeries.from_coeffs([0, 1, 0, 0])   # 1/q + q, certified to q^3
    sq = eval_ratfun_at_series(parse_ratfun("x^2"), s)
    assert (sq.lead, sq.coeff(-2), sq.coeff(0), sq.coeff(2)) == (-2, 1, 2, 1)
    ident = eval_ratfun_at_series(parse_ratfun("x"), s)
    assert ident.lead == -1 and ident.coeff(1) == 1


def test_eval_flagship_leading_exponent(flagship):
    rng = random.Random(50)
    for _ in range(5):
        s = QSeries.from_coeffs([rng.randint(-5, 5) for _ in range(20)])
        value = eval_ratfun_at_series(flagship, s)
        assert value.lead == -3
        assert value.coeff(-3) == 1


def test_inner_solve_square():
    target = L(-2, [1, 0, 2, 0, 1], 2)     # 1/q^2 + 2 + q^2
    s = inner_series_solve(parse_ratfun("x^2"), target)
    # derivable precision is target.prec + 2 - 1 = 3
    assert s.coeffs == (Fraction(0), Fraction(1), Fraction(0), Fraction(0))
    forward = eval_ratfun_at_series(parse_ratfun("x^2"), s)
    for k in range(-2, min(forward.prec, 2) + 1):
        assert forward.coeff(k) == target.coeff(k)


def test_inner_solve_cube_round_trip():
    rng = random.Random(51)
    s = QSeries.from_coeffs([rng.randint(-3, 3) for _ in range(12)])
    cubed = eval_ratfun_at_series(parse_ratfun("x^3"), s)
    back = inner_series_solve(parse_ratfun("x^3"), cubed)
    assert back.coeffs[: s.prec + 1] == s.coeffs


def test_inner_solve_leading_mismatch():
    with pytest.raises(LeadingMismatchError):
        inner_series_solve(parse_ratfun("x^2"), L(-1, [1, 0, 0], 1))
    with pytest.raises(LeadingMismatchError):
        inner_series_solve(parse_ratfun("(x^2+1)/x^2"),
                           L(-1, [1, 0, 0], 1))


def test_inner_solve_round_trip_random():
    rng = random.Random(52)
    for _ in range(25):
        dn = rng.randint(1, 4)
        dd = rng.randint(0, dn - 1)
        f = None
        while f is None or f.num.degree - f.den.degree < 1:
            num = Poly.from_coeffs(
                [rng.randint(-4, 4) for _ in range(dn)] + [rng.randint(1, 4)])
            den = Poly.from_coeffs(
                [rng.randint(-4, 4) for _ in range(dd)] + [1])
            f = make_ratfun(num, den)
        s = QSeries.from_coeffs([Fraction(rng.randint(-5, 5))
                                 for _ in range(21)])
        target = eval_ratfun_at_series(f, s)
        solved = inner_series_solve(f, target)
        overlap = min(s.prec, solved.prec)
        assert solved.coeffs[: overlap + 1] == s.coeffs[: overlap + 1]


def test_power_support():
    assert power_support(L(-2, [1, 0, 0, 0, 1], 2)) == 2
    assert power_support(L(-1, [1, 0, 0, 1], 2)) == 1
    assert power_support(L(-6, [1, 0, 0, 1, 0, 0, 2], 0)) == 3
    with pytest.raises(ZeroSeriesError):
        power_support(L(3, [], 2))


def test_power_support_after_substitution():
    rng = random.Random(53)
    for _ in range(20):
        s = QSeries.from_coeffs([rng.randint(-4, 4) for _ in range(10)])
        r = rng.randint(1, 4)
        assert power_support(substitute_power(s, r)) % r == 0


def test_precision_honesty_mul_div():
    rng = random.Random(54)
    for _ in range(50):
        la = rng.randint(-3, 1)
        lb = rng.randint(-3, 1)
        a = L(la, [rng.randint(1, 5)]
              + [rng.randint(-5, 5) for _ in range(8)], la + 8)
        b = L(lb, [rng.randint(1, 5)]
              + [rng.randint(-5, 5) for _ in range(8)], lb + 8)
        for op in ("mul", "div", "add", "sub"):
            full = series_arith(a, b, op)
            trimmed = series_arith(a.truncate(a.prec - 1), b, op)
            assert trimmed.prec <= full.prec
            for k in range(min(full.lead, trimmed.lead), trimmed.prec + 1):
                assert full.coeff(k) == trimmed.coeff(k)


def test_eval_compose_compatibility():
    rng = random.Random(55)
    from moondec.ratfun import compose
    for _ in range(10):
        g = _normal_ratfun(rng, 2)
        h = _normal_ratfun(rng, 2)
        s = QSeries.from_coeffs([rng.randint(-3, 3) for _ in range(16)])
        direct = eval_ratfun_at_series(compose(g, h), s)
        inner = eval_ratfun_at_series(h, s)
        nested = eval_ratfun_at_series(g, inner)
        bound = min(direct.prec, nested.prec)
        for k in range(min(direct.lead, nested.lead), bound + 1):
            assert direct.coeff(k) == nested.coeff(k)


def _normal_ratfun(rng, deg):
    while True:
        num = Poly.from_coeffs([0] + [rng.randint(-4, 4)
                                      for _ in range(deg - 1)] + [1])
        den = Poly.from_coeffs([rng.randint(1, 4)] + [1])
        f = make_ratfun(num, den)
        if f.degree == deg and f.num.coeff(0) == 0:
            return f
