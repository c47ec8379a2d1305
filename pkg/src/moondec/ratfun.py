"""Rational functions in one variable over the rationals.

Canonical form everywhere: numerator and denominator coprime, denominator
monic.  Equality of values is therefore equality of functions.

A function is in *normal form* when deg num > deg den and num(0) = 0 (hence
den(0) != 0); every function of degree >= 1 can be moved into normal form by
composing with degree-1 functions (Moebius units) on both sides, and that
normalization is the entry point of the decomposition algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from moondec.errors import (
    ConstantInnerError,
    ZeroDenominatorError,
)
from moondec.polynomials import ONE, ZERO, Poly, X, poly_gcd, poly_exact_div, poly_text


class _Infinity:
    """Value of a rational function at a pole; compares equal only to itself."""

    __slots__ = ()

    def __repr__(self):
        return "infinity"


INFINITY = _Infinity()


@dataclass(frozen=True)
class RatFun:
    num: Poly
    den: Poly

    @staticmethod
    def make(num: Poly, den: Poly) -> RatFun:
        """Reduce to canonical form (coprime, monic denominator)."""
        if den.is_zero:
            raise ZeroDenominatorError("zero denominator")
        if num.is_zero:
            return RatFun(ZERO, ONE)
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = poly_exact_div(num, g)
            den = poly_exact_div(den, g)
        scale = 1 / den.lc
        return RatFun(num.scale(scale), den.scale(scale))

    @staticmethod
    def from_poly(p: Poly) -> RatFun:
        return RatFun(p, ONE)

    @staticmethod
    def identity() -> RatFun:
        return RatFun(X, ONE)

    @staticmethod
    def constant(value) -> RatFun:
        return RatFun(Poly.constant(value), ONE)

    @property
    def degree(self) -> int:
        """max(deg num, deg den); constants (including zero) have degree 0."""
        if self.num.is_zero:
            return 0
        return max(self.num.degree, self.den.degree)

    @property
    def is_constant(self) -> bool:
        return self.degree == 0

    def __str__(self) -> str:
        return ratfun_text(self)

    def __repr__(self) -> str:
        return f"RatFun({ratfun_text(self)})"

    # field operations, used by the expression parser and by verification

    def __add__(self, other: RatFun) -> RatFun:
        return RatFun.make(self.num * other.den + other.num * self.den,
                           self.den * other.den)

    def __neg__(self) -> RatFun:
        return RatFun(-self.num, self.den)

    def __sub__(self, other: RatFun) -> RatFun:
        return self + (-other)

    def __mul__(self, other: RatFun) -> RatFun:
        return RatFun.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: RatFun) -> RatFun:
        if other.num.is_zero:
            raise ZeroDenominatorError("division by the zero function")
        return RatFun.make(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> RatFun:
        if n < 0:
            raise ValueError("negative power")
        return RatFun.make(self.num ** n, self.den ** n)


def make_ratfun(num: Poly, den: Poly) -> RatFun:
    return RatFun.make(num, den)


def degree(f: RatFun) -> int:
    return f.degree


def ratfun_text(f: RatFun) -> str:
    if f.den == ONE:
        return poly_text(f.num)
    return f"({poly_text(f.num)})/({poly_text(f.den)})"


def compose(g: RatFun, h: RatFun) -> RatFun:
    """g(h(x)), reduced.  Degrees multiply: deg(g o h) = deg g * deg h."""
    if h.is_constant:
        raise ConstantInnerError("inner function of a composition is constant")
    dg = max(len(g.num.coeffs), len(g.den.coeffs)) - 1
    hn_pow = [ONE]
    hd_pow = [ONE]
    for _ in range(dg):
        hn_pow.append(hn_pow[-1] * h.num)
        hd_pow.append(hd_pow[-1] * h.den)
    num = ZERO
    for i, c in enumerate(g.num.coeffs):
        if c:
            num = num + (hn_pow[i] * hd_pow[dg - i]).scale(c)
    den = ZERO
    for j, c in enumerate(g.den.coeffs):
        if c:
            den = den + (hn_pow[j] * hd_pow[dg - j]).scale(c)
    result = RatFun.make(num, den)
    assert g.is_constant or result.degree == g.degree * h.degree
    return result


def evaluate(f: RatFun, point):
    """f(point); the INFINITY marker at poles."""
    nv = f.num.evaluate(point)
    dv = f.den.evaluate(point)
    if dv == 0:
        assert nv != 0, "indeterminate value on reduced function"
        return INFINITY
    return nv / dv


def evaluate_at_infinity(f: RatFun):
    """Limit at infinity: ratio of leading coefficients when degrees match."""
    dn, dd = f.num.degree, f.den.degree
    if dn > dd:
        return INFINITY
    if dn < dd:
        return Fraction(0)
    return f.num.lc / f.den.lc


def is_normal_form(f: RatFun) -> bool:
    """True iff deg num > deg den and num(0) = 0 (so den(0) != 0)."""
    return (not f.num.is_zero
            and f.num.degree > f.den.degree
            and f.num.coeff(0) == 0)


@dataclass(frozen=True)
class MoebiusUnit:
    """Invertible degree-1 function (a*x + b)/(c*x + d), ad - bc != 0.

    Canonical scaling: the first nonzero of (a, b, c, d) equals 1.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @staticmethod
    def make(a, b, c, d) -> MoebiusUnit:
        a, b, c, d = (Fraction(v) for v in (a, b, c, d))
        if a * d - b * c == 0:
            raise ZeroDenominatorError("degenerate unit: ad - bc = 0")
        for pivot in (a, b, c, d):
            if pivot:
                return MoebiusUnit(a / pivot, b / pivot, c / pivot, d / pivot)
        raise AssertionError("unreachable")

    @staticmethod
    def identity() -> MoebiusUnit:
        return MoebiusUnit.make(1, 0, 0, 1)

    def as_ratfun(self) -> RatFun:
        return RatFun.make(Poly.from_coeffs([self.b, self.a]),
                           Poly.from_coeffs([self.d, self.c]))

    def inverse(self) -> MoebiusUnit:
        return MoebiusUnit.make(self.d, -self.b, -self.c, self.a)

    def compose_unit(self, other: MoebiusUnit) -> MoebiusUnit:
        """self o other, by 2x2 matrix multiplication."""
        return MoebiusUnit.make(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply_to(self, f: RatFun) -> RatFun:
        """self o f for a rational function f."""
        return RatFun.make(f.num.scale(self.a) + f.den.scale(self.b),
                           f.num.scale(self.c) + f.den.scale(self.d))

    def apply_to_value(self, value):
        if value is INFINITY:
            if self.c == 0:
                return INFINITY
            return self.a / self.c
        dv = self.c * value + self.d
        if dv == 0:
            return INFINITY
        return (self.a * value + self.b) / dv

    def __str__(self) -> str:
        return ratfun_text(self.as_ratfun())


def unit_inverse(u: MoebiusUnit) -> MoebiusUnit:
    return u.inverse()


def unit_from_ratfun(f: RatFun) -> MoebiusUnit:
    """Convert a degree-1 function to a unit; units are exactly degree 1."""
    if f.degree != 1:
        raise ValueError(f"not a unit: degree {f.degree}")
    return MoebiusUnit.make(f.num.coeff(1), f.num.coeff(0),
                            f.den.coeff(1), f.den.coeff(0))


def to_normal_form(f: RatFun) -> tuple[MoebiusUnit, MoebiusUnit, RatFun]:
    """Units u, v with u o f o v in normal form.

    Construction: scan a = 0, 1, 2, ... for the first finite value f(a),
    then the first a' > a with f(a') finite and different.  v sends
    infinity to a and 0 to a'; u sends f(a) to infinity and f(a') to 0.
    The scan terminates because f has at most deg f poles and takes each
    value at most deg f times.
    """
    if f.degree < 1:
        raise ConstantInnerError("constants have no normal form")
    if is_normal_form(f):
        ident = MoebiusUnit.identity()
        return ident, ident, f
    a = 0
    while evaluate(f, a) is INFINITY:
        a += 1
    fa = evaluate(f, a)
    a2 = a + 1
    while True:
        fa2 = evaluate(f, a2)
        if fa2 is not INFINITY and fa2 != fa:
            break
        a2 += 1
    v = MoebiusUnit.make(a, a2, 1, 1)
    w = 1 / (fa2 - fa)
    u = MoebiusUnit.make(-w, 1 + w * fa, 1, -fa)
    fbar = u.apply_to(compose(f, v.as_ratfun()))
    assert fbar.num.degree > fbar.den.degree, \
        "normalization must leave a full-multiplicity pole at infinity"
    assert is_normal_form(fbar)
    return u, v, fbar
