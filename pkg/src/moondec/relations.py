"""Search for relations s1(q^r) = f(s2(q)) between truncated q-series.

The candidate f is a monic ansatz

    f = (t^e + a_{e-1} t^{e-1} + ... + a_0) / (t^{e-r} + ... + b_0)

whose unknowns are pinned by requiring the numerator of
s1(q^r) - f(s2(q)) to vanish coefficient by coefficient.  Every certified
coefficient of that expression yields one linear equation; the system must
be overdetermined (at least two more equations than unknowns) so that a
solution on truncated data actually means something.  The r-loop returns
the first success (lowest r).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from moondec import linalg
from moondec.errors import (
    InsufficientPrecisionError,
    InvalidInputError,
    NonPositiveAreaError,
    UnderdeterminedSystemError,
)
from moondec.polynomials import Poly, poly_gcd
from moondec.ratfun import RatFun
from moondec.series import (
    GeneralLaurent,
    QSeries,
    eval_ratfun_at_series,
    substitute_power,
)


@dataclass(frozen=True)
class RelationAnsatz:
    """Shape of the monic candidate: e numerator and e-r denominator unknowns."""

    e: int
    r: int

    @property
    def num_unknowns(self) -> int:
        return self.e

    @property
    def den_unknowns(self) -> int:
        return self.e - self.r

    @property
    def unknowns(self) -> int:
        return 2 * self.e - self.r


@dataclass(frozen=True)
class LinearSystem:
    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]


@dataclass(frozen=True)
class Relation:
    r: int
    f: RatFun
    e: int
    verified_to: int


def solve_linear(system: LinearSystem):
    """Exact Gaussian elimination; unique solution, None, or an error.

    None means inconsistent; a consistent but rank-deficient system raises
    UnderdeterminedSystemError (it signals insufficient series precision,
    not a usable relation).
    """
    nvars = len(system.matrix[0]) if system.matrix else 0
    aug = [list(row) + [rhs] for row, rhs in zip(system.matrix, system.rhs)]
    return linalg.solve_unique(aug, nvars)


def degree_from_areas(a1: Fraction, a2: Fraction):
    """Candidate degree e = a2/a1 when that is a positive integer."""
    if a1 <= 0 or a2 <= 0:
        raise NonPositiveAreaError("fundamental-region areas must be positive")
    e = Fraction(a2) / Fraction(a1)
    if e.denominator == 1 and e >= 1:
        return int(e)
    return None


def _series_powers(s: QSeries, top: int) -> list[GeneralLaurent]:
    powers = [GeneralLaurent.exact_scalar(1)]
    t = s.to_laurent()
    for _ in range(top):
        powers.append(powers[-1] * t)
    return powers


def _build_system(s1: QSeries, s2: QSeries, e: int, r: int,
                  powers: list[GeneralLaurent]) -> LinearSystem:
    """Equations for one r: columns a_0..a_{e-1}, b_0..b_{e-r-1}."""
    sub = substitute_power(s1, r)
    sp = [sub * powers[j] for j in range(e - r + 1)]
    const = sp[e - r] - powers[e]
    bound = const.prec
    for i in range(1, e):
        bound = min(bound, powers[i].prec)
    for j in range(e - r):
        bound = min(bound, sp[j].prec)
    unknowns = 2 * e - r
    count = bound + e + 1
    if count < unknowns + 2:
        raise InsufficientPrecisionError(
            f"only {count} certified equations for {unknowns} unknowns at r={r}")
    rows = []
    rhs = []
    for k in range(-e, bound + 1):
        row = [powers[i].coeff(k) for i in range(e)]
        row.extend(-sp[j].coeff(k) for j in range(e - r))
        rows.append(tuple(row))
        rhs.append(const.coeff(k))
    return LinearSystem(tuple(rows), tuple(rhs))


def _assemble(e: int, r: int, sol: list[Fraction]):
    num = Poly.from_coeffs(list(sol[:e]) + [Fraction(1)])
    den = Poly.from_coeffs(list(sol[e:]) + [Fraction(1)])
    if poly_gcd(num, den).degree > 0:
        return None  # reducible ansatz: the true relation has lower degree
    return RatFun(num, den)


def _diff_series(s1: QSeries, s2: QSeries, r: int, f: RatFun) -> GeneralLaurent:
    return substitute_power(s1, r) - eval_ratfun_at_series(f, s2)


def verify_relation(s1: QSeries, s2: QSeries, rel: Relation) -> int:
    """Highest certified exponent through which s1(q^r) - f(s2(q)) vanishes.

    A nonzero certified coefficient at q^k yields k - 1; full vanishing
    yields the certified bound of the recomputation.
    """
    diff = _diff_series(s1, s2, rel.r, rel.f)
    if diff.is_zero:
        return diff.prec
    return diff.lead - 1


def _try_r(s1: QSeries, s2: QSeries, e: int, r: int,
           powers: list[GeneralLaurent]):
    system = _build_system(s1, s2, e, r, powers)
    sol = solve_linear(system)
    if sol is None:
        return None
    f = _assemble(e, r, sol)
    if f is None:
        return None
    diff = _diff_series(s1, s2, r, f)
    if not diff.is_zero:
        return None  # fails post-hoc verification on some certified coefficient
    return Relation(r=r, f=f, e=e, verified_to=diff.prec)


def find_relation(s1: QSeries, s2: QSeries, e: int):
    """First (lowest-r) verified relation s1(q^r) = f(s2(q)), or None."""
    if e < 1:
        raise InvalidInputError("degree must be a positive integer")
    need = 2 * e + 1
    if s1.prec < need or s2.prec < need:
        raise InsufficientPrecisionError(
            f"series must be certified through q^{need} "
            f"(have {s1.prec} and {s2.prec})")
    powers = _series_powers(s2, e)
    for r in range(1, e + 1):
        rel = _try_r(s1, s2, e, r, powers)
        if rel is not None:
            return rel
    return None


def find_all_relations(s1: QSeries, s2: QSeries, e: int,
                       skip_underdetermined: bool = False) -> list[Relation]:
    """Every r in 1..e admitting a verified relation (exhaustive mode).

    An underdetermined system at some r propagates as an error by default;
    with skip_underdetermined the scan records nothing for that r and
    keeps going, so that relations at other powers (the multi-relation
    case feeding modular polynomials) are still reported.
    """
    if e < 1:
        raise InvalidInputError("degree must be a positive integer")
    need = 2 * e + 1
    if s1.prec < need or s2.prec < need:
        raise InsufficientPrecisionError(
            f"series must be certified through q^{need} "
            f"(have {s1.prec} and {s2.prec})")
    powers = _series_powers(s2, e)
    out = []
    for r in range(1, e + 1):
        try:
            rel = _try_r(s1, s2, e, r, powers)
        except UnderdeterminedSystemError:
            if not skip_underdetermined:
                raise
            continue
        if rel is not None:
            out.append(rel)
    return out
