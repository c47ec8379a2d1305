"""Complete decomposition of rational functions.

The function is first moved to normal form fbar = u o f o v.  For a
normal-form composition fbar = g o h with normal-form components, the
numerator and denominator of h divide those of fbar, so every candidate
inner component is a pair of monic divisors (A, B) read off the two
factorizations, pruned by the normal-form shape: deg A > deg B, A(0) = 0,
deg A a proper nontrivial divisor of deg fbar.  For each candidate the
outer component is pinned by an exact homogeneous linear system; successes
are de-normalized as (u^-1 o g, h o v^-1) and de-duplicated up to
unit-twist equivalence (g, h) ~ (g o w^-1, w o h).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from moondec import linalg
from moondec.errors import (
    DegreeMismatchError,
    DifferentTargetError,
    InvalidInputError,
    NotNormalFormError,
)
from moondec.factorization import Factorization, factor
from moondec.polynomials import ONE, Poly
from moondec.ratfun import (
    MoebiusUnit,
    RatFun,
    compose,
    is_normal_form,
    to_normal_form,
)


@dataclass(frozen=True)
class CandidateComponent:
    """Monic divisor pair (A, B) of the normalized numerator/denominator."""

    a_part: Poly
    b_part: Poly


@dataclass(frozen=True)
class Decomposition:
    outer: RatFun
    inner: RatFun

    def target(self) -> RatFun:
        return compose(self.outer, self.inner)


@dataclass(frozen=True)
class DecompositionChain:
    """Indecomposable components, outermost first."""

    components: tuple[RatFun, ...]

    def target(self) -> RatFun:
        result = self.components[-1]
        for part in reversed(self.components[:-1]):
            result = compose(part, result)
        return result

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(c.degree for c in self.components)


def _monic_divisors(fact: Factorization) -> list[Poly]:
    """All monic divisors, sorted by degree then coefficient sequence."""
    divisors = [ONE]
    for p, mult in fact.factors:
        powers = [ONE]
        for _ in range(mult):
            powers.append(powers[-1] * p)
        divisors = [d * pk for d in divisors for pk in powers]
    return sorted(divisors, key=lambda d: (d.degree, d.coeffs))


def candidate_components(fbar: RatFun) -> list[CandidateComponent]:
    """Divisor pairs satisfying the normal-form candidate constraints."""
    if not is_normal_form(fbar):
        raise NotNormalFormError("candidate enumeration needs normal form")
    deg = fbar.degree
    a_parts = [a for a in _monic_divisors(factor(fbar.num))
               if 1 < a.degree < deg and deg % a.degree == 0
               and a.coeff(0) == 0]
    b_parts = _monic_divisors(factor(fbar.den))
    out = []
    for a in a_parts:
        for b in b_parts:
            if b.degree < a.degree:
                out.append(CandidateComponent(a, b))
    return out


def left_component(f: RatFun, h: RatFun):
    """The unique g with f = g o h, or None.

    Writing g with unknown coefficient vectors of degree m = deg f / deg h
    and homogenizing through h, the identity f = g o h becomes the
    homogeneous linear system f_N * G_D - f_D * G_N = 0.  A nonzero
    solution exists iff g does, and then the solution space is one
    dimensional, so any null-space basis vector reduces to g.
    """
    if h.degree < 2:
        raise DegreeMismatchError("inner component must have degree >= 2")
    if f.degree % h.degree != 0:
        raise DegreeMismatchError(
            f"degree {h.degree} does not divide degree {f.degree}")
    m = f.degree // h.degree
    hn_pow = [ONE]
    hd_pow = [ONE]
    for _ in range(m):
        hn_pow.append(hn_pow[-1] * h.num)
        hd_pow.append(hd_pow[-1] * h.den)
    # columns: alpha_0..alpha_m then beta_0..beta_m
    cols = [-(f.den * (hn_pow[i] * hd_pow[m - i])) for i in range(m + 1)]
    cols += [f.num * (hn_pow[j] * hd_pow[m - j]) for j in range(m + 1)]
    top = max((c.degree for c in cols if not c.is_zero), default=0)
    rows = [[c.coeff(k) for c in cols] for k in range(top + 1)]
    basis = linalg.nullspace(rows, len(cols))
    if not basis:
        return None
    vec = basis[0]
    num = Poly.from_coeffs(vec[:m + 1])
    den = Poly.from_coeffs(vec[m + 1:])
    if den.is_zero:
        return None
    g = RatFun.make(num, den)
    if g.is_constant or compose(g, h) != f:
        return None
    return Decomposition(g, h)


def unit_linking(h1: RatFun, h2: RatFun):
    """The unique unit w with h2 = w o h1, or None.

    Writing w = (a*x + b)/(c*x + d), the condition is the homogeneous
    system a*h1N*h2D + b*h1D*h2D - c*h1N*h2N - d*h1D*h2N = 0; a nonzero
    solution is automatically non-degenerate for non-constant h1, h2.
    """
    if h1.degree != h2.degree:
        return None
    cols = [h1.num * h2.den, h1.den * h2.den,
            -(h1.num * h2.num), -(h1.den * h2.num)]
    top = max((c.degree for c in cols if not c.is_zero), default=0)
    rows = [[c.coeff(k) for c in cols] for k in range(top + 1)]
    basis = linalg.nullspace(rows, 4)
    if not basis:
        return None
    a, b, c, d = basis[0]
    if a * d - b * c == 0:
        return None
    w = MoebiusUnit.make(a, b, c, d)
    return w if w.apply_to(h1) == h2 else None


def equivalent(d1: Decomposition, d2: Decomposition) -> bool:
    """(g1, h1) ~ (g2, h2) iff a unit w gives h2 = w o h1."""
    if d1.target() != d2.target():
        raise DifferentTargetError(
            "decompositions do not target the same function")
    return unit_linking(d1.inner, d2.inner) is not None


def decompose_one_level(f: RatFun) -> tuple[Decomposition, ...]:
    """One representative per equivalence class of decompositions of f.

    Empty means f is indecomposable.  Deterministic: candidates are tried
    by ascending inner degree, then lexicographically; the first
    representative of each class is kept.
    """
    if f.degree < 2:
        raise InvalidInputError("decomposition needs degree >= 2")
    u, v, fbar = to_normal_form(f)
    u_inv = u.inverse()
    v_inv_fun = v.inverse().as_ratfun()
    found: list[Decomposition] = []
    for cand in candidate_components(fbar):
        h = RatFun.make(cand.a_part, cand.b_part)
        if h.degree != cand.a_part.degree:
            continue  # divisor pair collapsed under reduction
        dec = left_component(fbar, h)
        if dec is None:
            continue
        outer = u_inv.apply_to(dec.outer)
        inner = compose(dec.inner, v_inv_fun)
        candidate = Decomposition(outer, inner)
        assert compose(outer, inner) == f
        if not any(unit_linking(seen.inner, inner) is not None
                   for seen in found):
            found.append(candidate)
    return tuple(found)


def chains_equivalent(c1, c2) -> bool:
    """Componentwise unit-twist equivalence of two chains.

    Peeled greedily from the innermost end; the linking unit at each step
    is unique, so no backtracking is needed.
    """
    c1 = list(c1)
    c2 = list(c2)
    if len(c1) != len(c2):
        return False
    for i in range(len(c1) - 1, 0, -1):
        w = unit_linking(c1[i], c2[i])
        if w is None:
            return False
        c1[i - 1] = compose(c1[i - 1], w.inverse().as_ratfun())
    return c1[0] == c2[0]


@lru_cache(maxsize=None)
def _chains_cached(f: RatFun) -> tuple[DecompositionChain, ...]:
    if f.degree < 2:
        return (DecompositionChain((f,)),)
    splits = decompose_one_level(f)
    if not splits:
        return (DecompositionChain((f,)),)
    out: list[DecompositionChain] = []
    for dec in splits:
        for left in _chains_cached(dec.outer):
            for right in _chains_cached(dec.inner):
                chain = DecompositionChain(left.components + right.components)
                if not any(chains_equivalent(chain.components, c.components)
                           for c in out):
                    out.append(chain)
    return tuple(out)


def all_chains(f: RatFun) -> tuple[DecompositionChain, ...]:
    """All complete decomposition chains up to componentwise equivalence."""
    if f.degree < 1:
        raise InvalidInputError("chains need degree >= 1")
    return _chains_cached(f)
