"""Factorization over the rationals.

Pipeline: clear to integers, squarefree-decompose (Yun), monicize each
squarefree part, reduce modulo the smallest usable prime >= 3, split with
Berlekamp's algorithm, Hensel-lift to a power of p exceeding twice the
Mignotte coefficient bound, and recombine lifted factors by subset trial
division.  Everything is deterministic: prime choice, Berlekamp splitting
order, subset enumeration and the final factor ordering.

Degrees in this problem domain reach the seventies, which is far beyond
naive coefficient search but comfortable for Zassenhaus recombination (the
modular factor counts stay small).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, isqrt

from moondec import _kernels
from moondec.errors import ZeroPolyError
from moondec.polynomials import (
    Poly,
    clear_denominators,
    squarefree_decomposition,
)


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor^multiplicity), factors monic irreducible."""

    unit: Fraction
    factors: tuple[tuple[Poly, int], ...]

    def expand(self) -> Poly:
        out = Poly.constant(self.unit)
        for f, m in self.factors:
            out = out * f ** m
        return out


# -- arithmetic mod p on int coefficient lists -------------------------------

def _pm_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pm_mul(a, b, p):
    return _pm_trim(_kernels.poly_mul(a, b, p))


def _pm_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _pm_trim(out)


def _pm_monic(a, p):
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _pm_divrem(a, b, p):
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return [], list(a)
    inv = pow(b[-1], -1, p)
    rem = list(a)
    quot = [0] * (da - db + 1)
    for i in range(da, db - 1, -1):
        c = rem[i] * inv % p
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] = (rem[i - db + j] - c * b[j]) % p
    return _pm_trim(quot), _pm_trim(rem[:db])


def _pm_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pm_divrem(a, b, p)[1]
    return _pm_monic(a, p) if a else a


def _pm_deriv(a, p):
    return _pm_trim([i * c % p for i, c in enumerate(a)][1:])


def _pm_powmod(base, e, mod, p):
    result = [1]
    base = _pm_divrem(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pm_divrem(_pm_mul(result, base, p), mod, p)[1]
        base = _pm_divrem(_pm_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _gf_nullspace(matrix, p):
    """Null space basis of a square matrix over GF(p)."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    pivots = {}
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(v - f * w) % p for v, w in zip(m[i], m[r])]
        pivots[c] = r
        r += 1
    basis = []
    for c in range(n):
        if c in pivots:
            continue
        vec = [0] * n
        vec[c] = 1
        for pc, pr in pivots.items():
            vec[pc] = (-m[pr][c]) % p
        basis.append(vec)
    return basis


def _berlekamp(f, p):
    """All monic irreducible factors of a monic squarefree f mod p."""
    n = len(f) - 1
    if n == 1:
        return [list(f)]
    xp = _pm_powmod([0, 1], p, f, p)
    rows = []
    power = [1]
    for _ in range(n):
        rows.append([power[j] if j < len(power) else 0 for j in range(n)])
        power = _pm_divrem(_pm_mul(power, xp, p), f, p)[1]
    # v with v(x)^p = v(x) mod f  <=>  v * (Q - I) = 0; work on the transpose.
    mt = [[(rows[j][i] - (1 if i == j else 0)) % p for j in range(n)]
          for i in range(n)]
    basis = _gf_nullspace(mt, p)
    r = len(basis)
    factors = [list(f)]
    if r == 1:
        return factors
    for vec in basis:
        b = _pm_trim(list(vec))
        if len(b) <= 1:
            continue
        i = 0
        while i < len(factors):
            u = factors[i]
            if len(u) - 1 <= 1 or len(factors) == r:
                i += 1
                continue
            for c in range(p):
                shifted = list(b)
                shifted[0] = (shifted[0] - c) % p
                g = _pm_gcd(u, _pm_trim(shifted), p)
                if 0 < len(g) - 1 < len(u) - 1:
                    factors[i] = g
                    factors.append(_pm_divrem(u, g, p)[0])
                    break
            else:
                i += 1
        if len(factors) == r:
            break
    return sorted(factors, key=lambda g: (len(g), g))


# -- Hensel lifting -----------------------------------------------------------

def _pm_bezout(a, b, p):
    """s, t with s*a + t*b = 1 mod p for coprime a, b."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _pm_divrem(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _pm_sub(s0, _pm_mul(q, s1, p), p)
        t0, t1 = t1, _pm_sub(t0, _pm_mul(q, t1, p), p)
    inv = pow(r0[0], -1, p)
    return [c * inv % p for c in s0], [c * inv % p for c in t0]


def _mod_reduce(a, m):
    return _pm_trim([c % m for c in a])


def _hensel_pair(f, g, h, s, t, p, target):
    """Lift f = g*h from mod p to mod m >= target (h, g monic)."""
    m = p
    while m < target:
        m2 = m * m
        fm = _mod_reduce(f, m2)
        e = _pm_sub(fm, _kernels.poly_mul(g, h, m2), m2)
        q, r = _pm_divrem(_kernels.poly_mul(s, e, m2), h, m2)
        g = _pm_trim([(x + y + z) % m2 for x, y, z in _zip3(
            g, _kernels.poly_mul(t, e, m2), _kernels.poly_mul(q, g, m2))])
        h = _pm_trim([(x + y) % m2 for x, y in _zip2(h, r)])
        b = _pm_sub(_pm_trim([(x + y) % m2 for x, y in _zip2(
            _kernels.poly_mul(s, g, m2), _kernels.poly_mul(t, h, m2))]),
            [1], m2)
        c, d = _pm_divrem(_kernels.poly_mul(s, b, m2), h, m2)
        s = _pm_sub(s, d, m2)
        t = _pm_sub(t, _pm_trim([(x + y) % m2 for x, y in _zip2(
            _kernels.poly_mul(t, b, m2), _kernels.poly_mul(c, g, m2))]), m2)
        m = m2
    return g, h, m


def _zip2(a, b):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


def _zip3(a, b, c):
    n = max(len(a), len(b), len(c))
    for i in range(n):
        yield ((a[i] if i < len(a) else 0),
               (b[i] if i < len(b) else 0),
               (c[i] if i < len(c) else 0))


def _hensel_lift_all(f, mod_factors, p, target):
    """Lift a list of pairwise-coprime monic factors of monic f mod p."""
    if len(mod_factors) == 1:
        return [_mod_reduce(f, target)]
    half = len(mod_factors) // 2
    g = [1]
    for mf in mod_factors[:half]:
        g = _pm_mul(g, mf, p)
    h = [1]
    for mf in mod_factors[half:]:
        h = _pm_mul(h, mf, p)
    s, t = _pm_bezout(g, h, p)
    g, h, m = _hensel_pair(f, g, h, s, t, p, target)
    return (_hensel_lift_all(_mod_reduce(g, target), mod_factors[:half], p, target)
            + _hensel_lift_all(_mod_reduce(h, target), mod_factors[half:], p, target))


# -- recombination -------------------------------------------------------------

def _symmetric(a, m):
    half = m // 2
    return [c - m if c > half else c for c in a]


def _int_divrem_monic(a, b):
    """Division of integer polynomials, b monic."""
    da, db = len(a) - 1, len(b) - 1
    rem = list(a)
    quot = [0] * max(da - db + 1, 0)
    for i in range(da, db - 1, -1):
        c = rem[i]
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] -= c * b[j]
    return quot, _pm_trim(rem[:db])


def _recombine(f, lifted, p, target):
    """Zassenhaus subset search over the lifted modular factors of monic f."""
    result = []
    rest = list(range(len(lifted)))
    current = list(f)
    size = 1
    while 2 * size <= len(rest):
        retry = True
        while retry and 2 * size <= len(rest):
            retry = False
            for combo in combinations(rest, size):
                g = [1]
                for i in combo:
                    g = _kernels.poly_mul(g, lifted[i], target)
                g = _symmetric(g, target)
                if g[0] and current[0] % g[0]:
                    continue  # constant term cannot divide: skip early
                quot, rem = _int_divrem_monic(current, g)
                if rem:
                    continue
                result.append(g)
                current = quot
                rest = [i for i in rest if i not in combo]
                retry = True
                break
        size += 1
    if len(current) - 1 >= 1:
        result.append(current)
    return result


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _choose_prime(f_int):
    """Smallest prime >= 3 with a squarefree image of the monic input."""
    p = 3
    while True:
        if _is_prime(p):
            fp = _pm_trim([c % p for c in f_int])
            if len(fp) == len(f_int):
                d = _pm_deriv(fp, p)
                if d and len(_pm_gcd(fp, d, p)) == 1:
                    return p
        p += 2


def _factor_squarefree_monic(g: Poly) -> list[Poly]:
    """Irreducible monic factors of a monic squarefree polynomial."""
    if g.degree == 1:
        return [g]
    ints, _ = clear_denominators(g.coeffs)
    lead = ints[-1]
    n = len(ints) - 1
    # monicize: G(x) = lead^(n-1) * g(x/lead) has integer coefficients
    monic_int = [ints[i] * lead ** (n - 1 - i) for i in range(n)] + [1]
    p = _choose_prime(monic_int)
    mod_factors = _berlekamp(_pm_monic([c % p for c in monic_int], p), p)
    if len(mod_factors) == 1:
        return [g]
    norm2 = isqrt(sum(c * c for c in monic_int)) + 1
    bound = comb(n, n // 2) * norm2
    target = p
    while target <= 2 * bound:
        target *= p
    lifted = _hensel_lift_all(_mod_reduce(monic_int, target),
                              mod_factors, p, target)
    int_factors = _recombine(monic_int, lifted, p, target)
    out = []
    for h in int_factors:
        # undo monicization: substitute x -> lead*x, then rescale monic
        coeffs = [Fraction(h[i]) * lead ** i for i in range(len(h))]
        out.append(Poly.from_coeffs(coeffs).monic())
    return sorted(out, key=lambda f: (f.degree, f.coeffs))


def factor(a: Poly) -> Factorization:
    """Complete factorization into monic irreducibles over the rationals."""
    if a.is_zero:
        raise ZeroPolyError("cannot factor the zero polynomial")
    unit = a.lc
    if a.degree == 0:
        return Factorization(unit, ())
    counts: dict[Poly, int] = {}
    for part, mult in squarefree_decomposition(a):
        for irr in _factor_squarefree_monic(part):
            counts[irr] = counts.get(irr, 0) + mult
    factors = tuple(sorted(counts.items(),
                           key=lambda kv: (kv[0].degree, kv[0].coeffs)))
    result = Factorization(unit, factors)
    assert result.expand() == a, "factorization does not re-expand to input"
    return result
