"""Polynomial factorization.

Finite fields: square-free split, distinct-degree split, then Cantor-Zassenhaus
equal-degree splitting driven by a seeded RNG.  Cyclotomic fields go through
sympy's factorization over the algebraic field QQ<zeta_N>; if that is not
available the fallback is square-free splitting plus peeling of linear factors
whose roots are a root of unity times a rational, and anything left of degree
>= 2 raises IncompleteFactorization.
"""
from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import divisors

from .fields import Field, Scalar
from .poly import UniPoly, poly_gcd


class IncompleteFactorization(ArithmeticError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass
class Factorization:
    unit: Scalar
    factors: list[tuple[UniPoly, int]] = field(default_factory=list)

    def expand(self) -> UniPoly:
        out = UniPoly.const(self.unit.field, self.unit)
        for g, m in self.factors:
            out = out * g ** m
        return out

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def factor(f: UniPoly, seed: int = 0) -> Factorization:
    """Factor f into monic irreducibles.  Output order is canonical (by degree, then coefficients)."""
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    F = f.field
    unit = f.leading
    g = f.monic()
    if g.degree == 0:
        return Factorization(unit, [])
    if F.is_finite:
        facs = _factor_finite(g, random.Random(seed))
    else:
        facs = _factor_char0(g)
    merged: dict[UniPoly, int] = {}
    for h, m in facs:
        merged[h] = merged.get(h, 0) + m
    out = sorted(merged.items(), key=lambda t: t[0].sort_key())
    return Factorization(unit, out)


def is_irreducible(f: UniPoly) -> bool:
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    fac = factor(f)
    return len(fac.factors) == 1 and fac.factors[0][1] == 1


def irreducible_polys(F: Field, degree: int, exclude_y: bool = True):
    """All monic irreducible polynomials of a given degree over a finite field, in canonical order."""
    if not F.is_finite:
        raise ValueError("enumeration needs a finite field")
    q = F.order
    elements = [s.raw for s in F.elements()]
    out = []
    for code in range(q ** degree):
        cs = []
        c = code
        for _ in range(degree):
            c, d = divmod(c, q)
            cs.append(elements[d])
        f = UniPoly._raw(F, cs + [F.one_raw])
        if exclude_y and f.degree == 1 and F.r_is_zero(f.coeffs[0]):
            continue
        if degree == 1 or _is_irreducible_finite(f):
            out.append(f)
    return sorted(out, key=UniPoly.sort_key)


# ---------------------------------------------------------------------------
# finite fields


def _pth_root(f: UniPoly) -> UniPoly:
    F = f.field
    p = F.characteristic
    e = F.order // p  # c^(1/p) = c^(q/p)
    cs = [F.r_pow(f.coeffs[i], e) for i in range(0, len(f.coeffs), p)]
    return UniPoly._raw(F, cs)


def _squarefree_finite(f: UniPoly) -> list[tuple[UniPoly, int]]:
    F = f.field
    one = UniPoly.const(F, 1)
    out = []
    c = poly_gcd(f, f.derivative())
    w = f // c
    i = 1
    while w != one:
        y = poly_gcd(w, c)
        fac = (w // y).monic()
        if fac != one:
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    c = c.monic()
    if c != one:
        p = F.characteristic
        for g, m in _squarefree_finite(_pth_root(c).monic()):
            out.append((g, m * p))
    return out


def _ddf(f: UniPoly) -> list[tuple[UniPoly, int]]:
    F = f.field
    q = F.order
    y = UniPoly.gen(F)
    one = UniPoly.const(F, 1)
    out = []
    rest = f
    h = y % rest
    i = 1
    while rest.degree >= 2 * i:
        h = h.powmod(q, rest)
        g = poly_gcd(rest, h - y)
        if g != one:
            out.append((g, i))
            rest = rest // g
            h = h % rest
        i += 1
    if rest.degree > 0:
        out.append((rest.monic(), rest.degree))
    return out


def _edf(g: UniPoly, d: int, rng: random.Random) -> list[UniPoly]:
    F = g.field
    q = F.order
    n = g.degree
    if n == d:
        return [g]
    factors = [g]
    elements = [s.raw for s in F.elements()]
    while len(factors) < n // d:
        a = UniPoly._raw(F, [elements[rng.randrange(q)] for _ in range(n)])
        if a.degree < 1:
            continue
        if q % 2:
            b = a.powmod((q ** d - 1) // 2, g) - 1
        else:
            m = F.order.bit_length() - 1
            b = UniPoly.const(F, 0)
            t = a % g
            for _ in range(m * d):
                b = b + t
                t = (t * t) % g
        new = []
        for u in factors:
            if u.degree > d:
                h = poly_gcd(b % u, u)
                if 0 < h.degree < u.degree:
                    new.extend([h, (u // h).monic()])
                    continue
            new.append(u)
        factors = new
    return factors


def _factor_finite(f: UniPoly, rng: random.Random) -> list[tuple[UniPoly, int]]:
    out = []
    for sq, m in _squarefree_finite(f):
        for g, d in _ddf(sq):
            for h in _edf(g, d, rng):
                out.append((h.monic(), m))
    return out


def _is_irreducible_finite(f: UniPoly) -> bool:
    if poly_gcd(f, f.derivative()).degree > 0:
        return False
    parts = _ddf(f.monic())
    return len(parts) == 1 and parts[0][1] == f.degree


# ---------------------------------------------------------------------------
# characteristic zero (cyclotomic fields)


def _squarefree_char0(f: UniPoly) -> list[tuple[UniPoly, int]]:
    one = UniPoly.const(f.field, 1)
    out = []
    a0 = poly_gcd(f, f.derivative())
    b = f // a0
    c = f.derivative() // a0
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a != one:
            out.append((a.monic(), i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def _rational_coeffs(f: UniPoly):
    vals = []
    for c in f.coeffs:
        if any(c[1:]):
            return None
        vals.append(c[0])
    return vals


def _rational_candidates(f: UniPoly) -> list[Fraction]:
    vals = _rational_coeffs(f)
    if vals is None:
        return [Fraction(1)]
    lcm = 1
    for v in vals:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in vals]
    lo = next(v for v in ints if v != 0)
    hi = ints[-1]
    if abs(lo) > 10 ** 12 or abs(hi) > 10 ** 12:
        return [Fraction(1)]
    return sorted({Fraction(n, d) for n in divisors(abs(lo)) for d in divisors(abs(hi))})


@functools.lru_cache(maxsize=None)
def _sympy_domain(N: int):
    import sympy
    from sympy import QQ

    if N <= 2:
        return QQ
    return QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / N))


def _factor_char0(f: UniPoly) -> list[tuple[UniPoly, int]]:
    try:
        out = _factor_char0_sympy(f)
    except IncompleteFactorization:
        raise
    except Exception:  # pragma: no cover - sympy failure, fall back
        return _factor_char0_peel(f)
    check = UniPoly.const(f.field, 1)
    for g, m in out:
        check = check * g ** m
    if check != f:  # pragma: no cover
        return _factor_char0_peel(f)
    return out


def _factor_char0_sympy(f: UniPoly) -> list[tuple[UniPoly, int]]:
    from sympy import Poly, QQ, Symbol

    F = f.field
    K = _sympy_domain(F.N)
    y = Symbol("y")
    if F.phi == 1:
        coeffs = [QQ(c[0].numerator, c[0].denominator) for c in reversed(f.coeffs)]
    else:
        coeffs = [K.new([QQ(x.numerator, x.denominator) for x in reversed(c)]) for c in reversed(f.coeffs)]
    P = Poly.from_list(coeffs, y, domain=K)
    _, facs = P.factor_list()
    out = []
    for g, m in facs:
        raws = []
        for c in reversed(g.all_coeffs()):
            c = K.convert(c)
            if F.phi == 1:
                vals = [c]
            else:
                vals = list(reversed(c.to_list()))
            v = [Fraction(int(x.numerator), int(x.denominator)) for x in vals]
            v += [Fraction(0)] * (F.phi - len(v))
            raws.append(tuple(v))
        out.append((UniPoly._raw(F, raws).monic(), int(m)))
    return out


def _factor_char0_peel(f: UniPoly) -> list[tuple[UniPoly, int]]:
    F = f.field
    y = UniPoly.gen(F)
    out = []
    for g, m in _squarefree_char0(f):
        rest = g
        while rest.degree > 0 and rest.coeffs[0] == F.zero_raw:
            out.append((y, m))
            rest = rest // y
        if rest.degree > 1:
            units = F.roots_of_unity(F.M)
            for r in _rational_candidates(rest):
                for u in units:
                    root = u * r
                    while rest.degree > 0 and rest(root).is_zero():
                        out.append((y - root, m))
                        rest = rest // (y - root)
        if rest.degree == 1:
            out.append((rest.monic(), m))
        elif rest.degree > 1:
            raise IncompleteFactorization(
                f"cannot split {rest} over {F} by linear peeling", partial=out + [(rest.monic(), m)]
            )
    return out
