"""Independent reference computations for expected values.

Plain integers and sympy only, nothing from the package, so tests compare two
separately written computations.
"""
from __future__ import annotations

import sympy


def units_of_order_dividing(n: int, p: int) -> list[int]:
    return sorted(x for x in range(1, p) if pow(x, n, p) == 1)


def mult_order(x: int, p: int) -> int:
    k, y = 1, x % p
    while y != 1:
        y = y * x % p
        k += 1
    return k


def gaussian_poly(n: int, k: int):
    """Gaussian binomial as a polynomial in t, by exact rational cancellation."""
    t = sympy.Symbol("t")
    num = sympy.prod([1 - t ** (n - i) for i in range(k)])
    den = sympy.prod([1 - t ** (i + 1) for i in range(k)])
    return sympy.Poly(sympy.cancel(num / den), t)


def gaussian_mod_p(n: int, k: int, q: int, p: int) -> int:
    return int(gaussian_poly(n, k).eval(q)) % p


def gaussian_at_root(n: int, k: int, N: int, j: int) -> bool:
    """Is [n choose k]_q zero at q = exp(2 pi i j / N)?  Exact: reduce mod the N-th cyclotomic polynomial."""
    t = sympy.Symbol("t")
    g = gaussian_poly(n, k).as_expr().subs(t, t ** j)
    r = sympy.rem(sympy.Poly(g, t), sympy.Poly(sympy.cyclotomic_poly(N, t), t))
    return r.is_zero


def irreducible_count(q: int, d: int) -> int:
    """Monic irreducibles of degree d over F_q (necklace formula)."""
    total = sum(sympy.mobius(d // e) * q ** e for e in sympy.divisors(d))
    return total // d
