"""Gaussian binomial coefficients evaluated at a field element."""
from __future__ import annotations

from .fields import Scalar


def q_binomial(n: int, k: int, q: Scalar) -> Scalar:
    """binom(n, k)_q via the Pascal rule binom(n,k) = binom(n-1,k-1) + q^k binom(n-1,k)."""
    F = q.field
    if k < 0 or k > n:
        return F.zero
    row = [F.one]
    for m in range(1, n + 1):
        new = [F.one] * (m + 1)
        for j in range(1, m):
            new[j] = row[j - 1] + q ** j * row[j]
        row = new
    return row[k]


def q_binomial_row(n: int, q: Scalar) -> list[Scalar]:
    F = q.field
    row = [F.one]
    for m in range(1, n + 1):
        new = [F.one] * (m + 1)
        for j in range(1, m):
            new[j] = row[j - 1] + q ** j * row[j]
        row = new
    return row
