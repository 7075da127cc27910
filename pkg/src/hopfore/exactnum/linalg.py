"""Exact linear algebra on raw-valued numpy arrays.

Subspaces are passed around as matrices whose columns span them.  The
canonical form of a subspace is the reduced row echelon form of the transpose.
"""
from __future__ import annotations

import numpy as np

from .fields import Field
from .poly import UniPoly


class SingularMatrix(ArithmeticError):
    pass


class InconsistentSystem(ArithmeticError):
    pass


def rref(F: Field, A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    R = A.copy()
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(~F.iszero(R[r:, c]))
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.mul(R[r], F._wrap(F.inv(R[r, c])))
        col = R[:, c].copy()
        col[r] = F.zero_raw
        rows = np.flatnonzero(~F.iszero(col))
        if rows.size:
            R[rows] = F.sub(R[rows], F.mul(col[rows][:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: Field, A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: Field, A: np.ndarray) -> np.ndarray:
    """Columns form a basis of {v : A v = 0}."""
    m, n = A.shape
    if m == 0:
        return F.eye(n)
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    N = F.zeros((n, len(free)))
    for k, f in enumerate(free):
        N[f, k] = F.one_raw
        for r, p in enumerate(piv):
            N[p, k] = F.r_neg(F._raw(R[r, f]))
    return N


def left_nullspace(F: Field, A: np.ndarray) -> np.ndarray:
    """Rows form a basis of {w : w A = 0}."""
    return nullspace(F, A.T).T


def canonical_basis(F: Field, V: np.ndarray) -> np.ndarray:
    """Canonical spanning columns of span(V): RREF of V^T, transposed, zero rows dropped."""
    if V.shape[1] == 0:
        return V
    R, piv = rref(F, V.T.copy())
    return R[: len(piv)].T.copy()


def colspace(F: Field, A: np.ndarray) -> np.ndarray:
    return canonical_basis(F, A)


def independent_columns(F: Field, A: np.ndarray) -> list[int]:
    """Indices of a maximal independent subset of the columns, chosen greedily left to right."""
    if A.shape[1] == 0:
        return []
    return rref(F, A)[1]


def solve(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """One solution X of A X = B; raises InconsistentSystem if none exists."""
    m, n = A.shape
    vec = B.ndim == 1
    Bm = B[:, None] if vec else B
    aug = np.concatenate([A, Bm], axis=1)
    R, piv = rref(F, aug)
    if any(p >= n for p in piv):
        raise InconsistentSystem("system has no solution")
    X = F.zeros((n, Bm.shape[1]))
    for r, p in enumerate(piv):
        X[p] = R[r, n:]
    return X[:, 0] if vec else X


def inverse(F: Field, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    if A.shape != (n, n):
        raise SingularMatrix("not square")
    aug = np.concatenate([A, F.eye(n)], axis=1)
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise SingularMatrix("matrix is singular")
    return R[:, n:].copy()


def in_span(F: Field, V: np.ndarray, w: np.ndarray) -> bool:
    if V.shape[1] == 0:
        return F.all_zero(w)
    return rank(F, np.concatenate([V, w.reshape(-1, 1)], axis=1)) == rank(F, V)


def subspace_sum(F: Field, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    return canonical_basis(F, np.concatenate([U, V], axis=1))


def subspace_intersection(F: Field, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    if U.shape[1] == 0 or V.shape[1] == 0:
        return F.zeros((U.shape[0], 0))
    K = nullspace(F, np.concatenate([U, F.neg(V)], axis=1))
    return canonical_basis(F, F.matmul(U, K[: U.shape[1]]))


def is_subspace(F: Field, U: np.ndarray, V: np.ndarray) -> bool:
    if U.shape[1] == 0:
        return True
    return rank(F, np.concatenate([V, U], axis=1)) == rank(F, V)


def same_subspace(F: Field, U: np.ndarray, V: np.ndarray) -> bool:
    return F.array_equal(canonical_basis(F, U), canonical_basis(F, V))


def complement_columns(F: Field, S: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Columns of T, in order, that extend a basis of span(S) to span(S + T)."""
    picked = []
    cur = S
    r = rank(F, cur) if cur.shape[1] else 0
    for j in range(T.shape[1]):
        cand = np.concatenate([cur, T[:, j:j + 1]], axis=1)
        rc = rank(F, cand)
        if rc > r:
            picked.append(j)
            cur, r = cand, rc
    return T[:, picked]


def block_diag(F: Field, blocks) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    m = sum(b.shape[1] for b in blocks)
    out = F.zeros((n, m))
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def minimal_polynomial(F: Field, A: np.ndarray) -> UniPoly:
    """Minimal polynomial via Krylov iteration on flattened powers of A."""
    n = A.shape[0]
    if n == 0:
        return UniPoly.const(F, 1)
    # incremental elimination; each stored row carries its combination coefficients
    rows: list[np.ndarray] = []
    combos: list[np.ndarray] = []
    pivots: list[int] = []
    P = F.eye(n)
    for k in range(n + 1):
        v = P.reshape(-1).copy()
        c = F.zeros(n + 1)
        c[k] = F.one_raw
        for row, comb, p in zip(rows, combos, pivots):
            coef = v[p]
            if not F.r_is_zero(F._raw(coef)):
                w = F._wrap(coef)
                v = F.sub(v, F.mul(row, w))
                c = F.sub(c, F.mul(comb, w))
        nz = np.flatnonzero(~F.iszero(v))
        if nz.size == 0:
            coeffs = [F.scalar(x) for x in c[: k + 1]]
            return UniPoly(F, coeffs).monic()
        p = int(nz[0])
        inv = F._wrap(F.inv(v[p]))
        rows.append(F.mul(v, inv))
        combos.append(F.mul(c, inv))
        pivots.append(p)
        P = F.matmul(P, A)
    raise ArithmeticError("no dependency found")  # pragma: no cover


def vector_minimal_polynomial(F: Field, A: np.ndarray, v: np.ndarray) -> UniPoly:
    """Monic generator of {f : f(A) v = 0}."""
    n = A.shape[0]
    vecs = [v.reshape(-1)]
    for _ in range(n):
        vecs.append(F.matmul(A, vecs[-1].reshape(-1, 1)).reshape(-1))
    for k in range(n + 1):
        K = np.stack(vecs[: k + 1], axis=1)
        N = nullspace(F, K)
        if N.shape[1]:
            return UniPoly(F, [F.scalar(x) for x in N[:, 0]]).monic()
    raise ArithmeticError("no dependency found")  # pragma: no cover


def krylov_space(F: Field, A: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Smallest A-invariant subspace containing the columns of V (canonical basis)."""
    basis = canonical_basis(F, V)
    while True:
        grown = subspace_sum(F, basis, F.matmul(A, basis)) if basis.shape[1] else basis
        if grown.shape[1] == basis.shape[1]:
            return basis
        basis = grown
