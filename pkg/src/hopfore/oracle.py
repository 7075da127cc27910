"""Brute-force cross-checks for weight modules over finite fields.

Nothing here uses the structural decomposition code.  Submodules are found by
enumerating weight-homogeneous vectors and closing them under x (the group acts
by scalars on such vectors); maximal submodules come from the same enumeration
run on the transposed action, via annihilators.  The splitter works in the
endomorphism algebra.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .exactnum import PrimeField, UniPoly, factor, minimal_polynomial
from .exactnum.linalg import (
    canonical_basis,
    inverse,
    is_subspace,
    nullspace,
    rank,
    solve,
    subspace_intersection,
    subspace_sum,
)
from .grouprep import CharacterCoset
from .weightmod import Block, Simple1, WeightModule

DEFAULT_BUDGET = 500_000


class OracleBudgetExceeded(RuntimeError):
    pass


class OracleError(RuntimeError):
    pass


def _require_finite(F):
    if not F.is_finite:
        raise OracleError(f"the oracle needs a finite field, got {F}")


def _groups(weights) -> dict:
    out: dict = {}
    for i, w in enumerate(weights):
        out.setdefault(w, []).append(i)
    return dict(sorted(out.items(), key=lambda kv: kv[0].sort_key()))


def vector_count(M: WeightModule, full: bool = False) -> int:
    """Number of vectors the enumeration would visit."""
    q = M.field.order
    if full:
        return q ** M.dim
    return sum(q ** len(idx) for idx in _groups(M.weights).values())


# ---------------------------------------------------------------------------
# enumeration


def _projective_points(F, k: int) -> np.ndarray:
    """Nonzero vectors of F^k with first nonzero coordinate 1, as raw rows."""
    elems = [e.raw for e in F.elements()]
    rows = []
    for lead in range(k):
        tails = itertools.product(elems, repeat=k - lead - 1)
        for t in tails:
            rows.append([F.zero_raw] * lead + [F.one_raw] + list(t))
    out = F.zeros((len(rows), k))
    for i, r in enumerate(rows):
        out[i] = r
    return out


def _batch_rref(A: np.ndarray, p: int) -> np.ndarray:
    """Row-reduced echelon form of every matrix in a (B, m, n) stack over F_p."""
    A = A % p
    B, m, n = A.shape
    inv = np.zeros(p, dtype=np.int64)
    for v in range(1, p):
        inv[v] = pow(v, p - 2, p)
    prow = np.zeros(B, dtype=np.int64)
    ar = np.arange(B)
    rows = np.arange(m)
    for c in range(n):
        col = A[:, :, c]
        cand = (col != 0) & (rows[None, :] >= prow[:, None])
        has = cand.any(axis=1) & (prow < m)
        if not has.any():
            continue
        b = ar[has]
        piv = np.argmax(cand[has], axis=1)
        pr = prow[has]
        # swap pivot row into place
        tmp = A[b, piv].copy()
        A[b, piv] = A[b, pr]
        A[b, pr] = tmp
        scale = inv[A[b, pr, c]]
        A[b, pr] = (A[b, pr] * scale[:, None]) % p
        factors = A[b, :, c].copy()
        factors[np.arange(len(b)), pr] = 0
        A[b] = (A[b] - factors[:, :, None] * A[b, pr][:, None, :]) % p
        prow[has] += 1
    return A


def _krylov_classes(X: np.ndarray, groups: list[list[int]], start: int, d: int) -> list:
    """Weight class of x^i v for i < d, v in class `start` (None once x^i v is forced to vanish).

    x sends one weight space into exactly one other, so the Krylov vectors of a
    weight vector are graded and each slice can be reduced on its own.
    """
    cls_of = {}
    for c, idx in enumerate(groups):
        for i in idx:
            cls_of[i] = c
    nxt = {}
    for i, j in np.argwhere(X != 0):
        nxt[cls_of[int(j)]] = cls_of[int(i)]
    out, c = [], start
    for _ in range(d):
        out.append(c)
        c = nxt.get(c) if c is not None else None
    return out


def _cyclic_prime(F: PrimeField, X: np.ndarray, groups: list[list[int]], start: int, d: int) -> list[np.ndarray]:
    """Distinct cyclic submodules generated by vectors of weight class `start` (prime field, batched)."""
    p = F.p
    idx = groups[start]
    P = _projective_points(F, len(idx))
    steps = _krylov_classes(X, groups, start, d)
    slices = []
    for c in sorted({c for c in steps if c is not None}):
        slices.append((np.array([i for i, sc in enumerate(steps) if sc == c]), np.array(groups[c])))
    key_dtype = np.uint8 if p < 256 else np.int64
    out = {}
    Xt = X.T.astype(np.int64)
    chunk = max(1, 400_000 // max(1, d * d))
    for begin in range(0, len(P), chunk):
        part = P[begin:begin + chunk]
        V = np.zeros((len(part), d), dtype=np.int64)
        V[:, idx] = part
        K = np.zeros((len(part), d, d), dtype=np.int64)
        K[:, 0] = V
        for i in range(1, d):
            if steps[i] is None:
                break
            V = (V @ Xt) % p
            K[:, i] = V
        reduced = [_batch_rref(K[:, rows][:, :, cols], p) for rows, cols in slices]
        flat = np.concatenate([R.reshape(len(part), -1) for R in reduced], axis=1).astype(key_dtype)
        flat = np.ascontiguousarray(flat)
        keys = flat.view(np.dtype((np.void, flat.shape[1] * flat.itemsize))).ravel()
        _, first = np.unique(keys, return_index=True)
        for b in first:
            key = keys[b].tobytes()
            if key in out:
                continue
            vecs = []
            for (rows, cols), R in zip(slices, reduced):
                Rm = R[b]
                for r in Rm[np.any(Rm != 0, axis=1)]:
                    v = F.zeros((d,))
                    v[cols] = r
                    vecs.append(v)
            out[key] = canonical_basis(F, np.stack(vecs, axis=1))
    return list(out.values())


def _cyclic_generic(F, X: np.ndarray, idx: list[int], d: int) -> list[np.ndarray]:
    P = _projective_points(F, len(idx))
    out = {}
    for row in P:
        v = F.zeros((d, 1))
        v[idx, 0] = row
        cols = [v]
        for _ in range(d - 1):
            cols.append(F.matmul(X, cols[-1]))
        B = canonical_basis(F, np.concatenate(cols, axis=1))
        out.setdefault(B.tobytes() + repr(B.shape).encode(), B)
    return list(out.values())


def _cyclic_all(F, X: np.ndarray, weights, full: bool, group_mats) -> list[np.ndarray]:
    d = X.shape[0]
    if full:
        return _cyclic_full(F, X, d, group_mats)
    found: dict = {}
    groups = list(_groups(weights).values())
    for c, idx in enumerate(groups):
        subs = _cyclic_prime(F, X, groups, c, d) if isinstance(F, PrimeField) else _cyclic_generic(F, X, idx, d)
        for B in subs:
            found.setdefault(B.tobytes() + repr(B.shape).encode(), B)
    return sorted(found.values(), key=lambda B: (B.shape[1], B.T.tolist()))


def _cyclic_full(F, X: np.ndarray, d: int, group_mats) -> list[np.ndarray]:
    """Every nonzero vector, closed under x and the group generators."""
    gens = [X] + list(group_mats)
    found: dict = {}
    for row in _projective_points(F, d):
        S = canonical_basis(F, row.reshape(d, 1))
        while True:
            imgs = [S] + [F.matmul(G, S) for G in gens]
            T = canonical_basis(F, np.concatenate(imgs, axis=1))
            if T.shape[1] == S.shape[1]:
                break
            S = T
        found.setdefault(S.tobytes() + repr(S.shape).encode(), S)
    return sorted(found.values(), key=lambda B: (B.shape[1], B.T.tolist()))


def _contains(F, C: np.ndarray, S: np.ndarray) -> bool:
    return rank(F, np.concatenate([C, S], axis=1)) == C.shape[1]


def _minimal(F, subs: list[np.ndarray]) -> list[int]:
    """Indices of members containing no smaller member (subs sorted by dimension)."""
    mins: list[int] = []
    for i, C in enumerate(subs):
        if not any(subs[j].shape[1] < C.shape[1] and _contains(F, C, subs[j]) for j in mins):
            mins.append(i)
    return mins


@dataclass
class SubmoduleLattice:
    dim: int
    members: list[np.ndarray]  # canonical column bases, sorted by dimension
    minimal: list[int]
    maximal: list[int]
    inclusion: list[tuple[int, int]] | None = None
    cyclic_count: int = 0
    notes: list[str] = field(default_factory=list)

    def dims(self) -> list[int]:
        return [B.shape[1] for B in self.members]

    def is_chain(self, F) -> bool:
        ms = self.members
        for i in range(len(ms) - 1):
            if ms[i].shape[1] == ms[i + 1].shape[1] or not is_subspace(F, ms[i], ms[i + 1]):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "member_dims": self.dims(),
            "minimal": self.minimal,
            "maximal": self.maximal,
            "cyclic_count": self.cyclic_count,
            "notes": self.notes,
        }


def _add_member(F, members: list, keys: set, B: np.ndarray):
    B = canonical_basis(F, B)
    key = B.tobytes() + repr(B.shape).encode()
    if key not in keys:
        keys.add(key)
        members.append(B)


def oracle_cyclic_submodules(
    M: WeightModule,
    budget: int = DEFAULT_BUDGET,
    full: bool = False,
    sum_depth: int = 1,
    max_members: int = 300,
) -> SubmoduleLattice:
    """Enumerated lattice: cyclic submodules, their pairwise sums, 0, M and all maximal submodules."""
    F = M.field
    _require_finite(F)
    need = vector_count(M, full)
    if need > budget:
        raise OracleBudgetExceeded(f"{need} vectors to enumerate, budget {budget}")
    d = M.dim
    gmats = [M.rho(g) for g in M.pres.group.generators()]
    cyc = _cyclic_all(F, M.X, M.weights, full, gmats)
    members: list = []
    keys: set = set()
    _add_member(F, members, keys, F.zeros((d, 0)))
    for B in cyc:
        _add_member(F, members, keys, B)
    notes = []
    level = list(members)
    for _ in range(sum_depth):
        if len(members) > max_members:
            notes.append(f"sum closure skipped: {len(members)} members exceed {max_members}")
            break
        new = []
        for A, B in itertools.combinations(level, 2):
            before = len(members)
            _add_member(F, members, keys, subspace_sum(F, A, B))
            if len(members) > before:
                new.append(members[-1])
        if not new:
            break
        level = members[:]
    maxes = _maximal_bases(M, full)
    for B in maxes:
        _add_member(F, members, keys, B)
    _add_member(F, members, keys, F.eye(d))
    members.sort(key=lambda B: (B.shape[1], B.T.tolist()))
    index = {B.tobytes() + repr(B.shape).encode(): i for i, B in enumerate(members)}
    mins = [index[(canonical_basis(F, cyc[j])).tobytes() + repr(cyc[j].shape).encode()] for j in _minimal(F, cyc)]
    maxi = sorted(index[canonical_basis(F, B).tobytes() + repr(B.shape).encode()] for B in maxes)
    incl = None
    if len(members) <= 60:
        incl = [(i, j) for i in range(len(members)) for j in range(len(members))
                if i != j and members[i].shape[1] < members[j].shape[1] and is_subspace(F, members[i], members[j])]
    return SubmoduleLattice(d, members, sorted(mins), maxi, incl, len(cyc), notes)


def _maximal_bases(M: WeightModule, full: bool) -> list[np.ndarray]:
    """Maximal submodules: annihilators of the simple submodules of the transposed action."""
    F = M.field
    Xt = M.X.T.copy()
    gmats = [M.rho(g) for g in M.pres.group.generators()]
    cyc_t = _cyclic_all(F, Xt, M.weights, full, gmats)
    out = []
    for j in _minimal(F, cyc_t):
        S = cyc_t[j]
        out.append(canonical_basis(F, nullspace(F, S.T.copy())))
    return out


def _socle_of(F, X, weights, full, gmats) -> np.ndarray:
    d = X.shape[0]
    cyc = _cyclic_all(F, X, weights, full, gmats)
    S = F.zeros((d, 0))
    for j in _minimal(F, cyc):
        S = subspace_sum(F, S, cyc[j])
    return canonical_basis(F, S)


def oracle_socle(M: WeightModule, budget: int = DEFAULT_BUDGET, full: bool = False) -> np.ndarray:
    """Sum of all simple submodules (column basis)."""
    F = M.field
    _require_finite(F)
    need = vector_count(M, full)
    if need > budget:
        raise OracleBudgetExceeded(f"{need} vectors to enumerate, budget {budget}")
    gmats = [M.rho(g) for g in M.pres.group.generators()]
    return _socle_of(F, M.X, M.weights, full, gmats)


def oracle_radical(M: WeightModule, budget: int = DEFAULT_BUDGET, full: bool = False) -> np.ndarray:
    """Intersection of all maximal submodules (column basis)."""
    F = M.field
    _require_finite(F)
    need = vector_count(M, full)
    if need > budget:
        raise OracleBudgetExceeded(f"{need} vectors to enumerate, budget {budget}")
    d = M.dim
    maxes = _maximal_bases(M, full)
    if not maxes:
        return F.zeros((d, 0)) if d == 0 else F.eye(d)
    R = maxes[0]
    for B in maxes[1:]:
        R = subspace_intersection(F, R, B)
    return canonical_basis(F, R)


# ---------------------------------------------------------------------------
# composition series


def _semisimple_labels(M: WeightModule, X: np.ndarray, weights) -> list:
    """Labels of the simple summands of a semisimple layer."""
    F = M.field
    pres = M.pres
    s = pres.s
    out: list = []
    groups = _groups(weights)
    for w, idx in groups.items():
        sub = X[:, idx]
        k = len(idx) - rank(F, sub)
        out += [Simple1(w)] * k
    cosets: dict = {}
    for w, idx in groups.items():
        cosets.setdefault(CharacterCoset(w, pres.chi), []).extend(idx)
    for c, idx in sorted(cosets.items(), key=lambda kv: kv[0].sort_key()):
        idx = sorted(idx)
        Xb = X[np.ix_(idx, idx)]
        T = F.matpow(Xb, s)
        if F.all_zero(T):
            continue
        mu = minimal_polynomial(F, T)
        for f, _ in factor(mu).factors:
            if f == UniPoly.gen(F):
                continue
            kdim = nullspace(F, f.eval_matrix(T)).shape[1]
            out += [Block(c, f, 1)] * (kdim // (s * f.degree))
    return out


def _quotient(F, X: np.ndarray, weights, S: np.ndarray):
    """Action on M/S for a canonical homogeneous basis S, using complementary unit vectors."""
    d = X.shape[0]
    piv = set()
    for j in range(S.shape[1]):
        nz = np.flatnonzero(~F.iszero(S[:, j]))
        piv.add(int(nz[0]))
    rest = [i for i in range(d) if i not in piv]
    E = F.zeros((d, len(rest)))
    for c, i in enumerate(rest):
        E[i, c] = F.one_raw
    B = np.concatenate([S, E], axis=1)
    Y = F.matmul(inverse(F, B), F.matmul(X, B))
    k = S.shape[1]
    return Y[k:, k:].copy(), [weights[i] for i in rest]


def oracle_composition_series(M: WeightModule, budget: int = DEFAULT_BUDGET) -> list:
    """Simple factors layer by layer along the socle series (bottom first)."""
    F = M.field
    _require_finite(F)
    need = vector_count(M)
    if need > budget:
        raise OracleBudgetExceeded(f"{need} vectors to enumerate, budget {budget}")
    X = M.X
    weights = list(M.weights)
    out = []
    gmats: list = []
    while X.shape[0]:
        S = _socle_of(F, X, weights, False, gmats)
        k = S.shape[1]
        # action on the socle itself, in the basis S
        Xs = solve(F, S, F.matmul(X, S))
        ws = []
        for j in range(k):
            nz = np.flatnonzero(~F.iszero(S[:, j]))
            ws.append(weights[int(nz[0])])
        out.append(sorted(_semisimple_labels(M, Xs, ws), key=lambda lab: lab.sort_key()))
        X, weights = _quotient(F, X, weights, S)
    return out


# ---------------------------------------------------------------------------
# splitting


def _endomorphisms(F, X: np.ndarray, weights) -> list[np.ndarray]:
    """Weight-preserving matrices commuting with X."""
    d = X.shape[0]
    var = [(i, j) for i in range(d) for j in range(d) if weights[i] == weights[j]]
    pos = {v: c for c, v in enumerate(var)}
    A = F.zeros((d * d, len(var)))
    for (i, j), c in pos.items():
        # (phi X - X phi)[r, l]
        for l in range(d):
            if not F.r_is_zero(X[j, l]):
                A[i * d + l, c] = F.r_add(A[i * d + l, c], X[j, l])
        for r in range(d):
            if not F.r_is_zero(X[r, i]):
                A[r * d + j, c] = F.r_sub(A[r * d + j, c], X[r, i])
    keep = np.flatnonzero(~np.all(F.iszero(A), axis=1))
    K = nullspace(F, A[keep]) if len(keep) else F.eye(len(var))
    out = []
    for c in range(K.shape[1]):
        E = F.zeros((d, d))
        for (i, j), v in zip(var, range(len(var))):
            E[i, j] = K[v, c]
        out.append(E)
    return out


def _graded_kernel(F, A: np.ndarray, weights) -> np.ndarray:
    d = A.shape[0]
    cols = []
    for idx in _groups(weights).values():
        N = nullspace(F, A[:, idx])
        if N.shape[1]:
            full = F.zeros((d, N.shape[1]))
            full[idx] = N
            cols.append(full)
    return np.concatenate(cols, axis=1) if cols else F.zeros((d, 0))


def _split_by(F, phi: np.ndarray, weights) -> list[np.ndarray] | None:
    mu = minimal_polynomial(F, phi)
    fac = factor(mu).factors
    if len(fac) < 2:
        return None
    return [_graded_kernel(F, (f ** e).eval_matrix(phi), weights) for f, e in fac]


def _commutative(F, E: list[np.ndarray]) -> bool:
    for i in range(len(E)):
        for j in range(i + 1, len(E)):
            if not F.array_equal(F.matmul(E[i], E[j]), F.matmul(E[j], E[i])):
                return False
    return True


def _frobenius_fixed(F, E: list[np.ndarray]) -> np.ndarray:
    """Fixed space of a -> a^q on a commutative algebra with basis E (coordinates as columns)."""
    q = F.order
    n = len(E)
    basis = np.stack([e.reshape(-1) for e in E], axis=1)
    images = np.stack([F.matpow(e, q).reshape(-1) for e in E], axis=1)
    Fr = solve(F, basis, images)
    return nullspace(F, F.sub(Fr, F.eye(n)))


@dataclass
class OracleBlock:
    basis: np.ndarray  # columns in module coordinates
    X: np.ndarray  # action of x in that basis
    weights: list
    certificate: str

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


@dataclass
class OracleSplit:
    blocks: list[OracleBlock]
    witness: np.ndarray
    provenance: str = "oracle"

    def block_dims(self) -> list[int]:
        return sorted(b.dim for b in self.blocks)

    def to_json(self) -> dict:
        return {
            "provenance": self.provenance,
            "block_dims": self.block_dims(),
            "certificates": sorted(Counter(b.certificate for b in self.blocks).items()),
        }


def oracle_split(M: WeightModule, seed: int = 0, attempts: int = 64) -> OracleSplit:
    """Decompose M with idempotents of its endomorphism algebra."""
    F = M.field
    _require_finite(F)
    rng = np.random.default_rng(seed)
    d = M.dim
    done: list[OracleBlock] = []
    todo = [F.eye(d)] if d else []
    while todo:
        U = todo.pop()
        XU = solve(F, U, F.matmul(M.X, U))
        wU = []
        for j in range(U.shape[1]):
            nz = np.flatnonzero(~F.iszero(U[:, j]))
            wU.append(M.weights[int(nz[0])])
        E = _endomorphisms(F, XU, wU)
        pieces = None
        cert = ""
        if len(E) == 1:
            cert = "End is the scalars"
        elif _commutative(F, E):
            fixed = _frobenius_fixed(F, E)
            if fixed.shape[1] == 1:
                cert = "End commutative with one Frobenius-fixed line (local)"
            else:
                for c in range(fixed.shape[1]):
                    phi = F.zeros(E[0].shape)
                    for k, e in enumerate(E):
                        phi = F.add(phi, F.mul(e, F._wrap(fixed[k, c])))
                    pieces = _split_by(F, phi, wU)
                    if pieces:
                        break
                if pieces is None:  # pragma: no cover
                    raise OracleError("Frobenius-fixed elements failed to split a non-local algebra")
        else:
            for _ in range(attempts):
                coeffs = F.random_array((len(E),), rng)
                phi = F.zeros(E[0].shape)
                for k, e in enumerate(E):
                    phi = F.add(phi, F.mul(e, F._wrap(coeffs[k])))
                pieces = _split_by(F, phi, wU)
                if pieces:
                    break
            if pieces is None:
                raise OracleError(f"no splitting element found in {attempts} attempts (dim End = {len(E)})")
        if pieces is None:
            done.append(OracleBlock(U, XU, wU, cert))
        else:
            for P in pieces:
                todo.append(F.matmul(U, P))
    done.sort(key=lambda b: (b.dim, [w.sort_key() for w in b.weights]))
    W = np.concatenate([b.basis for b in done], axis=1) if done else F.zeros((0, 0))
    if done:
        Y = F.matmul(inverse(F, W), F.matmul(M.X, W))
        off = 0
        for b in done:
            blk = Y[:, off:off + b.dim].copy()
            if not F.array_equal(blk[off:off + b.dim], b.X):
                raise OracleError("witness does not reproduce the block action")
            blk[off:off + b.dim] = F.zeros((b.dim, b.dim))
            if not F.all_zero(blk):
                raise OracleError("witness is not block diagonal")
            off += b.dim
    return OracleSplit(done, W)
