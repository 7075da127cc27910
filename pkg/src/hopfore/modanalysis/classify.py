"""Decomposition of a weight module into indecomposable summands.

Per coset block and per primary component of T = X^s:

* on the y-part X is nilpotent; graded Jordan chains are read off the kernel
  flag ker X^h one weight space at a time, and a chain of length h starting at
  weight mu spans a copy of V_h(mu);
* on an f-part X is invertible, so the weight space W of one fixed weight mu
  determines everything.  T acts on W with minimal polynomial a power of f;
  a k[T]-cyclic decomposition of W, generator w with local minimal polynomial
  f^h, gives the summand spanned by x^i.w, isomorphic to V(mu, f^h).

The witness W has the summand bases as columns, so W^-1 X W is block diagonal
with exactly the constructor matrices.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ..exactnum.linalg import canonical_basis, complement_columns, inverse, nullspace, solve, subspace_sum
from ..weightmod import Block, Serial, Simple1, WeightModule, canonical_label, make_block, make_serial
from .structure import PrimaryComponent, _primary, _sub, coset_blocks


@dataclass
class Summand:
    label: object
    generator_weight: object  # weight of the first basis vector
    columns: np.ndarray  # basis in module coordinates

    def model(self, pres) -> WeightModule:
        """The constructor module matched exactly by the witness block."""
        lab = self.label
        if isinstance(lab, Simple1):
            return make_serial(pres, lab.lam, 1, check=False)
        if isinstance(lab, Serial):
            return make_serial(pres, lab.lam, lab.t, check=False)
        return make_block(pres, self.generator_weight, lab.f, lab.r, check=False)


@dataclass
class DecompositionReport:
    labels: list  # [(label, multiplicity)] sorted canonically
    provenance: str
    summands: list[Summand] = field(default_factory=list)
    witness: np.ndarray | None = None
    certificate: dict = field(default_factory=dict)

    @property
    def total_dim(self) -> int:
        return sum(s.columns.shape[1] for s in self.summands)

    def label_multiset(self) -> Counter:
        return Counter(dict(self.labels))

    def to_json(self, field=None) -> dict:
        out = {
            "provenance": self.provenance,
            "summands": [{"label": lab.to_json(), "multiplicity": m} for lab, m in self.labels],
            "certificate": self.certificate,
        }
        if self.witness is not None and field is not None:
            out["witness"] = [[field.format(v) for v in row] for row in self.witness.tolist()]
        return out


def _restrict(F, basis: np.ndarray, weights: list) -> dict:
    """Component basis columns grouped by weight."""
    out: dict = {}
    for j, w in enumerate(weights):
        out.setdefault(w, []).append(j)
    return {w: basis[:, js] for w, js in out.items()}


def _y_chains(F, X: np.ndarray, comp: PrimaryComponent, chi) -> list[tuple[object, int, np.ndarray]]:
    """(weight, length, generator) for a graded Jordan basis of the nilpotent part."""
    C = _restrict(F, comp.basis, comp.basis_weights)
    d = X.shape[0]
    # kernels K[h][mu] = C_mu cap ker X^h
    K: list[dict] = [{w: F.zeros((d, 0)) for w in C}]
    Xh = F.eye(d)
    H = 0
    while True:
        Xh = F.matmul(X, Xh)
        level = {}
        full = True
        for w, B in C.items():
            N = nullspace(F, F.matmul(Xh, B))
            level[w] = canonical_basis(F, F.matmul(B, N)) if N.shape[1] else F.zeros((d, 0))
            if level[w].shape[1] != B.shape[1]:
                full = False
        K.append(level)
        H += 1
        if full:
            break
    chi_inv = chi.inverse()
    out = []
    for h in range(H, 0, -1):
        for w in sorted(C, key=lambda w: w.sort_key()):
            S = K[h - 1][w]
            if h < H:
                src = chi_inv * w
                if src in C and K[h + 1][src].shape[1]:
                    S = subspace_sum(F, S, F.matmul(X, K[h + 1][src]))
            new = complement_columns(F, S, K[h][w])
            for j in range(new.shape[1]):
                out.append((w, h, new[:, j]))
    return out


def _f_generators(F, X: np.ndarray, comp: PrimaryComponent, s: int) -> tuple[object, list[tuple[int, np.ndarray]]]:
    """Weight mu and [(h, w)] giving a k[T]-cyclic decomposition of the mu weight space."""
    C = _restrict(F, comp.basis, comp.basis_weights)
    mu = min(C, key=lambda w: w.sort_key())
    W = C[mu]
    k = W.shape[1]
    T = F.matpow(X, s)
    Tw = solve(F, W, F.matmul(T, W))  # T in the coordinates of W
    Nw = comp.f.eval_matrix(Tw)
    Kh = [F.zeros((k, 0))]
    P = F.eye(k)
    while Kh[-1].shape[1] < k:
        P = F.matmul(Nw, P)
        Kh.append(canonical_basis(F, nullspace(F, P)))
    H = len(Kh) - 1
    deg = comp.f.degree
    gens = []
    for h in range(H, 0, -1):
        S = Kh[h - 1]
        if h < H and Kh[h + 1].shape[1]:
            S = subspace_sum(F, S, F.matmul(Nw, Kh[h + 1]))
        while True:
            new = complement_columns(F, S, Kh[h])
            if new.shape[1] == 0:
                break
            v = new[:, :1]
            span = [v]
            for _ in range(deg - 1):
                span.append(F.matmul(Tw, span[-1]))
            S = subspace_sum(F, S, np.concatenate(span, axis=1))
            gens.append((h, F.matmul(W, v)[:, 0]))
    return mu, gens


def _orbit(F, X: np.ndarray, v: np.ndarray, n: int) -> np.ndarray:
    cols = [v]
    for _ in range(n - 1):
        cols.append(F.matmul(X, cols[-1][:, None])[:, 0])
    return np.stack(cols, axis=1)


def classify(M: WeightModule, seed: int = 0, witness: bool = True) -> DecompositionReport:
    """Krull-Schmidt labels of M, with a witness basis and a self-check."""
    F = M.field
    pres = M.pres
    s = pres.s
    d = M.dim
    summands: list[Summand] = []
    for coset, idx in coset_blocks(M):
        Xb, wb = _sub(M, idx)
        for comp in _primary(F, Xb, wb, s, seed):
            if comp.is_y:
                for w, h, v in _y_chains(F, Xb, comp, pres.chi):
                    cols = _orbit(F, Xb, v, h)
                    full = F.zeros((d, h))
                    full[idx] = cols
                    summands.append(Summand(canonical_label(Serial(w, h)), w, full))
            else:
                mu, gens = _f_generators(F, Xb, comp, s)
                for h, v in gens:
                    n = s * comp.f.degree * h
                    cols = _orbit(F, Xb, v, n)
                    full = F.zeros((d, n))
                    full[idx] = cols
                    summands.append(Summand(Block(coset, comp.f, h), mu, full))
    counts = Counter(sm.label for sm in summands)
    labels = sorted(counts.items(), key=lambda kv: kv[0].sort_key())
    cert: dict = {"summand_dims": sorted(sm.columns.shape[1] for sm in summands)}
    Wm = None
    if summands and witness:
        Wm = np.concatenate([sm.columns for sm in summands], axis=1)
        Winv = inverse(F, Wm)
        Y = F.matmul(Winv, F.matmul(M.X, Wm))
        ok = True
        off = 0
        for sm in summands:
            n = sm.columns.shape[1]
            model = sm.model(pres)
            blk = Y[off:off + n, off:off + n]
            ok = ok and F.array_equal(blk, model.X)
            rest = Y[:, off:off + n].copy()
            rest[off:off + n] = F.zeros((n, n))
            ok = ok and F.all_zero(rest)
            ok = ok and _weights_match(F, M, sm.columns, model.weights)
            off += n
        cert["witness_conjugates_to_models"] = bool(ok)
        if not ok:  # pragma: no cover - internal consistency guard
            raise ArithmeticError("classification witness does not conjugate X to the model matrices")
    elif d == 0:
        cert["witness_conjugates_to_models"] = True
    return DecompositionReport(labels, "idempotent-split", summands, Wm, cert)


def _weights_match(F, M: WeightModule, cols: np.ndarray, weights) -> bool:
    """Column j must live in the weight space of weights[j]."""
    nz = ~F.iszero(cols)
    for j, w in enumerate(weights):
        rows = np.nonzero(nz[:, j])[0]
        if len(rows) == 0 or any(M.weights[i] != w for i in rows):
            return False
    return True
