"""Weight spaces, primary components, radical and socle of weight modules.

Every weight module splits over the cosets of <chi> (x moves weights inside a
coset), and inside a coset block over the irreducible factors f of the minimal
polynomial of T = X^s.  On the y-primary part the radical is X.C and the socle
is ker X; on an f-primary part (f != y) they are f(T).C and ker f(T).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from ..exactnum import UniPoly, factor, minimal_polynomial, poly_xgcd
from ..exactnum.linalg import canonical_basis, nullspace, rank
from ..grouprep import CharacterCoset
from ..weightmod import Block, Simple1, WeightModule


def weight_spaces(M: WeightModule) -> dict:
    """Character -> dimension, in canonical order of the characters."""
    counts = Counter(M.weights)
    return dict(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))


def coset_blocks(M: WeightModule) -> list[tuple[CharacterCoset, list[int]]]:
    """Coordinate blocks for the <chi>-cosets of the weights (each is a submodule)."""
    chi = M.pres.chi
    cache: dict = {}
    groups: dict = {}
    for i, w in enumerate(M.weights):
        c = cache.get(w)
        if c is None:
            c = CharacterCoset(w, chi)
            for m in c.members:
                cache[m] = c
        groups.setdefault(c, []).append(i)
    return sorted(groups.items(), key=lambda kv: kv[0].sort_key())


@dataclass
class PrimaryComponent:
    f: UniPoly
    exponent: int  # multiplicity of f in the minimal polynomial of X^s
    projector: np.ndarray
    basis: np.ndarray  # weight-homogeneous columns, grouped by weight
    basis_weights: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def is_y(self) -> bool:
        return self.f.degree == 1 and self.f.coeffs[0] == self.f.field.zero_raw


def _sub(M: WeightModule, idx: list[int]) -> tuple[np.ndarray, list]:
    return M.X[np.ix_(idx, idx)], [M.weights[i] for i in idx]


def _primary(F, X: np.ndarray, weights: list, s: int, seed: int = 0) -> list[PrimaryComponent]:
    d = X.shape[0]
    if d == 0:
        return []
    T = F.matpow(X, s)
    mu = minimal_polynomial(F, T)
    fac = factor(mu, seed=seed).factors
    parts = [(f, e, f ** e) for f, e in fac]
    out = []
    by_weight: dict = {}
    for i, w in enumerate(weights):
        by_weight.setdefault(w, []).append(i)
    wkeys = sorted(by_weight, key=lambda w: w.sort_key())
    for f, e, fe in parts:
        if len(parts) == 1:
            E = F.eye(d)
        else:
            Fi = mu // fe
            g, u, _ = poly_xgcd(Fi, fe)  # u Fi = 1 mod f^e
            E = (u * Fi % mu).eval_matrix(T)
        cols = []
        cw = []
        for w in wkeys:
            idx = by_weight[w]
            B = canonical_basis(F, E[:, idx])
            for j in range(B.shape[1]):
                cols.append(B[:, j])
                cw.append(w)
        basis = np.stack(cols, axis=1) if cols else F.zeros((d, 0))
        out.append(PrimaryComponent(f, e, E, basis, cw))
    return out


def primary_decomposition(M: WeightModule, seed: int = 0) -> list[PrimaryComponent]:
    """Bezout projectors u_i(T) F_i(T) for the factors of the minimal polynomial of T = X^s."""
    return _primary(M.field, M.X, list(M.weights), M.pres.s, seed)


def _phi(F, X: np.ndarray, comps: list[PrimaryComponent], s: int) -> np.ndarray:
    """Sum over components of R_i E_i with R_i = X (f = y) or f_i(X^s)."""
    d = X.shape[0]
    out = F.zeros((d, d))
    T = None
    for c in comps:
        if c.is_y:
            R = X
        else:
            if T is None:
                T = F.matpow(X, s)
            R = c.f.eval_matrix(T)
        out = F.add(out, F.matmul(R, c.projector))
    return out


def radical_operator(M: WeightModule, seed: int = 0) -> np.ndarray:
    """Phi with rad^k M = im Phi^k and soc^k M = ker Phi^k."""
    F = M.field
    d = M.dim
    out = F.zeros((d, d))
    for _, idx in coset_blocks(M):
        Xb, wb = _sub(M, idx)
        comps = _primary(F, Xb, wb, M.pres.s, seed)
        out[np.ix_(idx, idx)] = _phi(F, Xb, comps, M.pres.s)
    return out


@dataclass
class Submodule:
    module: WeightModule
    basis: np.ndarray  # canonical columns

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def same_as(self, other_basis: np.ndarray) -> bool:
        F = self.module.field
        return F.array_equal(canonical_basis(F, self.basis), canonical_basis(F, other_basis))


def radical(M: WeightModule, seed: int = 0) -> Submodule:
    F = M.field
    return Submodule(M, canonical_basis(F, radical_operator(M, seed)))


def socle(M: WeightModule, seed: int = 0) -> Submodule:
    F = M.field
    return Submodule(M, canonical_basis(F, nullspace(F, radical_operator(M, seed))))


@dataclass
class SeriesReport:
    radical_dims: list[int]
    socle_dims: list[int]
    radical_layers: list[list]  # per layer: list of (label, multiplicity)
    socle_layers: list[list]
    radical_length: int
    socle_length: int

    def to_json(self) -> dict:
        def layers(ls):
            return [[{"label": lab.to_json(), "multiplicity": m} for lab, m in layer] for layer in ls]

        return {
            "radical_dims": self.radical_dims,
            "socle_dims": self.socle_dims,
            "radical_length": self.radical_length,
            "socle_length": self.socle_length,
            "radical_layers": layers(self.radical_layers),
            "socle_layers": layers(self.socle_layers),
        }


def _layer_labels(M: WeightModule, comp_data, upper: list, lower: list) -> list:
    """Simple labels of upper/lower where both are lists of per-component subspaces (columns)."""
    F = M.field
    s = M.pres.s
    counts: Counter = Counter()
    for (coset, comp, wmap), U, L in zip(comp_data, upper, lower):
        if comp.is_y:
            for w in sorted(wmap, key=lambda w: w.sort_key()):
                idx = wmap[w]
                du = rank(F, U[idx]) if U.shape[1] else 0
                dl = rank(F, L[idx]) if L.shape[1] else 0
                if du > dl:
                    counts[Simple1(w)] += du - dl
        else:
            du = U.shape[1]
            dl = L.shape[1]
            if du > dl:
                counts[Block(coset, comp.f, 1)] += (du - dl) // (s * comp.f.degree)
    return sorted(counts.items(), key=lambda kv: kv[0].sort_key())


def series(M: WeightModule, seed: int = 0) -> SeriesReport:
    """Radical and socle series, with the simple labels of every layer."""
    F = M.field
    s = M.pres.s
    d = M.dim
    comp_data = []  # (coset, component in full coordinates, weight -> full indices)
    ops = []
    for coset, idx in coset_blocks(M):
        Xb, wb = _sub(M, idx)
        for comp in _primary(F, Xb, wb, s, seed):
            full = F.zeros((d, comp.dim))
            full[idx] = comp.basis
            P = F.zeros((d, d))
            P[np.ix_(idx, idx)] = comp.projector
            wmap: dict = {}
            for i in idx:
                wmap.setdefault(M.weights[i], []).append(i)
            R = Xb if comp.is_y else comp.f.eval_matrix(F.matpow(Xb, s))
            Rfull = F.zeros((d, d))
            Rfull[np.ix_(idx, idx)] = R
            comp_data.append((coset, PrimaryComponent(comp.f, comp.exponent, P, full, comp.basis_weights), wmap))
            ops.append(Rfull)
    # radical series per component: R^k C
    rad_chain = []
    cur = [c.basis for _, c, _ in comp_data]
    while True:
        rad_chain.append(cur)
        if all(b.shape[1] == 0 for b in cur):
            break
        cur = [canonical_basis(F, F.matmul(R, b)) if b.shape[1] else b for R, b in zip(ops, cur)]
    soc_chain = []
    k = 0
    while True:
        level = []
        for (coset, c, _), R in zip(comp_data, ops):
            if k == 0:
                level.append(F.zeros((d, 0)))
                continue
            Rk = F.matpow(R, k)
            K = nullspace(F, F.matmul(Rk, c.basis))
            level.append(canonical_basis(F, F.matmul(c.basis, K)) if K.shape[1] else F.zeros((d, 0)))
        soc_chain.append(level)
        if sum(b.shape[1] for b in level) == d:
            break
        k += 1
    rad_dims = [sum(b.shape[1] for b in lvl) for lvl in rad_chain]
    soc_dims = [sum(b.shape[1] for b in lvl) for lvl in soc_chain]
    rad_layers = [_layer_labels(M, comp_data, rad_chain[i], rad_chain[i + 1]) for i in range(len(rad_chain) - 1)]
    soc_layers = [_layer_labels(M, comp_data, soc_chain[i + 1], soc_chain[i]) for i in range(len(soc_chain) - 1)]
    rl = len(rad_chain) - 1
    sl = len(soc_chain) - 1
    if rl != sl:  # pragma: no cover - would contradict the theory
        raise ArithmeticError(f"radical length {rl} != socle length {sl}")
    return SeriesReport(rad_dims, soc_dims, rad_layers, soc_layers, rl, sl)


def is_simple(M: WeightModule, seed: int = 0) -> bool:
    if M.dim == 0:
        return False
    if M.dim == 1:
        return M.field.all_zero(M.X)
    blocks = coset_blocks(M)
    if len(blocks) != 1:
        return False
    F = M.field
    comps = _primary(F, M.X, list(M.weights), M.pres.s, seed)
    if len(comps) != 1:
        return False
    c = comps[0]
    return (not c.is_y) and c.exponent == 1 and M.dim == M.pres.s * c.f.degree


def is_indecomposable(M: WeightModule, seed: int = 0) -> bool:
    from .classify import classify

    rep = classify(M, seed=seed)
    return len(rep.labels) == 1 and rep.labels[0][1] == 1
