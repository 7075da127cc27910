"""Homomorphism spaces, tensor predictions, simple census and projective covers."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..exactnum import UniPoly
from ..exactnum.linalg import nullspace, rank
from ..grouprep import CharacterCoset, character_cosets, enumerate_characters
from ..weightmod import Block, ModuleError, Serial, Simple1, WeightModule
from .classify import DecompositionReport


def hom_space(M: WeightModule, N: WeightModule) -> list[np.ndarray]:
    """Basis of Hom_H(M, N) as dim N x dim M matrices."""
    if M.pres is not N.pres:
        raise ModuleError("modules over different presentations")
    F = M.field
    dM, dN = M.dim, N.dim
    # weight-preserving entries only
    var = [(i, j) for i in range(dN) for j in range(dM) if N.weights[i] == M.weights[j]]
    if not var:
        return []
    A = F.zeros((dN * dM, len(var)))
    XM, XN = M.X, N.X
    for c, (i, j) in enumerate(var):
        # phi X_M - X_N phi, entry (k, l)
        for l in np.nonzero(~F.iszero(XM[j]))[0]:
            A[i * dM + l, c] = F.r_add(A[i * dM + l, c], XM[j, l])
        for k in np.nonzero(~F.iszero(XN[:, i]))[0]:
            A[k * dM + j, c] = F.r_sub(A[k * dM + j, c], XN[k, i])
    rows = np.nonzero(~np.all(F.iszero(A), axis=1))[0]
    K = nullspace(F, A[rows]) if len(rows) else F.eye(len(var))
    out = []
    for c in range(K.shape[1]):
        phi = F.zeros((dN, dM))
        for v, (i, j) in enumerate(var):
            phi[i, j] = K[v, c]
        out.append(phi)
    return out


def is_homomorphism(M: WeightModule, N: WeightModule, phi: np.ndarray) -> bool:
    F = M.field
    for i in range(N.dim):
        for j in range(M.dim):
            if N.weights[i] != M.weights[j] and not F.r_is_zero(phi[i, j]):
                return False
    return F.array_equal(F.matmul(phi, M.X), F.matmul(N.X, phi))


def is_split_epi(M: WeightModule, N: WeightModule, phi: np.ndarray) -> bool:
    """phi: M -> N surjective module map admitting psi: N -> M with phi psi = id."""
    F = M.field
    if not is_homomorphism(M, N, phi) or rank(F, phi) != N.dim:
        return False
    basis = hom_space(N, M)
    if not basis:
        return N.dim == 0
    # solve sum c_k phi psi_k = I
    cols = [F.matmul(phi, psi).reshape(-1) for psi in basis]
    A = np.stack(cols, axis=1)
    b = F.eye(N.dim).reshape(-1, 1)
    return rank(F, A) == rank(F, np.concatenate([A, b], axis=1))


def canonical_epi(M: WeightModule, t: int) -> np.ndarray:
    """Projection of a ladder module onto its first t basis vectors (V_n -> V_t)."""
    F = M.field
    out = F.zeros((t, M.dim))
    for i in range(t):
        out[i, i] = F.one_raw
    return out


def predicted_tensor(pres, A, B) -> DecompositionReport | None:
    """Closed-form decomposition of A (x) B for one-dimensional simples and V(lam, y - c) blocks.

    None means the pair is outside the known formulas; classify(mod_tensor(...)) is the fallback.
    """
    F = pres.field
    y = UniPoly.gen(F)
    s = pres.s
    a = pres.a

    def linear(lab):
        return isinstance(lab, Block) and lab.r == 1 and lab.f.degree == 1 and lab.f != y

    def report(pairs):
        return DecompositionReport(sorted(pairs, key=lambda kv: kv[0].sort_key()), "closed-form")

    if isinstance(A, Simple1) and isinstance(B, Simple1):
        return report([(Simple1(A.lam * B.lam), 1)])
    if isinstance(A, Simple1) and linear(B):
        return report([(Block(CharacterCoset(A.lam * B.coset.rep, pres.chi), B.f, 1), 1)])
    if linear(A) and isinstance(B, Simple1):
        alpha = -A.f.coeff(0)
        c = alpha * B.lam(a) ** s
        return report([(Block(CharacterCoset(A.coset.rep * B.lam, pres.chi), y - c, 1), 1)])
    if linear(A) and linear(B):
        if F.multiplicative_order(pres.q) != s:
            return None
        alpha = -A.f.coeff(0)
        beta = -B.f.coeff(0)
        sig = A.coset.rep
        lam = B.coset.rep
        c = alpha * lam(a) ** s + beta
        base = sig * lam
        if c.is_zero():
            members = []
            cur = base
            for _ in range(s):
                members.append((Serial(cur, s), 1))
                cur = cur * pres.chi
            return report(members)
        return report([(Block(CharacterCoset(base, pres.chi), y - c, 1), s)])
    return None


@dataclass
class SimpleCensus:
    one_dim: list  # Simple1 labels
    blocks: list  # Block labels (finite census) or cosets (infinite families)
    infinite_families: bool
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "one_dimensional": [lab.to_json() for lab in self.one_dim],
            "one_dimensional_count": len(self.one_dim),
            "infinite_families": self.infinite_families,
            "note": self.note,
        }
        if self.infinite_families:
            out["block_families"] = [{"coset": c.rep.to_json(), "f": "any monic irreducible f != y"} for c in self.blocks]
        else:
            out["blocks"] = [lab.to_json() for lab in self.blocks]
            out["block_count"] = len(self.blocks)
        return out


def simple_census(pres) -> SimpleCensus:
    """Representatives of the simple weight modules of the algebra (or of its quotient)."""
    if pres.case != "Case1":
        raise ModuleError("simple modules are classified only when chi^-1(a) != 1")
    F = pres.field
    G = pres.group
    chars = enumerate_characters(G, F)
    Q = pres.quotient
    a = pres.a
    y = UniPoly.gen(F)
    if Q.kind == "none":
        return SimpleCensus(
            [Simple1(lam) for lam in chars],
            character_cosets(G, F, pres.chi),
            True,
            f"{len(chars)} one-dimensional V_lam; V(sigma, f) for every coset and every irreducible f != y",
        )
    if Q.kind == "power_zero":
        return SimpleCensus([Simple1(lam) for lam in chars], [], False, "x is nilpotent: only V_lam")
    n = Q.n
    ones = [Simple1(lam) for lam in chars if (lam(a) ** n).is_one()]
    blocks = []
    for c in character_cosets(G, F, pres.chi):
        sig = c.rep
        v = sig(a) ** n
        if not v.is_one():
            blocks.append(Block(c, y - F(Q.beta) * (F.one - v), 1))
    return SimpleCensus(ones, blocks, False, f"V_lam with lam(a)^{n} = 1 and one block per coset with sigma(a)^{n} != 1")


@dataclass
class ProjectiveEntry:
    simple: object
    cover: object

    def to_json(self, s: int) -> dict:
        return {
            "simple": self.simple.to_json(),
            "cover": self.cover.to_json(),
            "cover_dim": self.cover.dimension(s),
        }


def projectives_report(pres) -> list[ProjectiveEntry]:
    """Projective covers of the simples of the finite-dimensional quotient."""
    Q = pres.quotient
    if Q.kind == "none":
        raise ModuleError("projective covers are reported only for the finite-dimensional quotient")
    n = Q.n
    if pres.field.multiplicative_order(pres.q) != n:
        raise ModuleError(f"needs chi^-1(a) to be a primitive root of unity of order {n}")
    census = simple_census(pres)
    out = [ProjectiveEntry(lab, Serial(lab.lam, n)) for lab in census.one_dim]
    out += [ProjectiveEntry(lab, lab) for lab in census.blocks]
    return out
