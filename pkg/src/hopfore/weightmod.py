"""Finite-dimensional weight modules: constructors, sums, tensor products, scrambling.

A module is a list of weights (one Character per basis vector) and the matrix
X of x in that basis, with the column convention X[i, j] = coefficient of m_i
in x.m_j.  The group acts diagonally by the weights.  X must send the weight
space of lam into the weight space of chi*lam.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exactnum import UniPoly, inverse
from .exactnum.linalg import SingularMatrix, block_diag
from .grouprep import Character, CharacterCoset
from .hopfcore import HopfElement, HopfPresentation


class ModuleError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class WeightModule:
    pres: HopfPresentation
    weights: tuple[Character, ...]
    X: np.ndarray
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def field(self):
        return self.pres.field

    def rho(self, g) -> np.ndarray:
        """Diagonal matrix of a group element."""
        F = self.field
        out = F.zeros((self.dim, self.dim))
        for i, w in enumerate(self.weights):
            out[i, i] = w(g).raw
        return out

    def act(self, h: HopfElement) -> np.ndarray:
        """Matrix of an arbitrary element sum c g x^i."""
        F = self.field
        out = F.zeros((self.dim, self.dim))
        powers = [F.eye(self.dim)]
        for (g, i), c in h.terms.items():
            while len(powers) <= i:
                powers.append(F.matmul(self.X, powers[-1]))
            term = F.matmul(self.rho(g), powers[i])
            out = F.add(out, F.mul(term, F._wrap(c)))
        return out

    def weight_indices(self) -> dict:
        out: dict = {}
        for i, w in enumerate(self.weights):
            out.setdefault(w, []).append(i)
        return out

    def __repr__(self):
        return f"WeightModule(dim={self.dim}{', ' + self.name if self.name else ''})"


# ---------------------------------------------------------------------------
# labels


@dataclass(frozen=True)
class Simple1:
    lam: Character

    kind = "Simple1"

    def dimension(self, s: int) -> int:
        return 1

    def to_json(self) -> dict:
        return {"kind": "Simple1", "lambda": self.lam.to_json()}

    def sort_key(self):
        return (0, self.lam.sort_key())

    def __str__(self):
        return f"V_{self.lam}"


@dataclass(frozen=True)
class Serial:
    lam: Character
    t: int

    kind = "Serial"

    def dimension(self, s: int) -> int:
        return self.t

    def to_json(self) -> dict:
        return {"kind": "Serial", "lambda": self.lam.to_json(), "t": self.t}

    def sort_key(self):
        return (1, self.lam.sort_key(), self.t)

    def __str__(self):
        return f"V_{self.t}({self.lam})"


@dataclass(frozen=True)
class Block:
    coset: CharacterCoset
    f: UniPoly
    r: int = 1

    kind = "Block"

    def dimension(self, s: int) -> int:
        return s * self.f.degree * self.r

    def to_json(self) -> dict:
        return {"kind": "Block", "coset": self.coset.rep.to_json(), "f": str(self.f).replace(" ", ""), "r": self.r}

    def sort_key(self):
        return (2, self.coset.sort_key(), self.f.sort_key(), self.r)

    def __str__(self):
        f = str(self.f)
        return f"V({self.coset.rep}, ({f})^{self.r})" if self.r > 1 else f"V({self.coset.rep}, {f})"


ModuleLabel = Simple1 | Serial | Block


def canonical_label(label):
    """Serial(lam, 1) is the one-dimensional simple V_lam."""
    if isinstance(label, Serial) and label.t == 1:
        return Simple1(label.lam)
    return label


def make_label_block(pres: HopfPresentation, lam: Character, f: UniPoly, r: int = 1) -> Block:
    if f.degree < 1 or not f.is_monic():
        raise ModuleError("Block labels need a monic f of degree >= 1")
    if f == UniPoly.gen(f.field):
        raise ModuleError("Block labels need f != y (V(lam, y) is the serial module V_s(lam))")
    return Block(CharacterCoset(lam, pres.chi), f, r)


def module_from_label(pres: HopfPresentation, label, check: bool = True) -> WeightModule:
    if isinstance(label, Simple1):
        return make_simple_onedim(pres, label.lam, check=check)
    if isinstance(label, Serial):
        return make_serial(pres, label.lam, label.t, check=check)
    if isinstance(label, Block):
        return make_block(pres, label.coset.rep, label.f, label.r, check=check)
    raise ModuleError(f"unknown label {label!r}")


# ---------------------------------------------------------------------------
# constructors


def _require_case1(pres: HopfPresentation):
    if pres.case != "Case1":
        raise ModuleError(f"weight modules are supported only when chi^-1(a) != 1 (got {pres.case})")


def _chi_ladder(pres: HopfPresentation, lam: Character, length: int) -> list[Character]:
    out = [lam]
    for _ in range(length - 1):
        out.append(out[-1] * pres.chi)
    return out


def _finish(M: WeightModule, check: bool) -> WeightModule:
    if check:
        rep = verify_module(M)
        if not rep.ok:
            raise ModuleError("; ".join(rep.violations))
    return M


def make_simple_onedim(pres: HopfPresentation, lam: Character, check: bool = True) -> WeightModule:
    """V_lam: g.v = lam(g) v, x.v = 0."""
    _require_case1(pres)
    Q = pres.quotient
    if check and Q.kind == "power_central" and not (lam(pres.a) ** Q.n).is_one():
        raise ModuleError(
            f"V_lam is not a module over the quotient: lam(a)^{Q.n} = {lam(pres.a) ** Q.n} != 1"
        )
    M = WeightModule(pres, (lam,), pres.field.zeros((1, 1)), name=f"V_{lam}")
    return _finish(M, check)


def make_serial(pres: HopfPresentation, lam: Character, t: int, check: bool = True) -> WeightModule:
    """V_t(lam): weights chi^i lam, x.m_i = m_{i+1}, x.m_{t-1} = 0."""
    _require_case1(pres)
    if t < 1:
        raise ModuleError("V_t(lam) needs t >= 1")
    Q = pres.quotient
    if check and Q.kind != "none":
        if t > Q.n:
            raise ModuleError(f"V_t(lam) over the quotient needs t <= n = {Q.n}, got t = {t}")
        if Q.kind == "power_central" and not (lam(pres.a) ** Q.n).is_one():
            raise ModuleError(f"V_t(lam) over x^n = beta(1-a^n) needs lam(a)^n = 1; lam(a)^{Q.n} = {lam(pres.a) ** Q.n}")
    F = pres.field
    X = F.zeros((t, t))
    for i in range(t - 1):
        X[i + 1, i] = F.one_raw
    M = WeightModule(pres, tuple(_chi_ladder(pres, lam, t)), X, name=f"V_{t}({lam})")
    return _finish(M, check)


def make_block(pres: HopfPresentation, lam: Character, f: UniPoly, r: int = 1, check: bool = True) -> WeightModule:
    """V(lam, f^r): ladder basis m_0..m_{Ns-1}, N = deg f^r, x.m_{Ns-1} = sum alpha_j m_{js}.

    Here f^r = y^N - sum_j alpha_j y^j.  f = y is allowed (giving V_s(lam) for r = 1).
    """
    _require_case1(pres)
    if r < 1:
        raise ModuleError("V(lam, f^r) needs r >= 1")
    if f.degree < 1 or not f.is_monic():
        raise ModuleError("V(lam, f) needs f monic of degree >= 1")
    F = pres.field
    s = pres.s
    g = f ** r
    N = g.degree
    d = N * s
    X = F.zeros((d, d))
    for i in range(d - 1):
        X[i + 1, i] = F.one_raw
    for j in range(N):
        X[j * s, d - 1] = F.r_neg(g.coeffs[j])
    M = WeightModule(pres, tuple(_chi_ladder(pres, lam, d)), X, name=f"V({lam}, ({f})^{r})")
    return _finish(M, check)


def make_verma_quotient(pres: HopfPresentation, lam: Character, check: bool = True) -> WeightModule:
    """M(lam)/(I M(lam)) for a quotient algebra."""
    Q = pres.quotient
    if Q.kind == "none":
        raise ModuleError("the Verma module of the unquotiented algebra is infinite-dimensional")
    if Q.kind == "power_zero":
        return make_serial(pres, lam, Q.n, check=check)
    F = pres.field
    la_n = lam(pres.a) ** Q.n
    if la_n.is_one():
        return make_serial(pres, lam, Q.n, check=check)
    c = F(Q.beta) * (F.one - la_n)
    y = UniPoly.gen(F)
    return make_block(pres, lam, y - c, 1, check=check)


# ---------------------------------------------------------------------------
# operations


def mod_direct_sum(M: WeightModule, N: WeightModule) -> WeightModule:
    if M.pres is not N.pres:
        raise ModuleError("modules over different presentations")
    F = M.field
    return WeightModule(M.pres, M.weights + N.weights, block_diag(F, [M.X, N.X]), name=f"({M.name} + {N.name})")


def mod_direct_sum_all(mods: Sequence[WeightModule]) -> WeightModule:
    out = mods[0]
    for m in mods[1:]:
        out = mod_direct_sum(out, m)
    return out


def mod_tensor(M: WeightModule, N: WeightModule) -> WeightModule:
    """x acts by X_M (x) rho_N(a) + 1 (x) X_N; basis m_i (x) n_j at index i*dim N + j."""
    if M.pres is not N.pres:
        raise ModuleError("modules over different presentations")
    F = M.field
    a = M.pres.a
    X = F.add(F.kron(M.X, N.rho(a)), F.kron(F.eye(M.dim), N.X))
    weights = tuple(u * v for u in M.weights for v in N.weights)
    return WeightModule(M.pres, weights, X, name=f"({M.name} (x) {N.name})")


def mod_scramble(M: WeightModule, seed: int, return_witness: bool = False):
    """Conjugate by a random invertible matrix P that is block-diagonal on weight spaces.

    The new matrix is P^-1 X P.  With return_witness the pair (module, P) is returned.
    """
    F = M.field
    rng = np.random.default_rng(seed)
    P = F.zeros((M.dim, M.dim))
    for _, idx in sorted(M.weight_indices().items(), key=lambda kv: kv[0].sort_key()):
        k = len(idx)
        while True:
            B = F.random_array((k, k), rng)
            try:
                inverse(F, B)
                break
            except SingularMatrix:
                continue
        P[np.ix_(idx, idx)] = B
    Pinv = inverse(F, P)
    X = F.matmul(Pinv, F.matmul(M.X, P))
    out = WeightModule(M.pres, M.weights, X, name=f"scramble({M.name}, {seed})")
    return (out, P) if return_witness else out


@dataclass
class ModuleCheck:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def to_json(self):
        return {"ok": self.ok, "violations": self.violations}


def verify_module(M: WeightModule) -> ModuleCheck:
    """Weight compatibility of X, group relations, quotient relation."""
    pres = M.pres
    F = M.field
    G = pres.group
    out = []
    if M.X.shape != (M.dim, M.dim):
        return ModuleCheck(False, [f"X has shape {M.X.shape}, expected {(M.dim, M.dim)}"])
    for lam in set(M.weights):
        if lam.group != G or lam.field != F:
            out.append(f"weight {lam} is not a character of the instance")
        elif not lam.is_valid():
            out.append(f"weight {lam} violates a group relation")
    chi = pres.chi
    nz = np.argwhere(~F.iszero(M.X))
    bad: dict = {}
    for i, j in nz:
        if M.weights[i] != chi * M.weights[j]:
            key = (M.weights[j], M.weights[i])
            bad.setdefault(key, []).append((int(i), int(j)))
    for (src, dst), entries in sorted(bad.items(), key=lambda kv: kv[1][0]):
        out.append(f"X maps weight {src} into weight {dst} (not chi*{src}) at entries {entries[:4]}")
    Q = pres.quotient
    if Q.kind != "none" and not out:
        Xn = F.matpow(M.X, Q.n)
        if Q.kind == "power_zero":
            target = F.zeros((M.dim, M.dim))
        else:
            beta = F(Q.beta)
            ran = M.rho(pres.a ** Q.n)
            target = F.mul(F.sub(F.eye(M.dim), ran), F._wrap(beta.raw))
        if not F.array_equal(Xn, target):
            rhs = "0" if Q.kind == "power_zero" else f"{Q.beta}*(1 - rho(a^{Q.n}))"
            out.append(f"quotient relation fails: X^{Q.n} != {rhs}")
    return ModuleCheck(not out, out)
