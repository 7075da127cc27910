"""The algebra kG(chi^-1, a, delta) and its rank-one quotients, as exact normal forms.

Relations (tau = chi^-1 is the twisting character of the Ore extension):

    x g = tau(g) g x + alpha(g) g (1 - a),   Delta(x) = x (x) a + 1 (x) x,
    eps(x) = 0,  S(x) = -x a^-1.

Elements are finite sums of basis monomials g x^i, stored as dicts keyed by
(exponent tuple of g, i) with raw field coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable

from ..exactnum import Field, Scalar
from ..grouprep import (
    AbelianGroup,
    Character,
    Cocycle,
    GroupElement,
    char_order,
    cocycle_check,
)

Label = tuple  # (gexps, i)


class PresentationError(ValueError):
    """An invalid presentation; the message names the violated condition."""


@dataclass(frozen=True)
class QuotientSpec:
    kind: str = "none"  # none | power_zero | power_central
    n: int | None = None
    beta: Scalar | None = None

    @classmethod
    def none(cls) -> "QuotientSpec":
        return cls("none")

    @classmethod
    def power_zero(cls, n: int) -> "QuotientSpec":
        return cls("power_zero", int(n))

    @classmethod
    def power_central(cls, n: int, beta: Scalar) -> "QuotientSpec":
        return cls("power_central", int(n), beta)

    @property
    def is_none(self) -> bool:
        return self.kind == "none"

    def describe(self) -> str:
        if self.kind == "none":
            return "none"
        if self.kind == "power_zero":
            return f"x^{self.n}"
        return f"x^{self.n} - {self.beta}*(1-a^{self.n})"


@dataclass(frozen=True)
class Normalization:
    """Witness for x' = x - gamma (1 - a), which kills a coboundary alpha."""

    gamma: Scalar
    original_alpha: Cocycle

    def transport(self, pres: "HopfPresentation") -> "HopfElement":
        """Image of the old generator x in the normalized algebra: x' + gamma (1 - a)."""
        g = self.gamma
        return pres.x + pres.one * g - pres.g(pres.a) * g


@dataclass(frozen=True, eq=False)
class HopfPresentation:
    field: Field
    group: AbelianGroup
    chi: Character
    a: GroupElement
    alpha: Cocycle
    quotient: QuotientSpec = dc_field(default_factory=QuotientSpec.none)
    normalization: Normalization | None = None

    # derived data --------------------------------------------------------
    @cached_property
    def tau(self) -> Character:
        return self.chi.inverse()

    @cached_property
    def q(self) -> Scalar:
        return self.tau(self.a)

    @cached_property
    def s(self) -> int:
        return char_order(self.chi)

    @cached_property
    def case(self) -> str:
        if not self.chi(self.a).is_one():
            return "Case1"
        return "Case2" if self.alpha(self.a).is_zero() else "Case3"

    @property
    def n(self) -> int | None:
        return self.quotient.n

    @cached_property
    def identity_exps(self) -> tuple:
        return self.group.identity.exps

    @cached_property
    def _arith(self) -> "_Arith":
        return _Arith(self)

    def describe(self) -> dict:
        return {
            "field": str(self.field),
            "group": list(self.group.invariants),
            "chi": self.chi.to_json(),
            "a": list(self.a.exps),
            "alpha": [str(v) for v in self.alpha.values],
            "ideal": self.quotient.describe(),
            "q": str(self.q),
            "s": self.s,
            "case": self.case,
        }

    # element constructors -------------------------------------------------
    def element(self, terms: dict | None = None) -> "HopfElement":
        return HopfElement(self, _clean(self.field, terms or {}))

    @property
    def zero(self) -> "HopfElement":
        return HopfElement(self, {})

    @property
    def one(self) -> "HopfElement":
        return HopfElement(self, {(self.identity_exps, 0): self.field.one_raw})

    @property
    def x(self) -> "HopfElement":
        return self.monomial(self.group.identity, 1)

    def g(self, g) -> "HopfElement":
        return self.monomial(g, 0)

    def monomial(self, g, i: int, coeff=1) -> "HopfElement":
        exps = g.exps if isinstance(g, GroupElement) else self.group.element(g).exps
        c = self.field(coeff).raw
        elt = HopfElement(self, _clean(self.field, {(exps, i): c}))
        if self.quotient.kind != "none" and i >= self.quotient.n:
            return HopfElement(self, self._arith.reduce(elt.terms))
        return elt

    def basis_labels(self, degree_cap: int) -> list[Label]:
        top = degree_cap
        if self.quotient.kind != "none":
            top = min(top, self.quotient.n - 1)
        return [(g.exps, i) for i in range(top + 1) for g in self.group.elements()]


def make_hopf(
    field: Field,
    group: AbelianGroup,
    chi: Character,
    a: GroupElement,
    alpha: Cocycle | Iterable | None = None,
    quotient: QuotientSpec | None = None,
    *,
    check: bool = True,
    normalize: bool = True,
) -> HopfPresentation:
    """Validate and build a presentation.

    chi is the character of the relation x g = chi^-1(g) g x; alpha is a
    cocycle twisted by chi^-1 (given as a Cocycle or as generator values).
    Case1 inputs with alpha != 0 are normalized to alpha = 0.  check=False
    skips validation (negative controls only).
    """
    quotient = quotient or QuotientSpec.none()
    if not isinstance(a, GroupElement):
        a = group.element(a)
    tau = chi.inverse()
    if alpha is None:
        alpha = Cocycle.zero(tau)
    elif not isinstance(alpha, Cocycle):
        alpha = Cocycle(tau, list(alpha))
    elif alpha.tau != tau:
        raise PresentationError("cocycle must be twisted by chi^-1")
    pres = HopfPresentation(field, group, chi, a, alpha, quotient)
    if not check:
        return pres
    if chi.field != field or chi.group != group or a.group != group:
        raise PresentationError("chi, a and the group must share the same field and group")
    if not chi.is_valid():
        raise PresentationError(f"chi = {chi} is not a character of {group}: some omega_i^n_i != 1")
    cc = cocycle_check(alpha, tau)
    if not cc.ok:
        raise PresentationError("alpha is not a cocycle for chi^-1: " + "; ".join(cc.failures))
    if normalize and pres.case == "Case1" and not alpha.is_zero():
        pres = case_normalize(pres)[0]
    _validate_quotient(pres)
    return pres


def _validate_quotient(pres: HopfPresentation) -> None:
    Q = pres.quotient
    if Q.kind == "none":
        return
    if Q.kind not in ("power_zero", "power_central"):
        raise PresentationError(f"unknown quotient kind {Q.kind!r}")
    n = Q.n
    if n is None or n < 2:
        raise PresentationError("quotient needs n >= 2")
    if pres.case != "Case1":
        raise PresentationError(
            f"quotient x^{n}: chi^-1(a) must be a primitive root of unity of order {n}, but chi(a) = 1 ({pres.case})"
        )
    order = pres.field.multiplicative_order(pres.q)
    if order != n:
        raise PresentationError(
            f"quotient x^{n}: q = chi^-1(a) = {pres.q} is not a primitive root of unity of order {n} (its order is {order})"
        )
    if Q.kind == "power_central":
        beta = pres.field(Q.beta) if Q.beta is not None else None
        if beta is None or beta.is_zero():
            raise PresentationError("x^n - beta(1-a^n) needs beta != 0 (use x^n for beta = 0)")
        if (pres.a ** n).is_identity():
            raise PresentationError(f"x^{n} - beta(1-a^{n}) with beta != 0 needs a^{n} != 1 (use x^{n} instead)")
        if pres.s != n:
            raise PresentationError(f"x^{n} - beta(1-a^{n}) with beta != 0 and a^{n} != 1 needs |chi| = {n}, got {pres.s}")


def case_normalize(pres: HopfPresentation) -> tuple[HopfPresentation, Normalization]:
    """Replace x by x' = x - gamma (1 - a), gamma = alpha(a) / (1 - chi^-1(a)), making alpha = 0."""
    if pres.case != "Case1":
        raise PresentationError(f"case_normalize needs chi(a) != 1, got {pres.case}")
    F = pres.field
    gamma = pres.alpha(pres.a) / (F.one - pres.tau(pres.a))
    # alpha is then the coboundary gamma (1 - tau); verify on generators
    for g, v in zip(pres.group.generators(), pres.alpha.values):
        if v != gamma * (F.one - pres.tau(g)):
            raise PresentationError("alpha is not the coboundary of gamma; cannot normalize")
    new = HopfPresentation(
        F, pres.group, pres.chi, pres.a, Cocycle.zero(pres.tau), pres.quotient,
        Normalization(gamma, pres.alpha),
    )
    return new, Normalization(gamma, pres.alpha)


# ---------------------------------------------------------------------------


def _clean(F: Field, terms: dict) -> dict:
    return {k: v for k, v in terms.items() if not F.r_is_zero(v)}


def _acc(F: Field, out: dict, key, val) -> None:
    if F.r_is_zero(val):
        return
    cur = out.get(key)
    if cur is None:
        out[key] = val
    else:
        s = F.r_add(cur, val)
        if F.r_is_zero(s):
            del out[key]
        else:
            out[key] = s


class _Arith:
    """Cached multiplication data for one presentation.

    The caches only ever grow with deterministic values, so concurrent readers
    at worst recompute an entry.
    """

    def __init__(self, pres: HopfPresentation):
        self.pres = pres
        self.F = pres.field
        self.G = pres.group
        self.tau_raw: dict = {}
        self.alpha_raw: dict = {}
        self.xpow_h: dict = {}  # h exps -> list of dicts for x^i h (free algebra)
        self.prod: dict = {}
        self.a_exps = pres.a.exps
        Q = pres.quotient
        self.n = Q.n if Q.kind != "none" else None
        self.beta = self.F(Q.beta).raw if Q.kind == "power_central" else None
        self.an_exps = self.G.pow_raw(self.a_exps, self.n) if self.n else None

    def tau(self, exps):
        v = self.tau_raw.get(exps)
        if v is None:
            v = self.pres.tau(exps).raw
            self.tau_raw[exps] = v
        return v

    def alpha(self, exps):
        v = self.alpha_raw.get(exps)
        if v is None:
            v = self.pres.alpha(exps).raw
            self.alpha_raw[exps] = v
        return v

    def x_times(self, terms: dict) -> dict:
        """Left multiplication by x in the free (unreduced) algebra."""
        F, G = self.F, self.G
        out: dict = {}
        for (k, e), c in terms.items():
            _acc(F, out, (k, e + 1), F.r_mul(c, self.tau(k)))
            al = self.alpha(k)
            if not F.r_is_zero(al):
                ca = F.r_mul(c, al)
                _acc(F, out, (k, e), ca)
                _acc(F, out, (G.mul_raw(k, self.a_exps), e), F.r_neg(ca))
        return out

    def xpow_times_g(self, i: int, h: tuple) -> dict:
        lst = self.xpow_h.get(h)
        if lst is None:
            lst = [{(h, 0): self.F.one_raw}]
            self.xpow_h[h] = lst
        while len(lst) <= i:
            lst.append(self.x_times(lst[-1]))
        return lst[i]

    def reduce(self, terms: dict) -> dict:
        if self.n is None:
            return terms
        F, G, n = self.F, self.G, self.n
        if all(e < n for (_, e) in terms):
            return terms
        out: dict = {}
        stack = list(terms.items())
        while stack:
            (k, e), c = stack.pop()
            if e < n:
                _acc(F, out, (k, e), c)
                continue
            if self.beta is None:
                continue
            cb = F.r_mul(c, self.beta)
            stack.append(((k, e - n), cb))
            stack.append(((G.mul_raw(k, self.an_exps), e - n), F.r_neg(cb)))
        return out

    def basis_mul(self, u: Label, v: Label) -> dict:
        key = (u, v)
        hit = self.prod.get(key)
        if hit is not None:
            return hit
        F, G = self.F, self.G
        (g, i), (h, j) = u, v
        out: dict = {}
        for (k, e), c in self.xpow_times_g(i, h).items():
            _acc(F, out, (G.mul_raw(g, k), e + j), c)
        out = self.reduce(out)
        self.prod[key] = out
        return out

    def mul(self, A: dict, B: dict) -> dict:
        F = self.F
        out: dict = {}
        for u, cu in A.items():
            for v, cv in B.items():
                c = F.r_mul(cu, cv)
                for w, cw in self.basis_mul(u, v).items():
                    _acc(F, out, w, F.r_mul(c, cw))
        return out

    # coalgebra ---------------------------------------------------------
    def tensor_mul(self, A: dict, B: dict) -> dict:
        F = self.F
        out: dict = {}
        for (u1, u2), cu in A.items():
            for (v1, v2), cv in B.items():
                c = F.r_mul(cu, cv)
                left = self.basis_mul(u1, v1)
                right = self.basis_mul(u2, v2)
                for w1, c1 in left.items():
                    c1c = F.r_mul(c, c1)
                    for w2, c2 in right.items():
                        _acc(F, out, (w1, w2), F.r_mul(c1c, c2))
        return out

    @cached_property
    def delta_x(self) -> dict:
        e = self.pres.identity_exps
        one = self.F.one_raw
        return {((e, 1), (self.a_exps, 0)): one, ((e, 0), (e, 1)): one}

    def delta_xpow(self, i: int) -> dict:
        lst = self.delta_xpow_list
        while len(lst) <= i:
            lst.append(self.tensor_mul(lst[-1], self.delta_x))
        return lst[i]

    @cached_property
    def delta_xpow_list(self) -> list:
        e = self.pres.identity_exps
        return [{((e, 0), (e, 0)): self.F.one_raw}]

    def comul_basis(self, u: Label) -> dict:
        g, i = u
        F, G = self.F, self.G
        out: dict = {}
        for ((k1, e1), (k2, e2)), c in self.delta_xpow(i).items():
            _acc(F, out, ((G.mul_raw(g, k1), e1), (G.mul_raw(g, k2), e2)), c)
        return out

    def comul(self, A: dict) -> dict:
        F = self.F
        out: dict = {}
        for u, c in A.items():
            for w, cw in self.comul_basis(u).items():
                _acc(F, out, w, F.r_mul(c, cw))
        return out

    def counit(self, A: dict):
        F = self.F
        total = F.zero_raw
        for (g, i), c in A.items():
            if i == 0:
                total = F.r_add(total, c)
        return total

    @cached_property
    def s_x(self) -> dict:
        # S(x) = -x a^-1
        F, G = self.F, self.G
        a_inv = G.pow_raw(self.a_exps, -1)
        e = self.pres.identity_exps
        return self.mul({(e, 1): F.r_neg(F.one_raw)}, {(a_inv, 0): F.one_raw})

    @cached_property
    def s_xpow_list(self) -> list:
        e = self.pres.identity_exps
        return [{(e, 0): self.F.one_raw}]

    def antipode_basis(self, u: Label) -> dict:
        g, i = u
        lst = self.s_xpow_list
        while len(lst) <= i:
            lst.append(self.mul(self.s_x, lst[-1]))
        # S(g x^i) = S(x)^i S(g)
        ginv = self.G.pow_raw(g, -1)
        return self.mul(lst[i], {(ginv, 0): self.F.one_raw})

    def antipode(self, A: dict) -> dict:
        F = self.F
        out: dict = {}
        for u, c in A.items():
            for w, cw in self.antipode_basis(u).items():
                _acc(F, out, w, F.r_mul(c, cw))
        return out


class HopfElement:
    __slots__ = ("pres", "terms")

    def __init__(self, pres: HopfPresentation, terms: dict):
        self.pres = pres
        self.terms = terms

    def _same(self, other: "HopfElement"):
        if other.pres is not self.pres:
            raise PresentationError("elements from different presentations")

    def __add__(self, other):
        if isinstance(other, HopfElement):
            self._same(other)
            F = self.pres.field
            out = dict(self.terms)
            for k, v in other.terms.items():
                _acc(F, out, k, v)
            return HopfElement(self.pres, out)
        return self + self.pres.one * other

    __radd__ = __add__

    def __neg__(self):
        F = self.pres.field
        return HopfElement(self.pres, {k: F.r_neg(v) for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, HopfElement):
            self._same(other)
            return HopfElement(self.pres, self.pres._arith.mul(self.terms, other.terms))
        F = self.pres.field
        c = F(other).raw
        return HopfElement(self.pres, _clean(F, {k: F.r_mul(v, c) for k, v in self.terms.items()}))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int):
        out = self.pres.one
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, HopfElement):
            return NotImplemented
        return self.pres is other.pres and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, g, i: int) -> Scalar:
        exps = g.exps if isinstance(g, GroupElement) else tuple(g)
        return self.pres.field.scalar(self.terms.get((exps, i), self.pres.field.zero_raw))

    @property
    def degree(self) -> int:
        return max((i for (_, i) in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][1], kv[0][0]))

    def __repr__(self):
        return format_terms(self.pres, self.terms)

    def to_json(self):
        F = self.pres.field
        return [[F.format(c), list(g), i] for (g, i), c in self.sorted_terms()]


class TensorElement:
    __slots__ = ("pres", "terms")

    def __init__(self, pres: HopfPresentation, terms: dict):
        self.pres = pres
        self.terms = terms

    @classmethod
    def pure(cls, u: HopfElement, v: HopfElement) -> "TensorElement":
        F = u.pres.field
        out: dict = {}
        for k1, c1 in u.terms.items():
            for k2, c2 in v.terms.items():
                _acc(F, out, (k1, k2), F.r_mul(c1, c2))
        return cls(u.pres, out)

    def __add__(self, other: "TensorElement"):
        F = self.pres.field
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(F, out, k, v)
        return TensorElement(self.pres, out)

    def __neg__(self):
        F = self.pres.field
        return TensorElement(self.pres, {k: F.r_neg(v) for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return TensorElement(self.pres, self.pres._arith.tensor_mul(self.terms, other.terms))
        F = self.pres.field
        c = F(other).raw
        return TensorElement(self.pres, _clean(F, {k: F.r_mul(v, c) for k, v in self.terms.items()}))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.pres is other.pres and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, left: Label, right: Label) -> Scalar:
        F = self.pres.field
        return F.scalar(self.terms.get((left, right), F.zero_raw))

    def __repr__(self):
        F = self.pres.field
        if not self.terms:
            return "0"
        parts = []
        for (u, v), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][0][1], -kv[0][1][1], kv[0])):
            parts.append(f"({F.format(c)})*{_mono(self.pres, *u)} (x) {_mono(self.pres, *v)}")
        return " + ".join(parts)


def _mono(pres: HopfPresentation, g: tuple, i: int) -> str:
    parts = []
    if any(g):
        if len(g) == 1:
            parts.append(f"g^{g[0]}" if g[0] != 1 else "g")
        else:
            parts.append("g" + str(list(g)))
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    return "*".join(parts) or "1"


def format_terms(pres: HopfPresentation, terms: dict) -> str:
    F = pres.field
    if not terms:
        return "0"
    out = []
    for (g, i), c in sorted(terms.items(), key=lambda kv: (-kv[0][1], kv[0][0])):
        mono = _mono(pres, g, i)
        text = F.format(c)
        if " " in text:
            text = f"({text})"
        out.append(mono if text == "1" else f"{text}*{mono}")
    return " + ".join(out)


# functional API ------------------------------------------------------------


def he_mul(u: HopfElement, v: HopfElement) -> HopfElement:
    return u * v


def he_comul(u: HopfElement) -> TensorElement:
    return TensorElement(u.pres, u.pres._arith.comul(u.terms))


def he_counit(u: HopfElement) -> Scalar:
    return u.pres.field.scalar(u.pres._arith.counit(u.terms))


def he_antipode(u: HopfElement) -> HopfElement:
    return HopfElement(u.pres, u.pres._arith.antipode(u.terms))
