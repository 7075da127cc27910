"""Skew-primitive elements and the rank of the first coradical layer."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..exactnum import rref
from ..exactnum.linalg import nullspace
from .algebra import HopfElement, HopfPresentation, _acc


def _labels_desc(pres: HopfPresentation, degree_cap: int) -> list:
    """Basis labels ordered by degree descending, then group exponents."""
    labs = pres.basis_labels(degree_cap)
    return sorted(labs, key=lambda lab: (-lab[1], lab[0]))


def skew_primitive_space(pres: HopfPresentation, g, degree_cap: int) -> list[HopfElement]:
    """Basis of {z : Delta(z) = z (x) g + 1 (x) z} inside the span of h x^i, i <= degree_cap.

    The basis is in reduced echelon form with respect to the degree-descending
    monomial order, so each vector leads with its top-degree monomial.
    """
    if degree_cap < 1:
        raise ValueError("degree cap must be >= 1")
    F = pres.field
    A = pres._arith
    gexps = g.exps if hasattr(g, "exps") else pres.group.element(g).exps
    e = pres.identity_exps
    one = F.one_raw
    cols = _labels_desc(pres, degree_cap)
    images = []
    rows: dict = {}
    for lab in cols:
        img = dict(A.comul_basis(lab))
        _acc(F, img, (lab, (gexps, 0)), F.r_neg(one))
        _acc(F, img, ((e, 0), lab), F.r_neg(one))
        images.append(img)
        for key in img:
            if key not in rows:
                rows[key] = len(rows)
    M = F.zeros((len(rows), len(cols)))
    for j, img in enumerate(images):
        for key, c in img.items():
            M[rows[key], j] = c
    K = nullspace(F, M)
    if K.shape[1] == 0:
        return []
    R, piv = rref(F, K.T.copy())
    out = []
    for r in range(len(piv)):
        terms = {}
        for j, lab in enumerate(cols):
            v = F._raw(R[r, j])
            if not F.r_is_zero(v):
                terms[lab] = v
        out.append(HopfElement(pres, terms))
    return out


@dataclass
class Prediction:
    rank: str  # "1", "2" or "infinite"
    pairs: set  # {(gexps, degree)} predicted up to the cap
    explanation: str


def predicted_primitives(pres: HopfPresentation, degree_cap: int) -> Prediction:
    """Theoretical (g, degree) pairs of nontrivial skew-primitives up to the cap, and the rank."""
    F = pres.field
    a = pres.a
    p = F.characteristic
    D = degree_cap

    def pair(d):
        return ((a ** d).exps, d)

    if pres.case == "Case3":
        pairs = {pair(1)}
        r = 1
        while p and p ** r <= D:
            pairs.add(pair(p ** r))
            r += 1
        return Prediction("infinite", pairs, "chi(a) = 1, alpha(a) != 0: x and x^(p^r) - x^(p^(r-1)), r >= 1")
    q = pres.q
    if q.is_one():
        if p == 0:
            return Prediction("1", {pair(1)}, "q = 1 in characteristic 0: only x")
        pairs = set()
        r = 0
        while p ** r <= D:
            pairs.add(pair(p ** r))
            r += 1
        return Prediction("infinite", pairs, "q = 1 in characteristic p: x^(p^r), r >= 0")
    N = F.multiplicative_order(q)
    if N is None:
        return Prediction("1", {pair(1)}, "q is not a root of unity: only x")
    if p == 0:
        pairs = {pair(1)}
        if N <= D:
            pairs.add(pair(N))
        return Prediction("2", pairs, f"q is a primitive root of unity of order {N} in characteristic 0: x and x^{N}")
    pairs = {pair(1)}
    r = 0
    while N * p ** r <= D:
        pairs.add(pair(N * p ** r))
        r += 1
    return Prediction("infinite", pairs, f"q has order {N} in characteristic {p}: x and x^({N} p^r), r >= 0")


@dataclass
class RankReport:
    degree_cap: int
    rank: str
    primitive_degrees: list[int]
    h1_degrees: list[int]
    found: list[tuple[tuple, int]]
    predicted: list[tuple[tuple, int]]
    witnesses: dict = field(default_factory=dict)
    explanation: str = ""

    @property
    def agrees(self) -> bool:
        return self.found == self.predicted

    def to_json(self) -> dict:
        return {
            "degree_cap": self.degree_cap,
            "rank": self.rank,
            "primitive_degrees": self.primitive_degrees,
            "h1_degrees": self.h1_degrees,
            "found": [{"g": list(g), "degree": d} for g, d in self.found],
            "predicted": [{"g": list(g), "degree": d} for g, d in self.predicted],
            "agrees": self.agrees,
            "explanation": self.explanation,
            "witnesses": self.witnesses,
        }


def rank_report(pres: HopfPresentation, degree_cap: int) -> RankReport:
    """Scan all g = a^j for nontrivial skew-primitives up to the cap and compare with the prediction."""
    if pres.quotient.kind != "none":
        raise ValueError("rank_report needs the unquotiented algebra")
    a = pres.a
    found = set()
    witnesses = {}
    seen = set()
    for j in range(a.order):
        g = a ** j
        if g.exps in seen:
            continue
        seen.add(g.exps)
        for z in skew_primitive_space(pres, g, degree_cap):
            d = z.degree
            if d >= 1:
                found.add((g.exps, d))
                witnesses[f"{list(g.exps)}:{d}"] = repr(z)
    pred = predicted_primitives(pres, degree_cap)
    degrees = sorted({d for _, d in found})
    return RankReport(
        degree_cap=degree_cap,
        rank=pred.rank,
        primitive_degrees=degrees,
        h1_degrees=[0] + degrees,
        found=sorted(found, key=lambda t: (t[1], t[0])),
        predicted=sorted(pred.pairs, key=lambda t: (t[1], t[0])),
        witnesses=dict(sorted(witnesses.items())),
        explanation=pred.explanation,
    )


def q_closed_form_comul(pres: HopfPresentation, n: int):
    """Sum_l binom(n,l)_q x^(n-l) (x) a^(n-l) x^l, as a TensorElement (alpha = 0 only)."""
    from ..exactnum import q_binomial_row
    from .algebra import TensorElement

    F = pres.field
    G = pres.group
    e = pres.identity_exps
    row = q_binomial_row(n, pres.q)
    terms: dict = {}
    for l in range(n + 1):
        c = row[l].raw
        ak = G.pow_raw(pres.a.exps, n - l)
        _acc(F, terms, ((e, n - l), (ak, l)), c)
    return TensorElement(pres, terms)
