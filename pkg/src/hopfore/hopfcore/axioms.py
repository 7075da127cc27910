"""Mechanical check of the Hopf algebra axioms on a truncated basis."""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import HopfPresentation, _acc, format_terms


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, witness: str):
        if len(self.failures) < 20:
            self.failures.append(witness)
        else:
            self.failures[-1] = "... (further failures truncated)"


@dataclass
class AxiomReport:
    degree_cap: int
    basis_range: str
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "degree_cap": self.degree_cap,
            "basis_range": self.basis_range,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "checked": c.checked, "passed": c.passed, "failures": c.failures}
                for c in self.checks
            ],
        }


def _tensor_str(pres, terms: dict) -> str:
    if not terms:
        return "0"
    parts = []
    for key, c in sorted(terms.items(), key=repr)[:6]:
        mons = " (x) ".join(format_terms(pres, {k: pres.field.one_raw}) for k in key)
        parts.append(f"({pres.field.format(c)})*{mons}")
    more = " + ..." if len(terms) > 6 else ""
    return " + ".join(parts) + more


def _diff(F, A: dict, B: dict) -> dict:
    out = dict(A)
    for k, v in B.items():
        _acc(F, out, k, F.r_neg(v))
    return out


def verify_hopf_axioms(pres: HopfPresentation, degree_cap: int) -> AxiomReport:
    """Check the Hopf identities on g x^i, i <= degree_cap, g in generators + {1, a}.

    Also checks that the relations are compatible with Delta, eps and S
    (Delta multiplicative on generator products, associativity on generator
    triples) and, for quotients, that x^n - c spans a Hopf ideal.
    """
    if degree_cap < 1:
        raise ValueError("degree cap must be >= 1")
    F = pres.field
    A = pres._arith
    G = pres.group
    e = pres.identity_exps
    top = degree_cap if pres.quotient.kind == "none" else min(degree_cap, pres.quotient.n - 1)
    gs = []
    for g in [G.identity, *G.generators(), pres.a]:
        if g.exps not in gs:
            gs.append(g.exps)
    labels = [(g, i) for i in range(top + 1) for g in gs]
    one = F.one_raw

    coassoc = CheckResult("coassociativity")
    counit = CheckResult("counit")
    antipode = CheckResult("antipode")
    for u in labels:
        d = A.comul_basis(u)
        # (Delta (x) id) Delta  vs  (id (x) Delta) Delta
        left: dict = {}
        right: dict = {}
        for (p, q), c in d.items():
            for (p1, p2), c1 in A.comul_basis(p).items():
                _acc(F, left, (p1, p2, q), F.r_mul(c, c1))
            for (q1, q2), c2 in A.comul_basis(q).items():
                _acc(F, right, (p, q1, q2), F.r_mul(c, c2))
        coassoc.checked += 1
        if left != right:
            coassoc.fail(f"{format_terms(pres, {u: one})}: difference {_tensor_str(pres, _diff(F, left, right))}")
        # counit
        lc: dict = {}
        rc: dict = {}
        for (p, q), c in d.items():
            if p[1] == 0:
                _acc(F, lc, q, c)
            if q[1] == 0:
                _acc(F, rc, p, c)
        counit.checked += 1
        if lc != {u: one} or rc != {u: one}:
            counit.fail(f"{format_terms(pres, {u: one})}: (eps(x)id)Delta = {format_terms(pres, lc)}, "
                        f"(id(x)eps)Delta = {format_terms(pres, rc)}")
        # antipode
        eps_u = {(e, 0): one} if u[1] == 0 else {}
        ls: dict = {}
        rs: dict = {}
        for (p, q), c in d.items():
            for w, cw in A.mul(A.antipode_basis(p), {q: one}).items():
                _acc(F, ls, w, F.r_mul(c, cw))
            for w, cw in A.mul({p: one}, A.antipode_basis(q)).items():
                _acc(F, rs, w, F.r_mul(c, cw))
        antipode.checked += 1
        if ls != eps_u or rs != eps_u:
            antipode.fail(f"{format_terms(pres, {u: one})}: m(S(x)id)Delta = {format_terms(pres, ls)}, "
                          f"m(id(x)S)Delta = {format_terms(pres, rs)}")

    gens = [(g, 0) for g in gs if any(g)] + [(e, 1)]
    # Delta is an algebra map on products of generators, and on basis * generator
    mult = CheckResult("comultiplication is multiplicative")
    pairs = [(u, v) for u in gens for v in gens] + [(u, v) for u in labels for v in gens]
    for u, v in pairs:
        lhs = A.comul(A.basis_mul(u, v))
        rhs = A.tensor_mul(A.comul_basis(u), A.comul_basis(v))
        mult.checked += 1
        if lhs != rhs:
            mult.fail(f"Delta({format_terms(pres, {u: one})} * {format_terms(pres, {v: one})}): "
                      f"difference {_tensor_str(pres, _diff(F, lhs, rhs))}")

    assoc = CheckResult("associativity")
    small = [lab for lab in labels if lab[1] <= min(top, 3)]
    for u in small:
        for v in gens:
            for w in gens:
                lhs = A.mul(A.basis_mul(u, v), {w: one})
                rhs = A.mul({u: one}, A.basis_mul(v, w))
                assoc.checked += 1
                if lhs != rhs:
                    assoc.fail(f"({format_terms(pres, {u: one})} * {format_terms(pres, {v: one})}) * "
                               f"{format_terms(pres, {w: one})}: difference {format_terms(pres, _diff(F, lhs, rhs))}")
    # group relations g_i^{n_i} = 1 must be compatible with x: x * g^n = g^n * x
    for i, n in enumerate(G.invariants):
        ex = [0] * G.rank
        ex[i] = 1
        gi = (tuple(ex), 0)
        lhs = {(e, 1): one}
        for _ in range(n):
            lhs = A.mul(lhs, {gi: one})
        assoc.checked += 1
        if lhs != {(e, 1): one}:
            assoc.fail(f"x * g_{i}^{n} != x: {format_terms(pres, lhs)}")

    checks = [coassoc, counit, antipode, mult, assoc]
    if pres.quotient.kind != "none":
        checks.append(_check_ideal(pres))
    rng = f"g x^i, g in {{1, generators, a}}, 0 <= i <= {top}"
    return AxiomReport(degree_cap, rng, checks)


def _check_ideal(pres: HopfPresentation) -> CheckResult:
    """x^n - c generates a Hopf ideal: compare Delta(x)^n, eps, S(x)^n with the images of c."""
    res = CheckResult("quotient is a Hopf ideal")
    A = pres._arith
    F = pres.field
    n = pres.quotient.n
    e = pres.identity_exps
    one = F.one_raw
    # c = x^n in normal form (reduction of the free monomial)
    c = A.reduce({(e, n): one})
    dn = A.delta_xpow(n)  # product of reduced factors, so it lives in H' (x) H'
    res.checked += 1
    if dn != A.comul(c):
        res.fail(f"Delta(x)^{n} != Delta(c): difference {_tensor_str(pres, _diff(F, dn, A.comul(c)))}")
    res.checked += 1
    if not F.r_is_zero(A.counit(c)):
        res.fail(f"eps(c) = {F.format(A.counit(c))} != 0")
    sx = A.s_x
    sn = {(e, 0): one}
    for _ in range(n):
        sn = A.mul(sx, sn)
    res.checked += 1
    if sn != A.antipode(c):
        res.fail(f"S(x)^{n} = {format_terms(pres, sn)} != S(c) = {format_terms(pres, A.antipode(c))}")
    return res

