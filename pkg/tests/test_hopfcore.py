import pytest

from hopfore.exactnum import GF
from hopfore.hopfcore import (
    PresentationError,
    QuotientSpec,
    TensorElement,
    case_normalize,
    he_antipode,
    he_comul,
    he_counit,
    predicted_primitives,
    q_closed_form_comul,
    rank_report,
    skew_primitive_space,
    verify_hopf_axioms,
)

from conftest import build


def test_parameters(inst_a, inst_b, inst_c, inst_d):
    # tau = chi^-1, q = tau(a)
    assert inst_a.q.raw == 3 and inst_a.s == 4 and inst_a.case == "Case1"
    assert inst_b.q.raw == 9 and inst_b.s == 8
    assert inst_c.s == 3
    assert inst_d.case == "Case3"


def test_commutation_relation(inst_b_ambient):
    H = inst_b_ambient
    x, a = H.x, H.g(H.a)
    # x a = tau(a) a x when alpha = 0
    assert x * a == H.q * (a * x)


def test_commutation_with_alpha(inst_d):
    H = inst_d
    x, a = H.x, H.g(H.a)
    # chi trivial, alpha(a) = 1: x a = a x + a (1 - a)
    assert x * a == a * x + a * (H.one - a)


def test_delta_x_squared(inst_a):
    H = inst_a
    d = he_comul(H.x ** 2)
    e = H.identity_exps
    a = H.a.exps
    # middle coefficient of x (x) a x is 1 + q = 4 over F_5
    assert d.coefficient((e, 1), (a, 1)).raw == 4
    assert d == q_closed_form_comul(H, 2)


@pytest.mark.parametrize("n", range(1, 9))
def test_closed_form_comul(inst_b_ambient, n):
    H = inst_b_ambient
    assert he_comul(H.x ** n) == q_closed_form_comul(H, n)


def test_comul_multiplicative(inst_a):
    H = inst_a
    u = H.x * H.g(H.a) + 2 * H.x ** 2
    v = H.x ** 3 - H.g(H.a ** 3)
    assert he_comul(u * v) == he_comul(u) * he_comul(v)


def test_counit_and_antipode(inst_a):
    H = inst_a
    assert he_counit(H.x).is_zero()
    assert he_counit(H.g(H.a)).is_one()
    # S(x) S(a) = S(a x)
    a = H.g(H.a)
    assert he_antipode(a * H.x) == he_antipode(H.x) * he_antipode(a)


def test_power_central_rewrites(inst_b):
    H = inst_b
    a8 = H.g(H.a ** 8)
    assert H.x ** 8 == H.one - a8  # beta = 1
    assert H.x ** 9 == H.x * (H.one - a8)


def test_power_zero(inst_a4):
    assert (inst_a4.x ** 4).is_zero()


def test_bad_quotient_rejected():
    F = GF(5)
    with pytest.raises(PresentationError):
        # q = 3 has order 4, so x^3 is not skew-primitive
        build(F, [4], [2], [1], quotient=QuotientSpec.power_zero(3))


@pytest.mark.parametrize("fixture", ["inst_a", "inst_a4", "inst_b", "inst_c", "inst_d"])
def test_axioms(request, fixture):
    H = request.getfixturevalue(fixture)
    rep = verify_hopf_axioms(H, 5)
    assert rep.passed, rep.to_json()


def test_skew_primitives_at_a(inst_a):
    H = inst_a
    got = skew_primitive_space(H, H.a, 3)
    # span{x, 1 - a}
    assert len(got) == 2
    assert got[0].degree == 1
    assert any(z == H.one - H.g(H.a) or z == H.g(H.a) - H.one for z in got)


def test_instance_d_primitive():
    H = build(GF(5), [5], [1], [1], alpha=[1])
    a5 = H.a ** 5
    got = skew_primitive_space(H, a5, 5)
    top = [z for z in got if z.degree == 5]
    assert len(top) == 1
    z = top[0]
    assert z == H.x ** 5 - H.x
    d = he_comul(z)
    assert d == TensorElement.pure(z, H.g(a5)) + TensorElement.pure(H.one, z)


def test_rank_c(inst_c):
    rep = rank_report(inst_c, 7)
    assert rep.rank == "2"
    assert rep.primitive_degrees == [1, 3]
    assert rep.agrees


def test_rank_a(inst_a):
    rep = rank_report(inst_a, 20)
    assert rep.rank == "infinite"
    assert rep.primitive_degrees == [1, 4, 20]
    assert rep.agrees


def test_prediction_nonroot():
    H = build(GF(11), [10], [2], [1])
    pred = predicted_primitives(H, 9)
    assert pred.rank == "infinite"  # q has order 10 > cap
    assert {d for _, d in pred.pairs} == {1}


def test_case_normalize():
    H = build(GF(5), [4], [2], [1], alpha=[2])
    H2, norm = case_normalize(H)
    assert H2.alpha.is_zero()
    # the old generator, written in the new algebra, obeys the old relation
    X = norm.transport(H2)
    a = H2.g(H2.a)
    alpha_a = H.alpha(H.a)
    assert X * a == H2.q * (a * X) + (a * (H2.one - a)) * alpha_a
