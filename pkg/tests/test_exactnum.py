import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfore.exactnum import (
    GF,
    FieldError,
    GFq,
    IncompleteFactorization,
    QZeta,
    UniPoly,
    factor,
    format_poly,
    inverse,
    irreducible_polys,
    is_irreducible,
    minimal_polynomial,
    nullspace,
    parse_field,
    poly_gcd,
    poly_xgcd,
    q_binomial,
    q_binomial_row,
    rank,
    rref,
    solve,
)
from hopfore.exactnum.linalg import (
    InconsistentSystem,
    SingularMatrix,
    canonical_basis,
    complement_columns,
    same_subspace,
    subspace_intersection,
    vector_minimal_polynomial,
)

from reference import gaussian_mod_p, irreducible_count, mult_order, units_of_order_dividing

PRIMES = [2, 3, 5, 7, 17]


# scalars -----------------------------------------------------------------


@given(st.sampled_from(PRIMES), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_prime_field_ring_axioms(p, a, b, c):
    F = GF(p)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == F.zero
    assert (x + y).raw == (a + b) % p


@given(st.sampled_from(PRIMES), st.integers(1, 1000))
def test_prime_field_inverse(p, a):
    F = GF(p)
    if a % p == 0:
        with pytest.raises(ZeroDivisionError):
            F(a).inverse()
    else:
        assert F(a) * F(a).inverse() == F.one


def test_extension_field_arith():
    F = GFq(2, [1, 1, 1])  # t^2 + t + 1
    t = F.generator
    assert t * t == t + 1
    assert t ** 3 == F.one
    assert F.order == 4
    assert sorted(F.multiplicative_order(x) for x in F.elements() if not x.is_zero()) == [1, 3, 3]


def test_extension_field_bad_modulus():
    with pytest.raises(FieldError):
        GFq(4, [1, 1, 1])


def test_cyclotomic_arith():
    F = QZeta(3)
    z = F.generator
    assert z ** 3 == F.one
    assert z * z + z + 1 == F.zero
    assert F.multiplicative_order(z) == 3
    assert F.multiplicative_order(F(2)) is None
    assert F.multiplicative_order(-z) == 6


@pytest.mark.parametrize("p,n", [(5, 4), (17, 8), (17, 16), (5, 2), (7, 3)])
def test_roots_of_unity_prime(p, n):
    F = GF(p)
    assert [r.raw for r in F.roots_of_unity(n)] == units_of_order_dividing(n, p)
    w = F.primitive_root_of_unity(n)
    assert mult_order(w.raw, p) == n


def test_primitive_root_missing():
    with pytest.raises(FieldError):
        GF(5).primitive_root_of_unity(3)


def test_parse_field():
    assert parse_field("Fp(5)") == GF(5)
    assert parse_field("QZeta(3)") == QZeta(3)
    assert parse_field("Fq(2, y^2+y+1)").order == 4
    with pytest.raises(FieldError):
        parse_field("Fp(6)")
    with pytest.raises(FieldError):
        parse_field("nonsense")


# polynomials ---------------------------------------------------------------

coeffs = st.lists(st.integers(0, 4), min_size=1, max_size=7)


@given(coeffs, coeffs)
def test_poly_divmod(a, b):
    F = GF(5)
    f, g = UniPoly(F, a), UniPoly(F, b)
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


@given(coeffs, coeffs)
def test_xgcd_bezout(a, b):
    F = GF(5)
    f, g = UniPoly(F, a), UniPoly(F, b)
    if f.is_zero() and g.is_zero():
        return
    d, u, v = poly_xgcd(f, g)
    assert u * f + v * g == d
    assert d == poly_gcd(f, g)
    assert (f % d).is_zero() and (g % d).is_zero()


def test_poly_parse_and_format():
    F = GF(5)
    f = UniPoly.parse(F, "y^2 + 3*y + 1")
    assert format_poly(f) == "y^2 + 3*y + 1"
    assert f.coefficients == [F(1), F(3), F(1)]
    Q = QZeta(3)
    g = UniPoly.parse(Q, "y - zeta")
    assert g(Q.generator) == Q.zero


@given(st.lists(st.integers(0, 4), min_size=2, max_size=9))
@settings(max_examples=60)
def test_factor_reconstructs_finite(c):
    F = GF(5)
    f = UniPoly(F, c)
    if f.degree < 1:
        return
    fac = factor(f)
    assert fac.expand() == f
    for g, e in fac.factors:
        assert g.is_monic() and is_irreducible(g) and e >= 1


def test_factor_char2_extension():
    F = GFq(2, [1, 1, 1])
    y = UniPoly.gen(F)
    f = (y ** 2 + y + F.generator) * (y + 1) ** 3
    fac = factor(f)
    assert fac.expand() == f
    assert any(e == 3 for _, e in fac.factors)


def test_factor_cyclotomic():
    Q = QZeta(3)
    y = UniPoly.gen(Q)
    f = y ** 2 - 4
    fac = factor(f)
    assert sorted(g.degree for g, _ in fac.factors) == [1, 1]
    assert fac.expand() == f
    # y^2 + y + 1 splits over Q(zeta_3)
    assert len(factor(y ** 2 + y + 1).factors) == 2
    # y^2 - 2 stays irreducible
    assert len(factor(y ** 2 - 2).factors) == 1


@pytest.mark.parametrize("q,d", [(5, 1), (5, 2), (5, 3), (2, 4), (17, 2)])
def test_irreducible_enumeration_count(q, d):
    F = GF(q)
    got = irreducible_polys(F, d, exclude_y=False)
    assert len(got) == irreducible_count(q, d)


def test_incomplete_factorization_is_an_error_type():
    assert issubclass(IncompleteFactorization, ArithmeticError)


# linear algebra ------------------------------------------------------------

mats = st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), min_size=1, max_size=5)


@given(mats)
def test_rank_nullity(rows):
    F = GF(5)
    A = F.array(rows)
    K = nullspace(F, A)
    assert rank(F, A) + K.shape[1] == A.shape[1]
    assert F.all_zero(F.matmul(A, K))


@given(mats)
def test_rref_idempotent(rows):
    F = GF(5)
    R, piv = rref(F, F.array(rows))
    R2, piv2 = rref(F, R)
    assert F.array_equal(R, R2) and piv == piv2


@given(st.lists(st.integers(0, 6), min_size=9, max_size=9))
def test_inverse_or_singular(vals):
    F = GF(7)
    A = F.array(np.array(vals).reshape(3, 3).tolist())
    if rank(F, A) == 3:
        assert F.array_equal(F.matmul(A, inverse(F, A)), F.eye(3))
    else:
        with pytest.raises(SingularMatrix):
            inverse(F, A)


def test_solve_inconsistent():
    F = GF(5)
    A = F.array([[1, 0], [0, 0]])
    with pytest.raises(InconsistentSystem):
        solve(F, A, F.array([[0], [1]]))


def test_subspace_ops():
    F = GF(5)
    U = F.array([[1, 0], [0, 1], [0, 0]])
    V = F.array([[0, 0], [1, 0], [0, 1]])
    I = subspace_intersection(F, U, V)
    assert I.shape[1] == 1
    assert same_subspace(F, I, F.array([[0], [3], [0]]))
    C = complement_columns(F, I, U)
    assert C.shape[1] == 1
    assert canonical_basis(F, U).shape == (3, 2)


def test_minimal_polynomial_companion():
    F = GF(5)
    y = UniPoly.gen(F)
    f = y ** 3 + 2 * y + 1
    C = F.zeros((3, 3))
    C[1, 0] = C[2, 1] = 1
    for j, c in enumerate(f.coefficients[:3]):
        C[j, 2] = (-c).raw
    assert minimal_polynomial(F, C) == f
    assert f.eval_matrix(C).any() == False  # noqa: E712
    v = F.zeros((3, 1))
    v[0, 0] = 1
    assert vector_minimal_polynomial(F, C, v) == f


def test_minimal_polynomial_cyclotomic_matrix():
    Q = QZeta(3)
    z = Q.generator
    A = Q.array([[z, 0], [0, z * z]])
    y = UniPoly.gen(Q)
    assert minimal_polynomial(Q, A) == y ** 2 + y + 1


# q-binomials ---------------------------------------------------------------


@pytest.mark.parametrize("p", [5, 17])
def test_q_binomial_matches_reference(p):
    F = GF(p)
    for q in range(1, p):
        for n in range(0, 7):
            row = q_binomial_row(n, F(q))
            for k in range(n + 1):
                assert row[k].raw == gaussian_mod_p(n, k, q, p)
                assert q_binomial(n, k, F(q)) == row[k]


def test_q_binomial_at_one_is_binomial():
    F = GF(17)
    from math import comb

    for n in range(8):
        for k in range(n + 1):
            assert q_binomial(n, k, F.one).raw == comb(n, k) % 17
