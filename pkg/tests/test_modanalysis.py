from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfore.exactnum import GF, UniPoly, inverse
from hopfore.grouprep import Character, CharacterCoset
from hopfore.modanalysis import (
    canonical_epi,
    classify,
    coset_blocks,
    hom_space,
    is_homomorphism,
    is_indecomposable,
    is_simple,
    is_split_epi,
    predicted_tensor,
    primary_decomposition,
    projectives_report,
    radical,
    series,
    simple_census,
    socle,
)
from hopfore.weightmod import (
    Block,
    Serial,
    Simple1,
    make_block,
    make_serial,
    make_simple_onedim,
    mod_direct_sum_all,
    mod_scramble,
    mod_tensor,
    module_from_label,
)

from conftest import build
from labelgen import random_sum


def lam_of(H, *v):
    return Character(H.group, H.field, list(v))


def test_coset_blocks(inst_a2):
    H = inst_a2
    M = mod_direct_sum_all([make_serial(H, lam_of(H, 1, 1), 2), make_serial(H, lam_of(H, 1, 4), 3)])
    blocks = coset_blocks(M)
    assert sorted(len(idx) for _, idx in blocks) == [2, 3]


def test_primary_projectors(inst_a):
    H = inst_a
    F = H.field
    y = UniPoly.gen(F)
    M = mod_direct_sum_all([make_serial(H, lam_of(H, 3), 3), make_block(H, lam_of(H, 1), y + 1, 2)])
    M = mod_scramble(M, 7)
    comps = primary_decomposition(M)
    total = F.zeros((M.dim, M.dim))
    for c in comps:
        E = c.projector
        assert F.array_equal(F.matmul(E, E), E)
        assert F.array_equal(F.matmul(E, M.X), F.matmul(M.X, E))
        total = F.add(total, E)
    assert F.array_equal(total, F.eye(M.dim))
    assert sorted(c.dim for c in comps) == [3, 8]


@pytest.mark.parametrize("t", [1, 2, 4, 7])
def test_serial_series(inst_a, t):
    M = make_serial(inst_a, lam_of(inst_a, 2), t)
    rep = series(M)
    assert rep.radical_dims == list(range(t, -1, -1))
    assert rep.radical_length == rep.socle_length == t
    assert radical(M).dim == t - 1
    assert socle(M).dim == 1


def test_block_series(inst_a):
    H = inst_a
    y = UniPoly.gen(H.field)
    M = make_block(H, lam_of(H, 1), y ** 2 + 2, 2)
    rep = series(M)
    assert rep.radical_dims == [16, 8, 0]
    assert rep.radical_length == 2
    assert rep.radical_layers[0] == [(Block(CharacterCoset(lam_of(H, 1), H.chi), y ** 2 + 2, 1), 1)]


def test_is_simple(inst_a):
    H = inst_a
    y = UniPoly.gen(H.field)
    assert is_simple(make_simple_onedim(H, lam_of(H, 2)))
    assert not is_simple(make_serial(H, lam_of(H, 2), 2))
    assert is_simple(make_block(H, lam_of(H, 2), y + 1))
    assert not is_simple(make_block(H, lam_of(H, 2), y + 1, 2))
    assert is_indecomposable(make_block(H, lam_of(H, 2), y + 1, 2))
    assert not is_indecomposable(mod_direct_sum_all([make_serial(H, lam_of(H, 2), 2)] * 2))


def test_classify_serial_wraparound(inst_a):
    # a serial longer than s passes through the same weight twice
    M = mod_scramble(make_serial(inst_a, lam_of(inst_a, 3), 9), 3)
    rep = classify(M)
    assert rep.labels == [(Serial(lam_of(inst_a, 3), 9), 1)]
    assert rep.provenance == "idempotent-split"


def test_classify_witness(inst_a):
    H = inst_a
    F = H.field
    y = UniPoly.gen(F)
    M = mod_direct_sum_all([make_serial(H, lam_of(H, 3), 3), make_block(H, lam_of(H, 1), y + 1)])
    S = mod_scramble(M, 11)
    rep = classify(S)
    P = rep.witness
    # P^-1 X P is block diagonal with the model matrices
    Y = F.matmul(inverse(F, P), F.matmul(S.X, P))
    start = 0
    for sm in rep.summands:
        model = sm.model(H)
        k = model.dim
        assert F.array_equal(Y[start:start + k, start:start + k], model.X)
        start += k
    assert rep.certificate["witness_conjugates_to_models"]


@given(st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_classify_scramble_invariant(seed):
    H = build(GF(5), [4], [2], [1])
    labels = random_sum(H, seed, 16)
    M = mod_direct_sum_all([module_from_label(H, lab) for lab in labels])
    rep = classify(mod_scramble(M, seed))
    assert rep.label_multiset() == Counter(labels)


def test_hom_space_dimensions(inst_a):
    H = inst_a
    y = UniPoly.gen(H.field)
    lam = lam_of(H, 3)
    V = make_serial(H, lam, 4)
    # |chi| = 4, so only the identity preserves weights and commutes with x
    homs = hom_space(V, V)
    assert all(is_homomorphism(V, V, h) for h in homs)
    assert len(homs) == 1
    B1 = make_block(H, lam, y + 1)
    B2 = make_block(H, lam * H.chi, y + 1)
    assert len(hom_space(B1, B2)) == 1
    assert hom_space(B1, make_block(H, lam, y + 2)) == []


def test_hom_quadratic_block_dimension(inst_a):
    # Hom between the two ladder models of one quadratic block has dimension deg f
    H = inst_a
    f = UniPoly.gen(H.field) ** 2 + 2
    lam = lam_of(H, 3)
    assert len(hom_space(make_block(H, lam, f), make_block(H, lam * H.chi, f))) == 2


def test_canonical_epi_not_split(inst_a4):
    H = inst_a4
    V = make_serial(H, lam_of(H, 1), 4)
    for t in range(1, 4):
        Vt = make_serial(H, lam_of(H, 1), t)
        phi = canonical_epi(V, t)
        assert is_homomorphism(V, Vt, phi)
        assert not is_split_epi(V, Vt, phi)
    assert is_split_epi(V, V, canonical_epi(V, 4))


def test_predicted_tensor_simple(inst_a):
    H = inst_a
    u, v = lam_of(H, 2), lam_of(H, 3)
    rep = predicted_tensor(H, Simple1(u), Simple1(v))
    assert rep.labels == [(Simple1(u * v), 1)]


def test_predicted_tensor_blocks(inst_b_ambient):
    H = inst_b_ambient
    F = H.field
    y = UniPoly.gen(F)
    A = Block(CharacterCoset(lam_of(H, 3), H.chi), y - 2)
    B = Block(CharacterCoset(lam_of(H, 5), H.chi), y - 7)
    pred = predicted_tensor(H, A, B)
    M = mod_tensor(module_from_label(H, A), module_from_label(H, B))
    assert classify(M).label_multiset() == pred.label_multiset()


def test_predicted_tensor_unsupported(inst_a):
    H = inst_a
    assert predicted_tensor(H, Serial(lam_of(H, 1), 2), Simple1(lam_of(H, 1))) is None


def test_census_b(inst_b):
    c = simple_census(inst_b)
    assert len(c.one_dim) == 8
    assert len(c.blocks) == 1
    assert c.blocks[0].dimension(inst_b.s) == 8


def test_census_a4(inst_a4):
    c = simple_census(inst_a4)
    assert len(c.one_dim) == 4 and c.blocks == []


def test_projectives_a4(inst_a4):
    rep = projectives_report(inst_a4)
    assert len(rep) == 4
    assert all(e.cover == Serial(e.simple.lam, 4) for e in rep)
