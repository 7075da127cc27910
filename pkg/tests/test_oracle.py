from collections import Counter

import pytest

from hopfore.exactnum import UniPoly
from hopfore.exactnum.linalg import same_subspace
from hopfore.grouprep import Character, CharacterCoset
from hopfore.modanalysis import classify, radical, socle
from hopfore.oracle import (
    OracleBudgetExceeded,
    OracleError,
    oracle_composition_series,
    oracle_cyclic_submodules,
    oracle_radical,
    oracle_socle,
    oracle_split,
    vector_count,
)
from hopfore.weightmod import (
    Block,
    Simple1,
    make_block,
    make_serial,
    mod_direct_sum_all,
    mod_scramble,
    mod_tensor,
)


def lam_of(H, v):
    return Character(H.group, H.field, [v])


def test_serial_lattice_is_chain(inst_a):
    M = mod_scramble(make_serial(inst_a, lam_of(inst_a, 3), 6), 2)
    lat = oracle_cyclic_submodules(M)
    assert lat.is_chain(inst_a.field)
    assert lat.dims() == list(range(7))


def test_direct_sum_is_not_chain(inst_a):
    H = inst_a
    M = mod_direct_sum_all([make_serial(H, lam_of(H, 3), 2), make_serial(H, lam_of(H, 3), 2)])
    lat = oracle_cyclic_submodules(M)
    assert not lat.is_chain(H.field)
    assert len(lat.minimal) == 6  # projective line over F_5 in the socle


def test_radical_socle_agree(inst_a):
    H = inst_a
    F = H.field
    y = UniPoly.gen(F)
    M = mod_direct_sum_all([make_serial(H, lam_of(H, 1), 3), make_block(H, lam_of(H, 2), y + 1, 2)])
    M = mod_scramble(M, 5)
    assert same_subspace(F, oracle_socle(M), socle(M).basis)
    assert same_subspace(F, oracle_radical(M), radical(M).basis)


def test_composition_series(inst_a):
    H = inst_a
    M = make_serial(H, lam_of(H, 1), 3)
    layers = oracle_composition_series(M)
    # bottom is the last ladder weight
    assert layers == [[Simple1(lam_of(H, 4))], [Simple1(lam_of(H, 2))], [Simple1(lam_of(H, 1))]]


def test_budget(inst_a):
    M = make_serial(inst_a, lam_of(inst_a, 1), 8)
    assert vector_count(M) > 10
    with pytest.raises(OracleBudgetExceeded):
        oracle_cyclic_submodules(M, budget=10)


def test_infinite_field_rejected(inst_c):
    F = inst_c.field
    M = make_serial(inst_c, Character(inst_c.group, F, [F.one]), 2)
    with pytest.raises(OracleError):
        oracle_socle(M)


def test_split_blocks(inst_b_ambient):
    H = inst_b_ambient
    y = UniPoly.gen(H.field)
    A = make_block(H, lam_of(H, 3), y - 2)
    B = make_block(H, lam_of(H, 5), y - 7)
    sp = oracle_split(mod_tensor(A, B))
    assert sp.block_dims() == [8] * 8
    assert sp.provenance == "oracle"


def test_split_matches_classify(inst_a):
    H = inst_a
    y = UniPoly.gen(H.field)
    M = mod_direct_sum_all([
        make_serial(H, lam_of(H, 3), 3),
        make_serial(H, lam_of(H, 3), 3),
        make_block(H, lam_of(H, 1), y ** 2 + 2),
    ])
    M = mod_scramble(M, 9)
    sp = oracle_split(M)
    assert sorted(sp.block_dims()) == sorted(s.columns.shape[1] for s in classify(M).summands)
    assert Counter(classify(M).label_multiset()) == Counter({
        Block(CharacterCoset(lam_of(H, 1), H.chi), y ** 2 + 2): 1,
        classify(make_serial(H, lam_of(H, 3), 3)).labels[0][0]: 2,
    })
