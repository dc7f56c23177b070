from fractions import Fraction as F
from math import factorial

import pytest

from gorsimp.builder import ClassData
from gorsimp.classify import (
    classify,
    enumerate_data,
    partial_sequence_profile,
    verify_bijection,
)
from gorsimp.divisor_lattice import count_classes, strict_chains
from gorsimp.group_core import canonical_key, close_generators
from gorsimp.qz_arith import ModOneVector

E = frozenset()


def test_enumerate_examples():
    assert set(enumerate_data(4)) == {
        ClassData(1, (1, 4), (E,)),
        ClassData(1, (1, 2, 4), (E, E)),
        ClassData(1, (1, 2, 4), (E, frozenset({1}))),
    }
    assert sum(1 for d in enumerate_data(8) if d.chain == (1, 2, 4, 8)) == 6
    assert len(enumerate_data(2)) == 1


def test_subset_sequences_count_is_factorial():
    for s in range(1, 7):
        profile = partial_sequence_profile(s)
        assert sum(profile[s].values()) == factorial(s)
    for v in (16, 24, 32):
        for ch in strict_chains(v):
            n = sum(1 for d in enumerate_data(v) if d.chain == ch.terms)
            assert n == factorial(ch.length)


def test_classify_pq_patterns():
    res = classify(6, 1)
    assert res.total == 5 and len(res.classes) == 5

    def B(*parts):
        return ModOneVector.blocks(*[(F(a), n) for a, n in parts])

    def grp(*gens):
        N = max(len(g) for g in gens)
        return close_generators([g.pad(N - len(g)) for g in gens], N)

    expected = {
        canonical_key(grp(B(("1/6", 6)))),
        canonical_key(grp(B(("1/2", 2)), B((0, 2), ("1/3", 6)))),
        canonical_key(grp(B(("1/2", 2)), B(("1/6", 2), ("1/3", 5)))),
        canonical_key(grp(B(("1/3", 3)), B((0, 3), ("1/2", 6)))),
        canonical_key(grp(B(("1/3", 3)), B(("1/6", 3), ("1/2", 5)))),
    }
    assert {r.key for r in res.classes} == expected


def test_classify_examples():
    res = classify(8, 1)
    assert res.total == 11
    assert res.per_chain() == {(1, 2, 4, 8): 6, (1, 2, 8): 2, (1, 4, 8): 2, (1, 8): 1}
    res = classify(4, 3)
    assert res.total == 3
    for rec in res.classes:
        assert [i for i, h in enumerate(rec.hstar) if h] == [0, 3, 6, 9]
        assert sum(rec.hstar) == 4


def test_classify_generators_and_dimension():
    for rec in classify(12, 2).classes:
        assert rec.dimension == rec.N - 1
        assert len(rec.generators) == rec.data.s
        assert all(len(c) == rec.N for c in rec.generators)
        assert canonical_key(close_generators(rec.generators, rec.N)) == rec.key


def test_workers_do_not_change_result():
    a = classify(24, 1, workers=1)
    b = classify(24, 1, workers=3)
    assert [r.data for r in a.classes] == [r.data for r in b.classes]
    assert [r.key for r in a.classes] == [r.key for r in b.classes]


def test_verify_bijection_small():
    assert verify_bijection(2, 1).ok
    rep = verify_bijection(24, 2, permuted=True, seed=3)
    assert rep.ok and rep.checked == count_classes(24)


def test_classify_rejects_bad_arguments():
    with pytest.raises(ValueError):
        classify(1, 1)
    with pytest.raises(ValueError):
        classify(4, 0)


def test_hstar_palindromic():
    for k in (1, 2):
        for v in range(2, 25):
            for rec in classify(v, k).classes:
                top = (v - 1) * k
                h = list(rec.hstar)
                assert h[: top + 1] == h[top::-1] and not any(h[top + 1:])


def test_stream_matches_classify():
    from gorsimp.classify import stream_classes

    assert [r.key for r in stream_classes(16, 1)] == [r.key for r in classify(16, 1).classes]
