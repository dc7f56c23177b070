from fractions import Fraction as F

import pytest

from gorsimp.builder import (
    ClassData,
    MarkerSet,
    build_from_data,
    build_pairs,
    init_pair,
    step_pair,
    subset_sum_decompose,
)
from gorsimp.exceptions import InternalConsistencyError, InvalidClassData
from gorsimp.group_core import canonical_key, close_generators, is_type
from gorsimp.qz_arith import ModOneVector

E = frozenset()


def blocks(*parts):
    return ModOneVector.blocks(*[(F(a), n) for a, n in parts])


def test_init_pair():
    G, L = init_pair(2, 1)
    assert G.order == 2 and G.element(1) == blocks(("1/2", 2))
    assert len(L) == 1 and L.element(1).support == {0, 1}
    G, L = init_pair(3, 2)
    assert is_type(G, (3, 2)) and G.element(1) == blocks(("1/3", 6))
    with pytest.raises(ValueError):
        init_pair(1, 1)


def test_step_pair_examples():
    G, L = init_pair(2, 1)
    G2, L2 = step_pair(G, L, E, 2, 2)
    assert len(L2) == 2
    assert set(L2.steps) == {1, 2}
    assert L2.element(1) == blocks(("1/2", 2), (0, 4))
    assert L2.element(2) == blocks((0, 2), ("1/2", 4))
    assert G2.order == 4

    G3, L3 = step_pair(G, L, {1}, 2, 2)
    assert len(L3) == 1
    assert canonical_key(G3) == canonical_key(close_generators([blocks(("1/4", 2), ("1/2", 3))], 5))
    with pytest.raises(InvalidClassData):
        step_pair(G, L, {2}, 2, 2)


def test_p_cubed_generators():
    # chain 1<2<4<8, k=1
    pairs = build_pairs(ClassData(1, (1, 2, 4, 8), (E, frozenset({1}), frozenset({2}))))
    assert pairs[-1][2] == blocks(("1/8", 2), ("1/4", 3), ("1/2", 6))
    assert [G.order for G, _, _ in pairs] == [2, 4, 8]

    pairs = build_pairs(ClassData(1, (1, 2, 4, 8), (E, E, frozenset({1, 2}))))
    assert pairs[-1][2] == blocks(("1/4", 2), ("1/4", 4), ("1/2", 5))


def test_subset_sum_decompose():
    G, L = init_pair(2, 1)
    G, L = step_pair(G, L, E, 2, 2)
    assert subset_sum_decompose(L, ModOneVector.zero(G.N)) == E
    full = L.subset_sum(L.steps, G.N)
    assert subset_sum_decompose(L, full) == frozenset(L.steps)
    with pytest.raises(InternalConsistencyError):
        subset_sum_decompose(L, blocks(("1/2", 1), (0, 5)))

    data = ClassData(1, (1, 2, 4, 8), (E, frozenset({1}), frozenset({2})))
    pairs = build_pairs(data)
    G2, L2, _ = pairs[1]
    c3 = pairs[2][2]
    h3 = ModOneVector((c3 * 2).entries[: G2.N])
    assert subset_sum_decompose(L2, h3) == {2}


def test_build_from_data_examples():
    G = build_from_data(ClassData(1, (1, 2), (E,)))
    assert canonical_key(G) == canonical_key(close_generators([blocks(("1/2", 2))], 2))
    G = build_from_data(ClassData(1, (1, 4), (E,)))
    assert canonical_key(G) == canonical_key(close_generators([blocks(("1/4", 4))], 4))


def test_class_data_validation():
    with pytest.raises(InvalidClassData):
        ClassData(1, (1, 3, 6), (frozenset({1}), E)).validate()
    with pytest.raises(InvalidClassData):
        ClassData(1, (1, 4, 6), (E, E)).validate()
    with pytest.raises(InvalidClassData):
        ClassData(1, (1, 2, 4, 8), (E, frozenset({1}), frozenset({1}))).validate()
    with pytest.raises(InvalidClassData):
        ClassData(0, (1, 2), (E,)).validate()
    d = ClassData(2, (1, 2, 4), (E, frozenset({1})))
    assert ClassData.from_json(d.to_json()) == d
    assert d.v == 4 and d.s == 2 and d.ratios == (2, 2)
    assert str(d) == "k=2 chain 1<2<4 J=({}, {l1})"


def test_marker_validation_catches_overlap():
    G, L = init_pair(2, 1)
    bad = MarkerSet(((1, L.element(1)), (2, L.element(1))))
    with pytest.raises(InternalConsistencyError):
        bad.validate(G)


def test_markers_follow_coordinate_orders():
    data = ClassData(1, (1, 2, 6, 12), (E, frozenset({1}), frozenset({2})))
    for G, L, _ in build_pairs(data):
        L.validate(G)
        d = G.coord_orders
        for _, u in L:
            assert all(u.entries[i] == F(1, d[i]) for i in u.support)
