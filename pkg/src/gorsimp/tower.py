"""Canonical quotient tower realized as a kernel chain G_0 < G_1 < ... < G_s = G.

Quotients are never built as separate groups: the quotient height of a coset
of G_{i-1} is its minimum height divided by |G_{i-1}|, computed on the
ambient element table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .builder import ClassData, MarkerSet, subset_sum_decompose
from .exceptions import InternalConsistencyError, NotOfType, ZeroCoordinate
from .extension import is_admissible
from .group_core import HeightedGroup, is_type, nonzero_coordinates, zero_coordinates
from .qz_arith import ModOneVector


def cyclic_walk_interval(seq: Sequence[int]) -> int:
    """Lower end L of the interval {L, ..., L+m-1} covered by a cyclic walk.

    ``seq`` must consist of pairwise distinct integers whose cyclic upward
    steps (including the wrap from last to first) are at most 1.  The values
    are then consecutive; this function checks that directly and returns L.
    """
    m = len(seq)
    if m == 0:
        raise ValueError("empty sequence")
    if len(set(seq)) != m:
        raise ValueError("entries are not pairwise distinct")
    for t in range(m):
        if seq[(t + 1) % m] - seq[t] > 1:
            raise ValueError(f"upward step larger than 1 at position {t}")
    lo = min(seq)
    if set(seq) != set(range(lo, lo + m)):
        raise InternalConsistencyError(f"cyclic walk {list(seq)} does not cover an interval")
    return lo


@dataclass(frozen=True)
class TowerStage:
    index: int
    rows: frozenset  # row indices of G_i in the ambient element table
    M: int
    n: int
    c: ModOneVector  # minimum-height lift of the generator of G_i / G_{i-1}
    h: ModOneVector  # n * c, an element of G_{i-1}


def unique_height_k_element(G: HeightedGroup, k: int) -> ModOneVector:
    """The unique element of height k; also checks it is (1/m)^[mk] padded with zeros."""
    if not is_type(G, (G.order, k)):
        raise NotOfType(f"{G!r} is not of type ({G.order}, {k})")
    idx = [i for i, h in enumerate(G.heights) if h == k]
    if len(idx) != 1:
        raise NotOfType(f"expected exactly one element of height {k}, found {len(idx)}")
    a = G.element(idx[0])
    m = 1
    x = a
    while not x.is_zero():
        x = x + a
        m += 1
    values = set(a.entries) - {0}
    if values != {Fraction(1, m)} or len(a.support) != m * k:
        raise InternalConsistencyError(f"height-{k} element {a!r} does not have the shape (1/{m})^[{m * k}]")
    return a


def _cosets(G: HeightedGroup, sub_rows: list) -> list:
    """Partition of G's rows into cosets of the subgroup given by ``sub_rows``."""
    sub = G.table[sub_rows]
    label = [-1] * G.order
    cosets = []
    for i in range(G.order):
        if label[i] >= 0:
            continue
        rows = [G.row_of(x) for x in (G.table[i] + sub) % G.den]
        if min(rows) < 0:
            raise InternalConsistencyError("subgroup table is not closed inside the group")
        for r in rows:
            label[r] = len(cosets)
        cosets.append(rows)
    return cosets


def _check_input(G: HeightedGroup, k: int) -> None:
    if not is_type(G, (G.order, k)):
        raise NotOfType(f"{G!r} is not of type ({G.order}, {k})")
    if zero_coordinates(G):
        raise ZeroCoordinate(
            "group has a zero coordinate, so the simplex is a lattice pyramid"
        )


def quotient_tower(G: HeightedGroup, k: int) -> list:
    """Stages i = 1..s of the kernel chain, with G_0 = {0} and G_s = G."""
    _check_input(G, k)
    unique_height_k_element(G, k)
    heights = G.heights
    sub_rows = [0]  # row 0 is the zero element (height 0)
    M = 1
    stages = []
    while M < G.order:
        target = M * k
        chosen = None
        for rows in _cosets(G, sub_rows):
            if 0 in rows:
                continue
            lo = min(rows, key=lambda r: heights[r])
            if heights[lo] == target:
                if chosen is not None:
                    raise InternalConsistencyError(f"two cosets with minimum height {target}")
                chosen = lo
        if chosen is None:
            raise NotOfType(f"no coset of the order-{M} subgroup has minimum height {target}")
        c = G.element(chosen)
        c_num = G.table[chosen]
        members = set(sub_rows)
        new_rows = list(sub_rows)
        x = c_num.copy()
        n = 1
        while G.row_of(x) not in members:
            new_rows.extend(G.row_of(y) for y in (G.table[sub_rows] + x) % G.den)
            x = (x + c_num) % G.den
            n += 1
        h = ModOneVector.from_numerators(x, G.den)
        sub_rows = sorted(new_rows)
        M *= n
        if len(sub_rows) != M:
            raise InternalConsistencyError("stage subgroup has the wrong order")
        stages.append(TowerStage(len(stages) + 1, frozenset(sub_rows), M, n, c, h))
    return stages


def stage_group(G: HeightedGroup, stage: TowerStage) -> HeightedGroup:
    return HeightedGroup(G.table[sorted(stage.rows)], G.den)


def _reduced(G: HeightedGroup, rows, cols: list) -> HeightedGroup:
    return HeightedGroup(G.table[sorted(rows)][:, cols], G.den)


def extract_data(G: HeightedGroup, k: int) -> ClassData:
    """Recover (chain, J_1..J_s) from any type-(v, k) group without zero coordinates.

    Follows the kernel chain, keeping each G_i in reduced coordinates (the
    coordinates not identically zero on G_i) together with its marker set.
    """
    stages = quotient_tower(G, k)
    first = stages[0]
    supp_prev = nonzero_coordinates(stage_group(G, first))
    markers = MarkerSet(((1, first.c.restrict(supp_prev)),))
    markers.validate(_reduced(G, first.rows, supp_prev))
    subsets = [frozenset()]

    for prev, st in zip(stages, stages[1:]):
        h_red = st.h.restrict(supp_prev)
        if not is_admissible(_reduced(G, prev.rows, supp_prev), h_red):
            raise InternalConsistencyError(f"h_{st.index} is not admissible in G_{prev.index}")
        J = subset_sum_decompose(markers, h_red)
        subsets.append(J)

        supp = nonzero_coordinates(stage_group(G, st))
        if not set(supp_prev) <= set(supp):
            raise InternalConsistencyError("supports of the kernel chain are not nested")
        # ambient -> reduced index map for G_i
        pos = {coord: j for j, coord in enumerate(supp)}
        old_positions = [pos[coord] for coord in supp_prev]

        def lift(u: ModOneVector) -> ModOneVector:
            nums = [0] * len(supp)
            for j, a in zip(old_positions, u.numerators):
                nums[j] = a
            return ModOneVector.from_numerators(nums, u.denominator)

        kept = tuple((s, lift(u)) for s, u in markers.markers if s not in J)
        markers = MarkerSet(kept + ((st.index, st.c.restrict(supp)),))
        markers.validate(_reduced(G, st.rows, supp))
        supp_prev = supp

    data = ClassData(k, (1,) + tuple(st.M for st in stages), tuple(subsets))
    data.validate()
    return data


def coset_blocks_ok(G: HeightedGroup, stages: list, k: int) -> bool:
    """Each coset r*c_i + G_{i-1} inside G_i carries heights r M_{i-1} k + j k, j < M_{i-1}."""
    prev_rows = [0]
    M_prev = 1
    for st in stages:
        sub = G.table[prev_rows]
        c_num = np.array(st.c.numerators_over(G.den), dtype=np.int64)
        covered = set()
        for r in range(st.n):
            rows = [G.row_of(x) for x in (sub + r * c_num) % G.den]
            if min(rows) < 0:
                return False
            covered.update(rows)
            hs = sorted(G.heights[i] for i in rows)
            if hs != [r * M_prev * k + j * k for j in range(M_prev)]:
                return False
        if covered != set(st.rows):
            return False
        prev_rows = sorted(st.rows)
        M_prev = st.M
    return True
