"""Finite subgroups of [0,1)^N whose elements have integer heights.

Elements are held as an ``(M, N)`` integer table of numerators over the
smallest common denominator ``den`` (the exponent of the group), with rows
sorted by height and then lexicographically.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .exceptions import CanonicalKeyUndefined, GroupTooLarge, HeightError, LengthMismatch
from .qz_arith import ModOneVector

DEFAULT_CLOSURE_CAP = 10_000


@dataclass(frozen=True)
class TypeProfile:
    v: int
    k: int

    def __post_init__(self):
        if self.v < 2 or self.k < 1:
            raise ValueError(f"invalid type ({self.v}, {self.k})")

    @property
    def heights(self) -> list:
        return [j * self.k for j in range(self.v)]


@dataclass(frozen=True)
class CanonicalKey:
    """Element table with height-ordered rows and lexicographically sorted columns."""

    den: int
    rows: tuple

    def matrix(self) -> list:
        return [[Fraction(a, self.den) for a in row] for row in self.rows]


class HeightedGroup:
    """Immutable finite subgroup of [0,1)^N with its full element table.

    Use :func:`close_generators` to build one from generators; the constructor
    trusts that ``table`` is closed under addition.
    """

    def __init__(self, table, den: int, generators: Iterable[ModOneVector] = ()):
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] == 0:
            raise ValueError("element table must be a non-empty 2-d array")
        den = int(den)
        table = table % den
        g = int(np.gcd.reduce(table, axis=None)) if table.size else 0
        g = gcd(g, den)
        if g > 1:
            table //= g
            den //= g
        sums = table.sum(axis=1)
        if np.any(sums % den):
            bad = int(np.flatnonzero(sums % den)[0])
            raise HeightError(
                f"element {ModOneVector.from_numerators(table[bad], den)} has non-integer height"
            )
        heights = sums // den
        order = np.lexsort(tuple(table.T[::-1]) + (heights,))
        table = np.ascontiguousarray(table[order])
        table.setflags(write=False)
        self._table = table
        self._den = den
        self._heights = tuple(int(h) for h in heights[order])
        self._generators = tuple(generators)

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def den(self) -> int:
        return self._den

    @property
    def N(self) -> int:
        return self._table.shape[1]

    ambient_width = N

    @property
    def order(self) -> int:
        return self._table.shape[0]

    def __len__(self) -> int:
        return self.order

    @property
    def heights(self) -> tuple:
        return self._heights

    @property
    def generators(self) -> tuple:
        return self._generators

    @cached_property
    def elements(self) -> tuple:
        return tuple(ModOneVector.from_numerators(row, self._den) for row in self._table)

    @cached_property
    def coord_orders(self) -> tuple:
        """d_i: size of the image of the i-th coordinate projection."""
        return tuple(len(np.unique(self._table[:, i])) for i in range(self.N))

    @cached_property
    def _index(self) -> dict:
        return {row.tobytes(): i for i, row in enumerate(self._table)}

    def row_of(self, numerators) -> int:
        """Row index of the element with the given numerators (over ``den``), or -1."""
        arr = np.asarray(numerators, dtype=np.int64) % self._den
        return self._index.get(np.ascontiguousarray(arr).tobytes(), -1)

    def numerators_of(self, x: ModOneVector) -> np.ndarray:
        if len(x) != self.N:
            raise LengthMismatch(f"vector of length {len(x)} in group of width {self.N}")
        if self._den % x.denominator:
            return None
        return np.array(x.numerators_over(self._den), dtype=np.int64)

    def index_of(self, x: ModOneVector) -> int:
        nums = self.numerators_of(x)
        return -1 if nums is None else self.row_of(nums)

    def __contains__(self, x: ModOneVector) -> bool:
        return self.index_of(x) >= 0

    def element(self, i: int) -> ModOneVector:
        return ModOneVector.from_numerators(self._table[i], self._den)

    def __repr__(self) -> str:
        return f"HeightedGroup(N={self.N}, order={self.order}, heights={list(self._heights)})"


def _adjoin(table: np.ndarray, g: np.ndarray, den: int, cap: int) -> np.ndarray:
    """Element table of H + <g> from that of H (all numerators over ``den``)."""
    members = {row.tobytes() for row in table}
    cosets = [table]
    x = g % den
    size = table.shape[0]
    while np.ascontiguousarray(x).tobytes() not in members:
        size += table.shape[0]
        if size > cap:
            raise GroupTooLarge(f"closure exceeds the safety cap of {cap} elements")
        cosets.append((table + x) % den)
        x = (x + g) % den
    return np.vstack(cosets) if len(cosets) > 1 else table


def close_generators(
    gens: Sequence[ModOneVector], N: int, cap: int = DEFAULT_CLOSURE_CAP
) -> HeightedGroup:
    """The subgroup of [0,1)^N generated by ``gens``."""
    gens = tuple(gens)
    for g in gens:
        if len(g) != N:
            raise LengthMismatch(f"generator of length {len(g)} in ambient width {N}")
    den = 1
    for g in gens:
        den = lcm(den, g.denominator)
    table = np.zeros((1, N), dtype=np.int64)
    for g in gens:
        table = _adjoin(table, np.array(g.numerators_over(den), dtype=np.int64), den, cap)
    return HeightedGroup(table, den, gens)


def adjoin(G: HeightedGroup, c: ModOneVector, cap: int = DEFAULT_CLOSURE_CAP) -> HeightedGroup:
    """G + <c> inside the same ambient space."""
    if len(c) != G.N:
        raise LengthMismatch("generator length differs from ambient width")
    den = lcm(G.den, c.denominator)
    table = G.table * (den // G.den)
    table = _adjoin(table, np.array(c.numerators_over(den), dtype=np.int64), den, cap)
    return HeightedGroup(table, den, G.generators + (c,))


def subgroup_from_rows(G: HeightedGroup, rows: Iterable[int], generators=()) -> HeightedGroup:
    """Wrap a subset of G's element table (assumed to be a subgroup)."""
    rows = sorted(rows)
    return HeightedGroup(G.table[rows], G.den, generators)


def is_type(G: HeightedGroup, profile) -> bool:
    """True iff |G| = v and the heights are exactly 0, k, ..., (v-1)k."""
    if not isinstance(profile, TypeProfile):
        profile = TypeProfile(*profile)
    if G.order != profile.v:
        return False
    return sorted(G.heights) == profile.heights


def infer_k(G: HeightedGroup) -> int:
    """The k for which G would be of type (|G|, k), read off the smallest positive height."""
    if G.order < 2:
        raise ValueError("cannot infer k from the trivial group")
    return G.heights[1]


def zero_coordinates(G: HeightedGroup) -> frozenset:
    return frozenset(int(i) for i in np.flatnonzero(~G.table.any(axis=0)))


def nonzero_coordinates(G: HeightedGroup) -> list:
    return [int(i) for i in np.flatnonzero(G.table.any(axis=0))]


def reduce(G: HeightedGroup) -> HeightedGroup:
    """Delete the coordinates on which every element vanishes."""
    keep = nonzero_coordinates(G)
    if len(keep) == G.N:
        return G
    gens = tuple(g.restrict(keep) for g in G.generators)
    return HeightedGroup(G.table[:, keep], G.den, gens)


def permute(G: HeightedGroup, perm: Sequence[int]) -> HeightedGroup:
    """Coordinate ``j`` of the result is coordinate ``perm[j]`` of G."""
    perm = list(perm)
    if sorted(perm) != list(range(G.N)):
        raise ValueError("not a permutation of the coordinates")
    return HeightedGroup(G.table[:, perm], G.den, tuple(g.permute(perm) for g in G.generators))


def canonical_key(G: HeightedGroup) -> CanonicalKey:
    h = G.heights
    if len(set(h)) != len(h):
        raise CanonicalKeyUndefined("canonical key undefined: group has repeated heights")
    t = G.table
    cols = np.lexsort(t[::-1]) if t.shape[1] else np.arange(0)
    t = t[:, cols]
    return CanonicalKey(G.den, tuple(tuple(int(a) for a in row) for row in t))


def equivalent(G1: HeightedGroup, G2: HeightedGroup) -> bool:
    """Coordinate-permutation equivalence, decided through canonical keys."""
    return canonical_key(G1) == canonical_key(G2)


def hstar_vector(G: HeightedGroup, dim_hint: int | None = None) -> list:
    """Number of elements of each height 0..dim_hint (default N - 1)."""
    if dim_hint is None:
        dim_hint = G.N - 1
    dim_hint = max(dim_hint, 0)
    if max(G.heights) > dim_hint:
        raise ValueError(f"height {max(G.heights)} exceeds dim_hint {dim_hint}")
    counts = Counter(G.heights)
    return [counts.get(i, 0) for i in range(dim_hint + 1)]


def coordinate_multiplicities_ok(G: HeightedGroup) -> bool:
    """Each coordinate takes the values j/d_i, j < d_i, exactly M/d_i times each."""
    M = G.order
    for i, d in enumerate(G.coord_orders):
        if M % d or G.den % d:
            return False
        step = G.den // d
        expected = {j * step: M // d for j in range(d)}
        if dict(Counter(int(a) for a in G.table[:, i])) != expected:
            return False
    return True


def group_to_json(G: HeightedGroup) -> dict:
    gens = G.generators if G.generators else [g for g in G.elements if not g.is_zero()]
    return {"N": G.N, "generators": [g.to_strings() for g in gens], "order": G.order}


def group_from_json(obj: dict, cap: int = DEFAULT_CLOSURE_CAP) -> HeightedGroup:
    N = int(obj["N"])
    gens = [ModOneVector(row) for row in obj.get("generators", [])]
    G = close_generators(gens, N, cap=cap)
    if "order" in obj and obj["order"] is not None and int(obj["order"]) != G.order:
        raise ValueError(f"declared order {obj['order']} but generators give {G.order}")
    return G
