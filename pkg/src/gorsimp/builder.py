"""Recursive construction of type-(v, k) groups from divisor chains and subset data.

Each marker remembers the step ``i`` of the formal symbol it realizes, so a
subset J of the alive markers is just a set of step indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .exceptions import InternalConsistencyError, InvalidClassData
from .extension import extend
from .group_core import HeightedGroup, close_generators
from .qz_arith import ModOneVector, add_mod1


@dataclass(frozen=True)
class MarkerSet:
    """Distinguished elements with pairwise disjoint supports, keyed by creation step."""

    markers: tuple  # of (step, ModOneVector), sorted by step

    def __post_init__(self):
        object.__setattr__(self, "markers", tuple(sorted(self.markers, key=lambda m: m[0])))

    @property
    def steps(self) -> tuple:
        return tuple(s for s, _ in self.markers)

    def element(self, step: int) -> ModOneVector:
        for s, u in self.markers:
            if s == step:
                return u
        raise KeyError(step)

    def __len__(self) -> int:
        return len(self.markers)

    def __iter__(self):
        return iter(self.markers)

    def subset_sum(self, J: Iterable[int], width: int) -> ModOneVector:
        h = ModOneVector.zero(width)
        for s in J:
            h = add_mod1(h, self.element(s))
        return h

    def validate(self, G: HeightedGroup) -> None:
        """Disjoint supports and value 1/d_i(G) on each support coordinate."""
        used = set()
        d = G.coord_orders
        for s, u in self.markers:
            if u not in G:
                raise InternalConsistencyError(f"marker l_{s} is not an element of the group")
            supp = u.support
            if used & supp:
                raise InternalConsistencyError(f"marker l_{s} overlaps another marker's support")
            used |= supp
            for i in supp:
                if u[i].denominator != d[i] or u[i].numerator != 1:
                    raise InternalConsistencyError(
                        f"marker l_{s} has value {u[i]} at coordinate {i}, expected 1/{d[i]}"
                    )


@dataclass(frozen=True)
class ClassData:
    """A strict divisor chain 1 = M_0 < ... < M_s = v with subsets J_1, ..., J_s."""

    k: int
    chain: tuple
    subsets: tuple  # of frozenset of step indices

    def __post_init__(self):
        object.__setattr__(self, "chain", tuple(int(m) for m in self.chain))
        object.__setattr__(self, "subsets", tuple(frozenset(int(j) for j in J) for J in self.subsets))

    @property
    def v(self) -> int:
        return self.chain[-1]

    @property
    def s(self) -> int:
        return len(self.chain) - 1

    @property
    def ratios(self) -> tuple:
        return tuple(b // a for a, b in zip(self.chain, self.chain[1:]))

    def validate(self) -> None:
        c = self.chain
        if self.k < 1:
            raise InvalidClassData("k must be positive")
        if len(c) < 2 or c[0] != 1:
            raise InvalidClassData(f"chain {c} must start at 1 and have at least one step")
        for a, b in zip(c, c[1:]):
            if b <= a or b % a:
                raise InvalidClassData(f"chain {c} is not a strict divisor chain")
        if len(self.subsets) != len(c) - 1:
            raise InvalidClassData("need exactly one subset per chain step")
        alive: set = set()
        for i, J in enumerate(self.subsets, start=1):
            if not J <= alive:
                raise InvalidClassData(f"J_{i} = {sorted(J)} is not a subset of alive symbols {sorted(alive)}")
            alive = (alive - J) | {i}

    def to_json(self) -> dict:
        return {"k": self.k, "chain": list(self.chain), "subsets": [sorted(J) for J in self.subsets]}

    @classmethod
    def from_json(cls, obj: dict) -> "ClassData":
        data = cls(int(obj["k"]), tuple(obj["chain"]), tuple(obj["subsets"]))
        data.validate()
        return data

    def __str__(self) -> str:
        chain = "<".join(map(str, self.chain))
        subs = ", ".join("{" + ",".join(f"l{j}" for j in sorted(J)) + "}" for J in self.subsets)
        return f"k={self.k} chain {chain} J=({subs})"


def init_pair(m: int, k: int) -> tuple:
    """G = <(1/m, ..., 1/m)> in [0,1)^{mk} together with its single marker."""
    if m < 2:
        raise ValueError("initial order m must be at least 2")
    if k < 1:
        raise ValueError("k must be positive")
    c = ModOneVector.from_numerators([1] * (m * k), m)
    G = close_generators([c], m * k)
    L = MarkerSet(((1, c),))
    L.validate(G)
    return G, L


def step_pair(G: HeightedGroup, L: MarkerSet, J, n: int, step_index: int, k: int | None = None) -> tuple:
    """Extend by h = sum of the markers in J; the new marker replaces J."""
    J = frozenset(J)
    if not J <= set(L.steps):
        raise InvalidClassData(f"J = {sorted(J)} is not a subset of the markers {list(L.steps)}")
    h = L.subset_sum(J, G.N)
    G2, c = extend(G, h, n, k)
    extra = G2.N - G.N
    kept = tuple((s, u.pad(extra)) for s, u in L.markers if s not in J)
    L2 = MarkerSet(kept + ((step_index, c),))
    L2.validate(G2)
    return G2, L2


def subset_sum_decompose(L: MarkerSet, h: ModOneVector) -> frozenset:
    """The unique J with h = sum of the markers in J."""
    hs = h.support
    J = frozenset(s for s, u in L.markers if u.support & hs)
    if L.subset_sum(J, len(h)) != h:
        raise InternalConsistencyError(f"{h!r} is not a subset sum of the markers")
    return J


def build_pairs(data: ClassData) -> list:
    """All intermediate pairs (G_i, L(G_i)) and generators c_i, for i = 1..s."""
    data.validate()
    n = data.ratios
    G, L = init_pair(n[0], data.k)
    out = [(G, L, L.element(1))]
    for i in range(2, data.s + 1):
        G, L = step_pair(G, L, data.subsets[i - 1], n[i - 1], i, data.k)
        out.append((G, L, L.element(i)))
    return out


def build_from_data(data: ClassData) -> HeightedGroup:
    return build_pairs(data)[-1][0]
