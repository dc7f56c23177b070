"""One-step cyclic extensions G -> G + <c> of a type-(M, k) group.

The admissible elements are found by scanning the whole element table, with
no reference to marker sets, so this module can serve as an independent check
of :mod:`gorsimp.builder`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InadmissibleElement, InternalConsistencyError, NotOfType, ZeroCoordinate
from .group_core import (
    DEFAULT_CLOSURE_CAP,
    HeightedGroup,
    _adjoin,
    infer_k,
    is_type,
    zero_coordinates,
)
from .qz_arith import ModOneVector


@dataclass(frozen=True)
class ExtensionStep:
    base: HeightedGroup
    h: ModOneVector
    n: int
    L: int
    c: ModOneVector
    extended: HeightedGroup


def _admissible_mask(G: HeightedGroup) -> np.ndarray:
    step = np.array([G.den // d for d in G.coord_orders], dtype=np.int64)
    t = G.table
    return ((t == 0) | (t == step)).all(axis=1)


def admissible_elements(G: HeightedGroup) -> list:
    """All h in G with h_i in {0, 1/d_i(G)} for every coordinate i."""
    return [G.element(i) for i in np.flatnonzero(_admissible_mask(G))]


def is_admissible(G: HeightedGroup, h: ModOneVector) -> bool:
    i = G.index_of(h)
    return i >= 0 and bool(_admissible_mask(G)[i])


def _check_base(G: HeightedGroup, k: int) -> None:
    if G.order > 1 and not is_type(G, (G.order, k)):
        raise NotOfType(f"{G!r} is not of type ({G.order}, {k})")
    if zero_coordinates(G):
        raise ZeroCoordinate("base group has a zero coordinate")


def extend(
    G: HeightedGroup,
    h: ModOneVector,
    n: int,
    k: int | None = None,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> tuple:
    """Adjoin c with n*c = h, appending L = n*M*k - ht(h) new 1/n coordinates.

    ``k`` defaults to the one read off G; it must be given when G is trivial.
    Returns ``(G_prime, c)``.
    """
    if n < 2:
        raise ValueError("extension degree n must be at least 2")
    if k is None:
        k = infer_k(G)
    _check_base(G, k)
    if len(h) != G.N or h not in G:
        raise InadmissibleElement(f"{h!r} is not an element of the base group")
    if not is_admissible(G, h):
        raise InadmissibleElement(f"{h!r} has a coordinate outside {{0, 1/d_i}}")

    M = G.order
    L = n * M * k - h.height()
    if L <= 0:
        raise InternalConsistencyError(f"non-positive number of new coordinates L={L}")

    den = G.den * n
    h_num = h.numerators_over(G.den)
    c = ModOneVector.from_numerators(list(h_num) + [G.den] * L, den)

    base = np.hstack([G.table * n, np.zeros((M, L), dtype=np.int64)])
    c_num = np.array(c.numerators_over(den), dtype=np.int64)
    table = _adjoin(base, c_num, den, cap)
    gens = tuple(g.pad(L) for g in G.generators) + (c,)
    G2 = HeightedGroup(table, den, gens)
    if G2.order != M * n:
        raise InternalConsistencyError(f"extension has order {G2.order}, expected {M * n}")
    return G2, c


def extension_step(G: HeightedGroup, h: ModOneVector, n: int, k: int | None = None) -> ExtensionStep:
    G2, c = extend(G, h, n, k)
    return ExtensionStep(G, h, n, len(c) - G.N, c, G2)


def verify_block_structure(
    G: HeightedGroup, Gsub: HeightedGroup, c: ModOneVector, n: int, M: int, k: int
) -> bool:
    """Check the converse hypotheses of a one-step extension Gsub -> G.

    True iff G/Gsub is cyclic of order n generated by c, G is of type
    (Mn, k), each coset r*c + Gsub carries the heights rMk, ..., rMk + (M-1)k,
    and c has minimum height in c + Gsub.
    """
    if Gsub.N != G.N or len(c) != G.N:
        return False
    if Gsub.order != M or G.order != M * n:
        return False
    if not is_type(G, (M * n, k)):
        return False
    if G.den % Gsub.den or G.den % c.denominator:
        return False
    sub = Gsub.table * (G.den // Gsub.den)
    c_num = np.array(c.numerators_over(G.den), dtype=np.int64)

    seen = set()
    coset_heights = []
    for r in range(n):
        rows = [G.row_of(x) for x in (sub + r * c_num) % G.den]
        if min(rows) < 0:
            return False
        seen.update(rows)
        hs = sorted(G.heights[i] for i in rows)
        if hs != [r * M * k + j * k for j in range(M)]:
            return False
        coset_heights.append(hs)
    if len(seen) != G.order:
        return False
    return c.height() == coset_heights[1][0] if n > 1 else True
