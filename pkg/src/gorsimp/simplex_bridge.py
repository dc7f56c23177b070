"""Group <-> lattice simplex dictionary, plus direct Ehrhart counting.

All matrix algebra is done here, exactly, on lists of Python ints.

For a simplex with vertex rows v_0..v_d, the group is

    Lambda = {x in [0,1)^{d+1} : sum_i x_i (v_i, 1) in Z^{d+1}},

and h*_i counts its elements of height i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .exceptions import DegenerateSimplex, InternalConsistencyError
from .group_core import HeightedGroup, hstar_vector, zero_coordinates
from .qz_arith import ModOneVector

DEFAULT_MAX_EHRHART_DIM = 7


# -- integer normal forms ----------------------------------------------------

def hermite_normal_form(A) -> list:
    """Row-style HNF: echelon basis of the row lattice of A.

    Pivots are positive and the entries above each pivot lie in [0, pivot).
    Zero rows are dropped.
    """
    A = [[int(a) for a in row] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    for col in range(n):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][col]))
            A[r], A[piv] = A[piv], A[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][col]:
                    q = A[i][col] // A[r][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    clean = clean and A[i][col] == 0
            if clean:
                break
        if not A[r][col]:
            continue
        if A[r][col] < 0:
            A[r] = [-a for a in A[r]]
        p = A[r][col]
        for i in range(r):
            q = A[i][col] // p
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
    return A[:r]


def smith_normal_form(A) -> tuple:
    """Return (P, D, Q) with P A Q = D diagonal, P and Q unimodular.

    Diagonal entries are nonnegative and each divides the next.
    """
    A = [[int(a) for a in row] for row in A]
    m, n = len(A), len(A[0])
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for M in (A, Q):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        P[dst] = [a - q * b for a, b in zip(P[dst], P[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for M in (A, Q):
            for row in M:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            cand = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not cand:
                return P, A, Q
            _, i, j = min(cand)
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, A[i][t] // p)
                    clean = clean and not A[i][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, A[t][j] // p)
                    clean = clean and not A[t][j]
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            P[t] = [-a for a in P[t]]
    return P, A, Q


def integer_kernel(w) -> list:
    """Basis of {y in Z^n : y . w = 0} for an integer vector w with gcd 1."""
    n = len(w)
    aug = [[int(w[i])] + [int(i == j) for j in range(n)] for i in range(n)]
    H = hermite_normal_form(aug)
    if H[0][0] != 1:
        raise InternalConsistencyError(f"entries of {list(w)} are not coprime")
    return [row[1:] for row in H[1:]]


def determinant(A) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    M = [[int(a) for a in row] for row in A]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _solve_echelon(C: list, target: list) -> list:
    """Integer y with y C = target, for C in row echelon form."""
    y = []
    for r, row in enumerate(C):
        p = next(j for j, a in enumerate(row) if a)
        rest = target[p] - sum(y[q] * C[q][p] for q in range(r))
        if rest % row[p]:
            raise InternalConsistencyError("vector is not in the lattice spanned by the basis")
        y.append(rest // row[p])
    check = [sum(y[r] * C[r][j] for r in range(len(C))) for j in range(len(target))]
    if check != list(target):
        raise InternalConsistencyError("vector is not in the span of the basis")
    return y


# -- simplices ---------------------------------------------------------------

@dataclass(frozen=True)
class SimplexModel:
    """Lattice simplex conv(v_0, ..., v_d) in Z^d with v_0 at the origin."""

    d: int
    vertices: tuple

    def __post_init__(self):
        verts = tuple(tuple(int(a) for a in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) != self.d + 1 or any(len(v) != self.d for v in verts):
            raise DegenerateSimplex(f"need {self.d + 1} vertices in Z^{self.d}")
        if self.normalized_volume == 0:
            raise DegenerateSimplex("vertices are affinely dependent")

    @classmethod
    def from_vertices(cls, vertices) -> "SimplexModel":
        """Translate so the first vertex sits at the origin."""
        vertices = [list(map(int, v)) for v in vertices]
        v0 = vertices[0]
        shifted = [[a - b for a, b in zip(v, v0)] for v in vertices]
        return cls(len(v0), tuple(map(tuple, shifted)))

    @property
    def edge_matrix(self) -> list:
        v0 = self.vertices[0]
        return [[a - b for a, b in zip(v, v0)] for v in self.vertices[1:]]

    @property
    def normalized_volume(self) -> int:
        return abs(determinant(self.edge_matrix))

    def normalized(self) -> "SimplexModel":
        """Unimodularly equivalent copy whose edge matrix is lower triangular (HNF)."""
        E = self.edge_matrix
        if self.d == 0:
            return self
        H = hermite_normal_form([list(col) for col in zip(*E)])
        Et = [list(col) for col in zip(*H)]
        return SimplexModel(self.d, ((0,) * self.d,) + tuple(map(tuple, Et)))

    def to_json(self) -> dict:
        return {"d": self.d, "vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, obj: dict) -> "SimplexModel":
        return cls.from_vertices(obj["vertices"])


def group_to_simplex(G: HeightedGroup) -> SimplexModel:
    """A simplex whose group is G (up to permutation of coordinates).

    L = Z^N + G is a lattice on which the coordinate sum is integral; with L_0
    its sum-zero part, the vertices are the L_0-coordinates of e_i - e_0.
    """
    N = G.N
    if N < 2:
        raise ValueError("need ambient width at least 2 (simplex dimension >= 1)")
    D = G.den
    gens = G.generators or G.elements
    rows = [[D * int(i == j) for j in range(N)] for i in range(N)]
    rows += [list(g.numerators_over(D)) for g in gens if not g.is_zero()]
    B = hermite_normal_form(rows)
    if len(B) != N:
        raise InternalConsistencyError("lattice Z^N + G is not of full rank")
    sums = [sum(row) for row in B]
    if any(s % D for s in sums):
        raise InternalConsistencyError("a lattice vector has non-integer coordinate sum")
    K = integer_kernel([s // D for s in sums])
    L0 = hermite_normal_form([[sum(kr[r] * B[r][j] for r in range(N)) for j in range(N)] for kr in K])
    if len(L0) != N - 1:
        raise InternalConsistencyError("sum-zero sublattice has the wrong rank")
    edges = []
    for i in range(1, N):
        target = [0] * N
        target[i] += D
        target[0] -= D
        edges.append(_solve_echelon(L0, target))
    S = SimplexModel(N - 1, ((0,) * (N - 1),) + tuple(map(tuple, edges))).normalized()
    if S.normalized_volume != G.order:
        raise InternalConsistencyError(
            f"simplex volume {S.normalized_volume} differs from group order {G.order}"
        )
    return S


def simplex_to_group(S: SimplexModel) -> HeightedGroup:
    """Enumerate Lambda_S through a Smith form of the lifted vertex matrix."""
    V = [list(v) + [1] for v in S.vertices]
    P, Dm, _ = smith_normal_form(V)
    n = len(V)
    s = [Dm[j][j] for j in range(n)]
    if 0 in s:
        raise DegenerateSimplex("vertex matrix is singular")
    # x V integral  <=>  y = x P^{-1} has y_j in (1/s_j) Z,  so x = y P
    den = lcm(*s)
    basis = np.array([[(den // s[j]) * a for a in P[j]] for j in range(n)], dtype=np.int64)
    steps = [j for j in range(n) if s[j] > 1]
    if steps:
        counts = np.array(list(itertools.product(*(range(s[j]) for j in steps))), dtype=np.int64)
        table = (counts @ basis[steps]) % den
    else:
        table = np.zeros((1, n), dtype=np.int64)
    gens = tuple(ModOneVector.from_numerators(basis[j], den) for j in steps)
    G = HeightedGroup(table, den, gens)
    if G.order != abs(determinant(V)):
        raise InternalConsistencyError("enumerated group order differs from |det|")
    return G


def hstar_of_simplex(S: SimplexModel) -> list:
    h = hstar_vector(simplex_to_group(S), S.d)
    if h[0] != 1 or sum(h) != S.normalized_volume:
        raise InternalConsistencyError(f"h* vector {h} violates h*_0 = 1 or h*(1) = volume")
    return h


def is_lattice_pyramid(S: SimplexModel) -> bool:
    return bool(zero_coordinates(simplex_to_group(S)))


def ehrhart_count(S: SimplexModel, m: int, max_dim: int = DEFAULT_MAX_EHRHART_DIM) -> int:
    """|mS cap Z^d| by direct enumeration of the lattice points.

    S is first replaced by a unimodular copy with lower-triangular edge
    matrix E.  A point is p = sum_i lam_i E_i with lam >= 0 and sum lam <= m;
    fixing p_{d-1}, p_{d-2}, ... in turn determines lam_{d-1}, lam_{d-2}, ...,
    so each coordinate ranges over an explicit integer interval.
    """
    if m < 1:
        raise ValueError("dilation factor must be positive")
    if S.d > max_dim:
        raise ValueError(f"dimension {S.d} exceeds the Ehrhart enumeration cap {max_dim}")
    if S.d == 0:
        return 1
    E = S.normalized().edge_matrix
    d = S.d

    def count(j: int, lam: list, used: Fraction) -> int:
        if j < 0:
            return 1
        base = sum((lam[i] * E[i][j] for i in range(j + 1, d)), Fraction(0))
        lo = -((-base.numerator) // base.denominator)  # ceil
        top = base + E[j][j] * (m - used)
        hi = top.numerator // top.denominator
        total = 0
        for p in range(lo, hi + 1):
            lj = (p - base) / E[j][j]
            lam[j] = lj
            total += count(j - 1, lam, used + lj)
        return total

    return count(d - 1, [Fraction(0)] * d, Fraction(0))
