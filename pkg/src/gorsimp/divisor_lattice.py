"""Strict divisor chains 1 = M_0 < ... < M_s = v and the class counts built on them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial


def divisors(v: int) -> list:
    if v < 1:
        raise ValueError("v must be positive")
    small, large = [], []
    d = 1
    while d * d <= v:
        if v % d == 0:
            small.append(d)
            if d * d != v:
                large.append(v // d)
        d += 1
    return small + large[::-1]


def factorize(v: int) -> dict:
    """Prime factorization {p: exponent} by trial division."""
    out = {}
    p = 2
    while p * p <= v:
        while v % p == 0:
            out[p] = out.get(p, 0) + 1
            v //= p
        p += 1
    if v > 1:
        out[v] = out.get(v, 0) + 1
    return out


@dataclass(frozen=True)
class DivisorChain:
    terms: tuple

    def __post_init__(self):
        t = tuple(self.terms)
        object.__setattr__(self, "terms", t)
        if len(t) < 2 or t[0] != 1:
            raise ValueError(f"{t} must start at 1 and contain at least two terms")
        for a, b in zip(t, t[1:]):
            if b <= a or b % a:
                raise ValueError(f"{t} is not a strict divisor chain")

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def __str__(self) -> str:
        return "<".join(map(str, self.terms))


@dataclass(frozen=True)
class ChainCensus:
    v: int
    counts: dict  # s -> c_s(D_v)


def strict_chains(v: int) -> list:
    """All strict divisor chains from 1 to v, in lexicographic order."""
    if v < 2:
        raise ValueError("v must be at least 2")
    divs = divisors(v)
    out = []

    def dfs(path):
        last = path[-1]
        if last == v:
            out.append(DivisorChain(tuple(path)))
            return
        for d in divs:
            if d > last and d % last == 0:
                path.append(d)
                dfs(path)
                path.pop()

    dfs([1])
    return out


@lru_cache(maxsize=None)
def _census_counts(v: int) -> tuple:
    counts: dict = {}
    for ch in strict_chains(v):
        counts[ch.length] = counts.get(ch.length, 0) + 1
    return tuple(sorted(counts.items()))


def chain_census(v: int) -> ChainCensus:
    return ChainCensus(v, dict(_census_counts(v)))


def count_classes(v: int) -> int:
    """N(v) = sum_s c_s(D_v) * s!; the same for every k."""
    return sum(c * factorial(s) for s, c in chain_census(v).counts.items())


def prime_power_count(ell: int) -> int:
    if ell < 1:
        raise ValueError("exponent must be positive")
    return sum(comb(ell - 1, s - 1) * factorial(s) for s in range(1, ell + 1))


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind via S(n,k) = k S(n-1,k) + S(n-1,k-1)."""
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def squarefree_count(ell: int) -> int:
    if ell < 1:
        raise ValueError("number of prime factors must be positive")
    return sum(factorial(s) ** 2 * stirling2(ell, s) for s in range(1, ell + 1))
