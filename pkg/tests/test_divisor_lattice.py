import itertools
from math import factorial

import pytest
from hypothesis import given, strategies as st

from gorsimp.divisor_lattice import (
    DivisorChain,
    chain_census,
    count_classes,
    divisors,
    factorize,
    prime_power_count,
    squarefree_count,
    stirling2,
    strict_chains,
)


def chains_brute(v):
    divs = [d for d in range(2, v) if v % d == 0]
    out = []
    for r in range(len(divs) + 1):
        for mid in itertools.combinations(divs, r):
            t = (1,) + mid + (v,)
            if all(b % a == 0 for a, b in zip(t, t[1:])):
                out.append(t)
    return sorted(out)


def test_chain_examples():
    assert {c.terms for c in strict_chains(4)} == {(1, 4), (1, 2, 4)}
    assert {c.terms for c in strict_chains(6)} == {(1, 6), (1, 2, 6), (1, 3, 6)}
    ch = strict_chains(12)
    assert len(ch) == 8
    assert sorted(c.length for c in ch) == [1, 2, 2, 2, 2, 3, 3, 3]


@pytest.mark.parametrize("v", range(2, 121))
def test_chains_match_brute_force(v):
    got = [c.terms for c in strict_chains(v)]
    assert got == chains_brute(v)  # also checks lexicographic order


def test_census_and_counts():
    assert chain_census(8).counts == {1: 1, 2: 2, 3: 1}
    for p in (2, 3, 5, 7, 13):
        assert chain_census(p).counts == {1: 1}
    assert chain_census(12).counts == {1: 1, 2: 4, 3: 3}
    assert count_classes(9) == 3
    assert count_classes(8) == 11
    assert count_classes(12) == 27
    assert count_classes(30) == 49


def test_closed_forms():
    assert prime_power_count(1) == 1
    assert prime_power_count(3) == 11
    assert prime_power_count(4) == 49
    assert squarefree_count(1) == 1
    assert squarefree_count(2) == 5
    assert squarefree_count(3) == 49
    for p in (2, 3, 5):
        ell = 1
        while p ** ell <= 3125:
            assert count_classes(p ** ell) == prime_power_count(ell)
            ell += 1
    for v, ell in ((6, 2), (30, 3), (210, 4), (2310, 5)):
        assert count_classes(v) == squarefree_count(ell)


def test_stirling_values():
    assert [stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]
    assert stirling2(0, 0) == 1
    for n in range(1, 9):
        assert sum(stirling2(n, k) for k in range(n + 1)) == [1, 1, 2, 5, 15, 52, 203, 877, 4140][n]


@given(st.integers(1, 5000))
def test_divisors_and_factorize(v):
    ds = divisors(v)
    assert ds == [d for d in range(1, v + 1) if v % d == 0] if v <= 500 else ds == sorted(ds)
    prod = 1
    for p, e in factorize(v).items():
        prod *= p ** e
    assert prod == v


def test_count_is_weighted_census():
    for v in range(2, 200):
        c = chain_census(v).counts
        assert count_classes(v) == sum(n * factorial(s) for s, n in c.items())


def test_divisor_chain_validation():
    assert str(DivisorChain((1, 2, 4))) == "1<2<4"
    with pytest.raises(ValueError):
        DivisorChain((1, 4, 6))
    with pytest.raises(ValueError):
        DivisorChain((2, 4))
    with pytest.raises(ValueError):
        strict_chains(1)
