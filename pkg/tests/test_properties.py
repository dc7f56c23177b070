"""Property suites that can be run on their own: ``pytest -m property``."""

import random
from fractions import Fraction

import pytest

from gorsimp.classify import classify
from gorsimp.group_core import coordinate_multiplicities_ok
from gorsimp.qz_arith import shift_sum_delta
from gorsimp.tower import coset_blocks_ok, cyclic_walk_interval, quotient_tower

pytestmark = pytest.mark.property


def check_shift_sums(limit=12):
    checked = 0
    for d in range(1, limit + 1):
        for n in range(1, limit + 1):
            for s in range(n * d):
                assert shift_sum_delta(d, n, s) == Fraction(s % n, n), (d, n, s)
                checked += 1
    return checked


def _steps_ok(seq):
    m = len(seq)
    return all(seq[(t + 1) % m] - seq[t] <= 1 for t in range(m))


def random_cyclic_walk(rng):
    """A random instance: half are rotated intervals, half arbitrary distinct integers.

    Returns (seq, expected lower end or None when the hypothesis fails).
    """
    m = rng.randint(1, 40)
    lo = rng.randint(-50, 50)
    if rng.random() < 0.5:
        r = rng.randrange(m)
        seq = list(range(lo + r, lo + m)) + list(range(lo, lo + r))
    else:
        m = min(m, 6)
        seq = rng.sample(range(lo, lo + m + rng.randint(0, 2)), m)
    return seq, (min(seq) if _steps_ok(seq) else None)


def check_cyclic_walks(seed, count=1000):
    rng = random.Random(seed)
    for _ in range(count):
        seq, lo = random_cyclic_walk(rng)
        if lo is None:
            with pytest.raises(ValueError):
                cyclic_walk_interval(seq)
        else:
            assert cyclic_walk_interval(seq) == lo, seq
            assert sorted(seq) == list(range(lo, lo + len(seq)))
    return count


def check_coordinate_multiplicities(vmax=60, k=1):
    checked = 0
    for v in range(2, vmax + 1):
        for rec in classify(v, k).classes:
            assert coordinate_multiplicities_ok(rec.group), rec.data
            checked += 1
    return checked


def check_coset_blocks(vmax=24, ks=(1, 2)):
    checked = 0
    for k in ks:
        for v in range(2, vmax + 1):
            for rec in classify(v, k).classes:
                stages = quotient_tower(rec.group, k)
                assert coset_blocks_ok(rec.group, stages, k), rec.data
                checked += len(stages)
    return checked


def test_shift_sum_identity():
    assert check_shift_sums() > 0


def test_cyclic_walk_interval(seed):
    print(f"cyclic walk seed = {seed}")
    assert check_cyclic_walks(seed) == 1000


def test_cyclic_walk_rejects_repeats():
    with pytest.raises(ValueError):
        cyclic_walk_interval([1, 1, 2])
    with pytest.raises(ValueError):
        cyclic_walk_interval([])


def test_coordinate_multiplicities_all_classes():
    assert check_coordinate_multiplicities() > 0


def test_coordinate_multiplicities_k2():
    assert check_coordinate_multiplicities(vmax=24, k=2) > 0


def test_coset_block_structure():
    assert check_coset_blocks() > 0


def test_powers_of_height_k_element():
    from gorsimp.tower import unique_height_k_element

    for k in (1, 2):
        for v in range(2, 25):
            for rec in classify(v, k).classes:
                a = unique_height_k_element(rec.group, k)
                x, t = a, 1
                while not x.is_zero():
                    assert x.height() == t * k, rec.data
                    x, t = x + a, t + 1
                assert v % t == 0


def test_quotient_heights_subadditive():
    from gorsimp.tower import _cosets

    for v in range(2, 25):
        for rec in classify(v, 1).classes:
            G = rec.group
            prev = [0]
            for st in quotient_tower(G, 1):
                cosets = _cosets(G, prev)
                M = len(prev)
                label = {r: i for i, rows in enumerate(cosets) for r in rows}
                q = [min(G.heights[r] for r in rows) for rows in cosets]
                assert all(x % M == 0 for x in q)
                reps = [rows[0] for rows in cosets]
                for a in reps:
                    for b in reps:
                        s = G.row_of((G.table[a] + G.table[b]) % G.den)
                        assert q[label[s]] <= q[label[a]] + q[label[b]], rec.data
                prev = sorted(st.rows)
