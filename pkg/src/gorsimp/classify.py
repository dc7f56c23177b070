"""Enumerate, build and cross-check every class of type-(v, k) groups."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .builder import ClassData, build_pairs
from .divisor_lattice import ChainCensus, chain_census, count_classes, strict_chains
from .exceptions import GorsimpError, InternalConsistencyError
from .group_core import (
    CanonicalKey,
    HeightedGroup,
    canonical_key,
    hstar_vector,
    is_type,
    permute,
    zero_coordinates,
)
from .tower import extract_data


class ClassificationError(InternalConsistencyError):
    def __init__(self, message: str, data: ClassData | None = None):
        super().__init__(message if data is None else f"{message} [{data}]")
        self.data = data


@dataclass(frozen=True)
class ClassRecord:
    data: ClassData
    group: HeightedGroup
    key: CanonicalKey
    hstar: tuple
    generators: tuple  # c_1, ..., c_s zero-padded to the full width

    @property
    def N(self) -> int:
        return self.group.N

    @property
    def dimension(self) -> int:
        return self.group.N - 1


@dataclass
class ClassificationResult:
    v: int
    k: int
    classes: list
    census: ChainCensus
    total: int

    def per_chain(self) -> dict:
        out: dict = {}
        for rec in self.classes:
            out[rec.data.chain] = out.get(rec.data.chain, 0) + 1
        return out


def _subset_sequences(chain: tuple) -> Iterator[tuple]:
    s = len(chain) - 1

    def rec(i, alive, acc):
        if i > s:
            yield tuple(acc)
            return
        for mask in range(1 << len(alive)):
            J = frozenset(a for b, a in enumerate(alive) if mask >> b & 1)
            nxt = sorted((set(alive) - J) | {i})
            acc.append(J)
            yield from rec(i + 1, nxt, acc)
            acc.pop()

    yield from rec(1, [], [])


def enumerate_data(v: int, k: int = 1) -> list:
    """Every (chain, J_1..J_s) for (v, k), chains in lex order, subsets by bitmask."""
    out = []
    for ch in strict_chains(v):
        for subsets in _subset_sequences(ch.terms):
            out.append(ClassData(k, ch.terms, subsets))
    return out


def expected_hstar(v: int, k: int, width: int) -> list:
    h = [0] * width
    for j in range(v):
        h[j * k] = 1
    return h


def build_record(data: ClassData) -> ClassRecord:
    pairs = build_pairs(data)
    G = pairs[-1][0]
    gens = tuple(c.pad(G.N - len(c)) for _, _, c in pairs)
    if not is_type(G, (data.v, data.k)):
        raise ClassificationError("built group is not of the requested type", data)
    if zero_coordinates(G):
        raise ClassificationError("built group has a zero coordinate", data)
    hstar = hstar_vector(G)
    if hstar != expected_hstar(data.v, data.k, G.N):
        raise ClassificationError(f"unexpected h* vector {hstar}", data)
    return ClassRecord(data, G, canonical_key(G), tuple(hstar), gens)


def iter_records(v: int, k: int, workers: int = 1) -> Iterator[ClassRecord]:
    """Records in enumeration order; the order does not depend on ``workers``."""
    data = enumerate_data(v, k)
    if workers <= 1:
        yield from map(build_record, data)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(build_record, data, chunksize=max(1, len(data) // (4 * workers)))


def stream_classes(v: int, k: int = 1, workers: int = 1) -> Iterator[ClassRecord]:
    """Yield every class record in enumeration order, keeping only the keys.

    Raises on a key collision as soon as it appears, and after the last
    record if the number of classes disagrees with the chain count.
    """
    if v < 2 or k < 1:
        raise ValueError("need v >= 2 and k >= 1")
    seen: dict = {}
    for rec in iter_records(v, k, workers):
        other = seen.get(rec.key)
        if other is not None:
            raise ClassificationError(f"canonical key collides with [{other}]", rec.data)
        seen[rec.key] = rec.data
        yield rec
    total = count_classes(v)
    if len(seen) != total:
        raise ClassificationError(f"built {len(seen)} classes but the chain count gives {total}")


def classify(v: int, k: int = 1, workers: int = 1) -> ClassificationResult:
    classes = list(stream_classes(v, k, workers))
    return ClassificationResult(v, k, classes, chain_census(v), len(classes))


@dataclass
class BijectionReport:
    v: int
    k: int
    checked: int = 0
    failures: list = field(default_factory=list)  # (ClassData, description)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_bijection(v: int, k: int = 1, permuted: bool = False, seed: int = 0) -> BijectionReport:
    """Check extract_data(build_from_data(D)) == D for every datum D.

    With ``permuted`` the group's coordinates are shuffled (seeded) first.
    """
    import random

    rng = random.Random(seed)
    report = BijectionReport(v, k)
    for data in enumerate_data(v, k):
        report.checked += 1
        try:
            G = build_pairs(data)[-1][0]
            if permuted:
                perm = list(range(G.N))
                rng.shuffle(perm)
                G = permute(G, perm)
            got = extract_data(G, k)
        except GorsimpError as exc:
            report.failures.append((data, f"{type(exc).__name__}: {exc}"))
            continue
        if got != data:
            report.failures.append((data, f"extracted {got}"))
    return report


def partial_sequence_profile(s: int) -> list:
    """A(t, r) for t = 0..s: number of (J_1..J_t) leaving r alive symbols, by enumeration."""
    profile = [{0: 1}]
    states = [()]
    for t in range(1, s + 1):
        nxt = []
        for alive in states:
            for size in range(len(alive) + 1):
                for J in itertools.combinations(alive, size):
                    nxt.append(tuple(sorted(set(alive) - set(J))) + (t,))
        states = nxt
        counts: dict = {}
        for alive in states:
            counts[len(alive)] = counts.get(len(alive), 0) + 1
        profile.append(counts)
    return profile
