"""Exact arithmetic on vectors of [0,1)^N with coordinatewise addition mod 1.

A :class:`ModOneVector` stores its entries as integer numerators over one
common denominator, kept minimal so that equal vectors have equal
representations (and equal hashes).  The public view is always a tuple of
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .exceptions import HeightError, LengthMismatch


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point coordinates are not supported")
    return Fraction(x)


def frac_str(x: Fraction) -> str:
    """Lowest-terms string used in all serialized output ("0", "1/2", ...)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class ModOneVector:
    """Immutable element of [0,1)^N with exact rational entries.

    Entries given outside [0,1) are reduced modulo 1.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, entries: Iterable):
        fr = [_as_fraction(e) for e in entries]
        den = 1
        for f in fr:
            den = lcm(den, f.denominator)
        num = tuple((f.numerator * (den // f.denominator)) % den for f in fr)
        self._set(num, den)

    def _set(self, num: tuple, den: int) -> None:
        g = den
        for a in num:
            g = gcd(g, a)
            if g == 1:
                break
        if g > 1:
            num = tuple(a // g for a in num)
            den //= g
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)

    @classmethod
    def from_numerators(cls, numerators: Iterable[int], den: int) -> "ModOneVector":
        """Build ``(a_1/den, ..., a_N/den)`` reducing each a_i modulo den."""
        if den <= 0:
            raise ValueError("denominator must be positive")
        obj = cls.__new__(cls)
        obj._set(tuple(int(a) % den for a in numerators), int(den))
        return obj

    @classmethod
    def zero(cls, n: int) -> "ModOneVector":
        return cls.from_numerators((0,) * n, 1)

    @classmethod
    def blocks(cls, *parts: tuple) -> "ModOneVector":
        """Concatenate constant blocks: ``blocks((Fraction(1, 4), 2), (0, 3))``."""
        entries = []
        for value, count in parts:
            entries.extend([_as_fraction(value)] * count)
        return cls(entries)

    def __setattr__(self, name, value):
        raise AttributeError("ModOneVector is immutable")

    def __reduce__(self):
        return (ModOneVector.from_numerators, (self._num, self._den))

    @property
    def numerators(self) -> tuple:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def entries(self) -> tuple:
        return tuple(Fraction(a, self._den) for a in self._num)

    def numerators_over(self, den: int) -> tuple:
        """Numerators relative to ``den``, which must be a multiple of the own denominator."""
        q, r = divmod(den, self._den)
        if r:
            raise ValueError(f"{den} is not a multiple of {self._den}")
        return tuple(a * q for a in self._num)

    def __len__(self) -> int:
        return len(self._num)

    def __getitem__(self, i) -> Fraction:
        return Fraction(self._num[i], self._den)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModOneVector):
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        return hash((self._den, self._num))

    def __repr__(self) -> str:
        return "ModOneVector([" + ", ".join(frac_str(e) for e in self.entries) + "])"

    def __add__(self, other: "ModOneVector") -> "ModOneVector":
        return add_mod1(self, other)

    def __mul__(self, t: int) -> "ModOneVector":
        return scale_mod1(self, t)

    __rmul__ = __mul__

    def __neg__(self) -> "ModOneVector":
        return ModOneVector.from_numerators((-a for a in self._num), self._den)

    def height(self) -> int:
        return height(self)

    def raw_sum(self) -> Fraction:
        return Fraction(sum(self._num), self._den)

    def is_zero(self) -> bool:
        return not any(self._num)

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, a in enumerate(self._num) if a)

    def pad(self, extra: int) -> "ModOneVector":
        """Append ``extra`` zero coordinates."""
        return ModOneVector.from_numerators(self._num + (0,) * extra, self._den)

    def restrict(self, indices: Sequence[int]) -> "ModOneVector":
        return ModOneVector.from_numerators([self._num[i] for i in indices], self._den)

    def permute(self, perm: Sequence[int]) -> "ModOneVector":
        """Coordinate ``j`` of the result is coordinate ``perm[j]`` of self."""
        return ModOneVector.from_numerators([self._num[i] for i in perm], self._den)

    def to_strings(self) -> list:
        return [frac_str(e) for e in self.entries]


def add_mod1(a: ModOneVector, b: ModOneVector) -> ModOneVector:
    if len(a) != len(b):
        raise LengthMismatch(f"cannot add vectors of lengths {len(a)} and {len(b)}")
    den = lcm(a._den, b._den)
    qa, qb = den // a._den, den // b._den
    return ModOneVector.from_numerators((x * qa + y * qb for x, y in zip(a._num, b._num)), den)


def scale_mod1(a: ModOneVector, t: int) -> ModOneVector:
    """t-fold sum a + ... + a; ``t = 0`` gives the zero vector."""
    if t < 0:
        raise ValueError("scale factor must be nonnegative")
    return ModOneVector.from_numerators((x * t for x in a._num), a._den)


def height(a: ModOneVector) -> int:
    q, r = divmod(sum(a._num), a._den)
    if r:
        raise HeightError(
            f"coordinate sum {Fraction(sum(a._num), a._den)} is not an integer; "
            "vector is not in a valid height-graded group"
        )
    return q


def fractional_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def shift_sum_delta(d: int, n: int, s: int) -> Fraction:
    """Change of sum_{j<d} {j/d + s/(nd)} relative to sum_{j<d} j/d.

    The result always equals (s mod n)/n; it is computed literally here so it
    can be checked against that closed form.
    """
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    if not 0 <= s < n * d:
        raise ValueError(f"shift s={s} outside [0, {n * d})")
    alpha = Fraction(s, n * d)
    shifted = sum((fractional_part(Fraction(j, d) + alpha) for j in range(d)), Fraction(0))
    base = sum((Fraction(j, d) for j in range(d)), Fraction(0))
    return shifted - base
