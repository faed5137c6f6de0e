"""Exact arithmetic on finite sets of nonnegative integers.

Sets are stored as Python ints used as bitmaps: bit ``i`` set means ``i`` is
a member.  Shifts and ORs on arbitrary-precision ints do the heavy lifting,
so a sumset costs a handful of big-int operations per *run* of consecutive
members rather than per member.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from itertools import combinations_with_replacement
from math import gcd
from typing import Iterable, Iterator

from .errors import CapacityError, EmptySet, InvalidSet

DEFAULT_CAP = 1 << 22
MAX_ELEMENT = (1 << 63) - 1

_ONES = re.compile("1+")


def _runs(bits: int) -> list[tuple[int, int]]:
    """Maximal blocks ``(lo, hi)`` of set bits, in increasing order."""
    if not bits:
        return []
    s = format(bits, "b")[::-1]
    return [(m.start(), m.end() - 1) for m in _ONES.finditer(s)]


def _thicken(bits: int, width: int) -> int:
    """Return the bitmap of ``X + [0, width]``."""
    cover = 1
    while 2 * cover <= width + 1:
        bits |= bits << cover
        cover *= 2
    if cover < width + 1:
        bits |= bits << (width + 1 - cover)
    return bits


def _sumset_bits(x: int, y: int) -> int:
    if not x or not y:
        return 0
    rx, ry = _runs(x), _runs(y)
    if len(rx) < len(ry):
        x, ry = y, rx
    out = 0
    thick: dict[int, int] = {}
    for lo, hi in ry:
        w = hi - lo
        if w not in thick:
            thick[w] = _thicken(x, w)
        out |= thick[w] << lo
    return out


@dataclass(frozen=True)
class DenseSet:
    """Subset of ``[0, universe]`` held as a membership bitmap."""

    universe: int
    bits: int = 0

    def __post_init__(self):
        if self.universe < 0:
            raise ValueError("universe must be nonnegative")
        if self.bits < 0 or self.bits >> (self.universe + 1):
            raise ValueError("members must lie in [0, universe]")

    @classmethod
    def from_iterable(cls, members: Iterable[int], universe: int | None = None) -> DenseSet:
        members = list(members)
        if universe is None:
            universe = max(members, default=0)
        bits = 0
        for x in members:
            bits |= 1 << x
        return cls(universe, bits)

    @classmethod
    def interval(cls, lo: int, hi: int, universe: int | None = None) -> DenseSet:
        if universe is None:
            universe = max(hi, 0)
        if hi < lo:
            return cls(universe, 0)
        return cls(universe, ((1 << (hi - lo + 1)) - 1) << lo)

    def __contains__(self, x: int) -> bool:
        return 0 <= x <= self.universe and (self.bits >> x) & 1 == 1

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        for lo, hi in _runs(self.bits):
            yield from range(lo, hi + 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def to_list(self) -> list[int]:
        return list(self)

    def runs(self) -> list[tuple[int, int]]:
        return _runs(self.bits)

    def min(self) -> int:
        if not self.bits:
            raise EmptySet("empty set has no minimum")
        return (self.bits & -self.bits).bit_length() - 1

    def max(self) -> int:
        if not self.bits:
            raise EmptySet("empty set has no maximum")
        return self.bits.bit_length() - 1

    def with_universe(self, universe: int) -> DenseSet:
        """Re-home the set in ``[0, universe]``, dropping members above it."""
        return DenseSet(universe, self.bits & ((1 << (universe + 1)) - 1))

    def mirror(self, pivot: int) -> DenseSet:
        """``{pivot - x}`` over members ``x <= pivot``; universe becomes ``pivot``."""
        s = format(self.bits & ((1 << (pivot + 1)) - 1), "b").zfill(pivot + 1)
        return DenseSet(pivot, int(s[::-1], 2) if pivot >= 0 else 0)

    def __or__(self, other: DenseSet) -> DenseSet:
        return DenseSet(max(self.universe, other.universe), self.bits | other.bits)

    def __and__(self, other: DenseSet) -> DenseSet:
        return DenseSet(min(self.universe, other.universe), self.bits & other.bits)

    def __sub__(self, other: DenseSet) -> DenseSet:
        return DenseSet(self.universe, self.bits & ~other.bits)

    def __xor__(self, other: DenseSet) -> DenseSet:
        return DenseSet(max(self.universe, other.universe), self.bits ^ other.bits)

    def __repr__(self) -> str:
        items = self.to_list()
        if len(items) > 12:
            return f"DenseSet(universe={self.universe}, size={len(items)}, runs={len(self.runs())})"
        return f"DenseSet(universe={self.universe}, {set(items) if items else '{}'})"


@dataclass(frozen=True)
class GeneratorSet:
    """Finite integer set with minimum 0, gcd 1 and at least three elements."""

    elements: tuple[int, ...]

    def __post_init__(self):
        el = self.elements
        if len(el) < 3:
            raise InvalidSet(f"need at least 3 elements, got {len(el)}")
        if el[0] != 0:
            raise InvalidSet("minimum element must be 0")
        if any(b <= a for a, b in zip(el, el[1:])):
            raise InvalidSet("elements must be strictly increasing")
        if reduce(gcd, el) != 1:
            raise InvalidSet("gcd of elements must be 1")
        if el[-1] > MAX_ELEMENT:
            raise InvalidSet("elements must fit in 64 bits")

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def l(self) -> int:  # noqa: E743
        return self.elements[-1]

    def dense(self) -> DenseSet:
        return DenseSet.from_iterable(self.elements, self.l)

    def __contains__(self, x: int) -> bool:
        return x in set(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def literal(self) -> str:
        return ",".join(map(str, self.elements))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


def normalize(raw: Iterable[int], strict: bool = False) -> GeneratorSet:
    """Sort, deduplicate, shift to minimum 0 and divide out the gcd.

    With ``strict=True`` a set whose translate has gcd > 1 is rejected
    instead of being rescaled.
    """
    values = sorted(set(int(x) for x in raw))
    if len(values) < 3:
        raise InvalidSet(f"need at least 3 distinct values, got {len(values)}")
    lo = values[0]
    shifted = [v - lo for v in values]
    g = reduce(gcd, shifted)
    if g != 1:
        if strict:
            raise InvalidSet(f"set has gcd {g} after translation (strict mode)")
        shifted = [v // g for v in shifted]
    return GeneratorSet(tuple(shifted))


def parse_set_literal(text: str) -> list[int]:
    """Parse ``"0, 3,5"`` into ``[0, 3, 5]``."""
    parts = [p.strip() for p in text.strip().strip("{}[]").split(",")]
    if not parts or parts == [""]:
        raise InvalidSet("empty set literal")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InvalidSet(f"not a comma-separated list of integers: {text!r}") from None


def reflect(A: GeneratorSet) -> GeneratorSet:
    l = A.l
    return GeneratorSet(tuple(sorted(l - a for a in A.elements)))


def sumset(X: DenseSet, Y: DenseSet, universe: int | None = None, cap: int = DEFAULT_CAP) -> DenseSet:
    """Exact ``X + Y``; members above ``universe`` (if given) are discarded."""
    if universe is None:
        universe = X.universe + Y.universe
    if universe > cap:
        raise CapacityError(f"sumset universe {universe} exceeds cap {cap}")
    bits = _sumset_bits(X.bits, Y.bits)
    if bits >> (universe + 1):
        bits &= (1 << (universe + 1)) - 1
    return DenseSet(universe, bits)


def _check_mfold_args(A: GeneratorSet, m: int, cap: int) -> None:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    if m * A.l > cap:
        raise CapacityError(f"m*l = {m * A.l} exceeds cap {cap}")


def m_fold(A: GeneratorSet, m: int, cap: int = DEFAULT_CAP) -> DenseSet:
    """The sumset ``mA`` over ``[0, m*l]``, by binary doubling.

    Since ``0`` is in ``A``, ``jA + j'A = (j+j')A``, so square-and-multiply
    on the bits of ``m`` is exact.
    """
    _check_mfold_args(A, m, cap)
    base = A.dense()
    result = base
    for bit in format(m, "b")[1:]:
        result = sumset(result, result, cap=cap)
        if bit == "1":
            result = sumset(result, base, cap=cap)
    return result


def m_fold_naive(A: GeneratorSet, m: int, cap: int = DEFAULT_CAP) -> DenseSet:
    """``mA`` by ``m - 1`` successive additions of ``A``."""
    _check_mfold_args(A, m, cap)
    base = A.dense()
    result = base
    for _ in range(m - 1):
        result = sumset(result, base, cap=cap)
    return result


def sumset_calls(m: int, method: str = "doubling") -> int:
    """Number of pairwise sumsets each ``m_fold`` method performs."""
    if method == "naive":
        return m - 1
    b = format(m, "b")
    return 2 * (len(b) - 1) - b[1:].count("0")


def longest_run(X: DenseSet) -> tuple[int, int]:
    """Leftmost longest block of consecutive members as ``(start, length)``."""
    runs = X.runs()
    if not runs:
        raise EmptySet("longest_run of an empty set")
    lo, hi = max(runs, key=lambda r: (r[1] - r[0], -r[0]))
    return lo, hi - lo + 1


def _colex(k: int, hi: int) -> Iterator[tuple[int, ...]]:
    # k-subsets of [1, hi] in colexicographic order
    if k == 0:
        yield ()
        return
    for top in range(k, hi + 1):
        for rest in _colex(k - 1, top - 1):
            yield rest + (top,)


def generator_sets(l: int, n: int, *, include_non_coprime: bool = False) -> Iterator[tuple[int, ...]]:
    """All ``{0} | interior | {l}`` with ``n - 2`` interior points, colex order.

    Yields raw tuples; those with gcd > 1 are skipped unless requested.
    """
    if n < 3 or n > l + 1:
        return
    for interior in _colex(n - 2, l - 1):
        el = (0,) + interior + (l,)
        if include_non_coprime or reduce(gcd, interior, l) == 1:
            yield el


def all_generator_sets(l_max: int, l_min: int = 2) -> Iterator[GeneratorSet]:
    """Every normalized set with ``l_min <= l <= l_max``, ordered by (l, n, colex)."""
    for l in range(max(l_min, 2), l_max + 1):
        for n in range(3, l + 2):
            for el in generator_sets(l, n):
                yield GeneratorSet(el)


def m_fold_enumerate(A: GeneratorSet, m: int) -> DenseSet:
    """``mA`` by listing every multiset of ``m`` elements; only for tiny inputs."""
    return DenseSet.from_iterable({sum(c) for c in combinations_with_replacement(A.elements, m)}, m * A.l)
