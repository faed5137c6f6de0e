"""Numerical semigroup generated by a normalized set: gaps and Frobenius number.

Two independent routes are provided: a bitmap closure over a provably safe
window (``exceptional_set``) and a shortest-path computation of the minimal
semigroup element in each residue class (``frobenius_apery``).
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

from .intset import DenseSet, GeneratorSet, _runs
from .errors import TheoremViolation


def shape_kr(l: int, n: int) -> tuple[int, int]:
    """Euclidean division ``l - 1 = k (n - 2) + r`` with ``0 <= r <= n - 3``."""
    return divmod(l - 1, n - 2)


def dixmier_window(A: GeneratorSet) -> int:
    """Upper end ``k (l - n + r + 1)`` of the window that contains every gap plus one."""
    k, r = shape_kr(A.l, A.n)
    return k * (A.l - A.n + r + 1)


@dataclass(frozen=True)
class GapData:
    gaps: tuple[int, ...]
    frobenius: int

    def __post_init__(self):
        expected = self.gaps[-1] if self.gaps else -1
        if self.frobenius != expected:
            raise ValueError(f"frobenius {self.frobenius} != max(gaps) {expected}")

    def as_dense(self) -> DenseSet:
        return DenseSet.from_iterable(self.gaps, max(self.frobenius, 0))

    def __len__(self) -> int:
        return len(self.gaps)


def semigroup_bits(A: GeneratorSet, bound: int) -> int:
    """Bitmap of ``S(A) ∩ [0, bound]``.

    Closing under one generator at a time is exact: a set closed under
    ``+a`` stays closed under ``+a`` after closing under ``+b``.
    """
    mask = (1 << (bound + 1)) - 1
    bits = 1
    for a in A.elements[1:]:
        step = a
        while step <= bound:
            bits = (bits | (bits << step)) & mask
            step *= 2
    return bits


def exceptional_set(A: GeneratorSet) -> GapData:
    """Exact gap set ``E(A)`` and Frobenius number (``-1`` when there are no gaps)."""
    smallest = A.elements[1]
    if smallest == 1:
        return GapData((), -1)
    bound = dixmier_window(A)
    if bound < smallest:
        raise TheoremViolation(f"window bound {bound} below smallest generator of {A}")
    # every gap lies below `bound`; `smallest` consecutive members from `bound` on prove it
    top = bound + smallest - 1
    bits = semigroup_bits(A, top)
    window = (1 << smallest) - 1
    if (bits >> bound) != window:
        raise TheoremViolation(
            f"semigroup of {A} is not saturated on [{bound}, {top}]",
            counterexample={"set": list(A.elements), "bound": bound},
        )
    gap_bits = ~bits & ((1 << (bound + 1)) - 2)
    gaps = tuple(x for lo, hi in _runs(gap_bits) for x in range(lo, hi + 1))
    return GapData(gaps, gaps[-1] if gaps else -1)


def apery_set(A: GeneratorSet) -> list[int]:
    """Least semigroup element in each residue class modulo the smallest generator."""
    a = A.elements[1]
    dist = [None] * a
    dist[0] = 0
    heap = [(0, 0)]
    gens = A.elements[2:]
    while heap:
        d, res = heapq.heappop(heap)
        if d != dist[res]:
            continue
        for g in gens:
            nd = d + g
            nr = nd % a
            if dist[nr] is None or nd < dist[nr]:
                dist[nr] = nd
                heapq.heappush(heap, (nd, nr))
    return dist


def frobenius_apery(A: GeneratorSet) -> int:
    if A.elements[1] == 1:
        return -1
    return max(apery_set(A)) - A.elements[1]


def is_representable(z: int, A: GeneratorSet) -> bool:
    """Whether ``z`` is a nonnegative integer combination of ``A`` (Apéry test)."""
    if z < 0:
        return False
    w = apery_set(A)
    return z >= w[z % A.elements[1]]
