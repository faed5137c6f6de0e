"""Head / interval / tail structure of ``mA`` and the sharp gap-length bound.

For ``m >= M = l - n + 2`` the sumset ``mA`` is ``[0, ml]`` with the gaps
``E`` removed at the bottom and the reflected gaps ``ml - E'`` removed at the
top, where ``E'`` belongs to ``l - A``.  The block between ``max(E)`` and
``min(ml - E')`` has length at least ``(m - M + 1) l + delta``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, ConstraintViolation, DegenerateFamily, InvalidArgs, NotDivisible, TheoremViolation
from .intset import DEFAULT_CAP, DenseSet, GeneratorSet, m_fold, reflect, sumset
from .semigroup import GapData, exceptional_set, shape_kr


@dataclass(frozen=True)
class ShapeParams:
    l: int
    n: int
    k: int
    r: int
    M: int
    delta: int

    def delta_lower_bound(self) -> Fraction:
        """The quadratic lower estimate ``(1 - 1/k - 1/(n-2)) l^2`` (exact)."""
        return (1 - Fraction(1, self.k) - Fraction(1, self.n - 2)) * self.l ** 2

    def check(self) -> bool:
        return (
            self.l - 1 == self.k * (self.n - 2) + self.r
            and self.k >= 1
            and 0 <= self.r <= self.n - 3
            and self.M == self.l - self.n + 2
            and self.delta >= 2
            and self.delta > self.delta_lower_bound()
        )


def shape_params_ln(l: int, n: int) -> ShapeParams:
    if n < 3 or n > l + 1:
        raise InvalidArgs(f"no normalized set has l={l}, n={n}")
    k, r = shape_kr(l, n)
    delta = l * (k - 1) * (n - 3) + r * k * (n - 3) + r * r + k + 1
    p = ShapeParams(l=l, n=n, k=k, r=r, M=l - n + 2, delta=delta)
    if not p.check():
        raise TheoremViolation(f"shape parameter invariants fail for l={l}, n={n}", counterexample=p)
    return p


def shape_params(A: GeneratorSet) -> ShapeParams:
    return shape_params_ln(A.l, A.n)


@dataclass(frozen=True)
class StructureVerdict:
    m: int
    holds: bool
    witness: int | None
    gap_length: int
    bound: int
    tight: bool


@dataclass(frozen=True)
class Decomposition:
    m: int
    head: DenseSet
    run_lo: int
    run_hi: int
    tail: DenseSet

    @property
    def tail_profile(self) -> DenseSet:
        """The tail pulled back to ``[0, e']`` via ``z -> ml - z``; independent of ``m``."""
        top = self.tail.universe
        return DenseSet.from_iterable(top - x for x in self.tail)

    def union(self) -> DenseSet:
        top = self.tail.universe
        run = DenseSet.interval(self.run_lo, self.run_hi, top)
        return DenseSet(top, self.head.bits | run.bits | self.tail.bits)


@dataclass(frozen=True)
class ThresholdScan:
    verdicts: tuple[StructureVerdict, ...]
    m0: int | None


def _gaps_pair(A: GeneratorSet) -> tuple[GapData, GapData]:
    return exceptional_set(A), exceptional_set(reflect(A))


def predicted_sumset(m: int, l: int, E: GapData, E2: GapData) -> DenseSet:
    """``[0, ml]`` minus ``E`` and minus ``ml - E'``."""
    top = m * l
    full = (1 << (top + 1)) - 1
    low = E.as_dense().with_universe(top).bits
    high = E2.as_dense().mirror(top).bits if E2.gaps else 0
    return DenseSet(top, full & ~low & ~high)


def verdict_from(
    A: GeneratorSet, m: int, mA: DenseSet, E: GapData, E2: GapData, params: ShapeParams | None = None
) -> StructureVerdict:
    """Compare a precomputed ``mA`` against the predicted shape."""
    p = params or shape_params(A)
    rhs = predicted_sumset(m, A.l, E, E2)
    diff = mA.bits ^ rhs.bits
    witness = (diff & -diff).bit_length() - 1 if diff else None
    gap_length = m * A.l - E.frobenius - E2.frobenius
    bound = (m - p.M + 1) * A.l + p.delta
    v = StructureVerdict(
        m=m, holds=witness is None, witness=witness, gap_length=gap_length, bound=bound, tight=gap_length == bound
    )
    if m >= p.M and (not v.holds or gap_length < bound):
        raise TheoremViolation(
            f"structure theorem fails for {A} at m={m}",
            counterexample={"set": list(A.elements), "verdict": v},
        )
    return v


def structure_check(A: GeneratorSet, m: int, cap: int = DEFAULT_CAP) -> StructureVerdict:
    E, E2 = _gaps_pair(A)
    return verdict_from(A, m, m_fold(A, m, cap=cap), E, E2)


def decompose(A: GeneratorSet, m: int, cap: int = DEFAULT_CAP) -> Decomposition:
    """Split ``mA`` into head, central interval and tail.

    The union identity is only enforced for ``m >= M``.
    """
    E, E2 = _gaps_pair(A)
    p = shape_params(A)
    top = m * A.l
    e, e2 = E.frobenius, E2.frobenius
    head = DenseSet.interval(0, e) - E.as_dense() if e >= 0 else DenseSet(0, 0)
    if e2 >= 0:
        tail_profile = DenseSet.interval(0, e2) - E2.as_dense()
        tail = tail_profile.mirror(top)
    else:
        tail = DenseSet(top, 0)
    d = Decomposition(m=m, head=head, run_lo=e + 1, run_hi=top - e2 - 1, tail=tail)
    if m >= p.M:
        mA = m_fold(A, m, cap=cap)
        problems = []
        if d.run_lo > d.run_hi:
            problems.append("empty central interval")
        if head.bits & tail.bits:
            problems.append("head and tail overlap")
        if d.union().bits != mA.bits:
            problems.append("head | run | tail != mA")
        if problems:
            raise TheoremViolation(f"decomposition of {A} at m={m}: " + "; ".join(problems), counterexample=d)
    return d


def threshold_scan(A: GeneratorSet, m_max: int, cap: int = DEFAULT_CAP) -> ThresholdScan:
    """Verdicts for ``m = 1..m_max``; ``m0`` is the start of the final all-holding stretch."""
    p = shape_params(A)
    if m_max < p.M:
        raise InvalidArgs(f"m_max={m_max} is below the threshold M={p.M}")
    if m_max * A.l > cap:
        raise CapacityError(f"m_max*l = {m_max * A.l} exceeds cap {cap}")
    E, E2 = _gaps_pair(A)
    base = A.dense()
    mA = base
    verdicts = []
    for m in range(1, m_max + 1):
        if m > 1:
            mA = sumset(mA, base, cap=cap)
        verdicts.append(verdict_from(A, m, mA, E, E2, p))
    m0 = None
    for v in reversed(verdicts):
        if not v.holds:
            break
        m0 = v.m
    return ThresholdScan(tuple(verdicts), m0)


def lev_family_union(l: int, d: int) -> GeneratorSet:
    """``{0, d, 2d, ..., l} | {l - 1}`` for a nontrivial divisor ``d`` of ``l``."""
    if d <= 0 or l <= 0:
        raise InvalidArgs("l and d must be positive")
    if l % d:
        raise NotDivisible(f"{d} does not divide {l}")
    if d in (1, l):
        raise DegenerateFamily(f"d={d} is a trivial divisor of {l}")
    return GeneratorSet(tuple(sorted(set(range(0, l + 1, d)) | {l - 1})))


def union_family_prediction(l: int, d: int) -> dict:
    n = l // d + 2
    return {"l": l, "n": n, "k": d - 1, "r": n - 3, "frobenius": (d - 1) * (l - 2) - 1, "reflected_frobenius": -1}


def lev_family_block(s: int, d: int, t: int) -> GeneratorSet:
    """``{0, d, ..., sd} | {sd - 1 - td, ..., sd - 1 - d, sd - 1}``."""
    if s <= 0 or t <= 0:
        raise ConstraintViolation("s and t must be positive integers")
    if not t < s:
        raise ConstraintViolation(f"t < s violated (s={s}, t={t})")
    if not d >= 2:
        raise ConstraintViolation(f"2 <= d violated (d={d})")
    # d < s/t + 1, cross-multiplied
    if not d * t < s + t:
        raise ConstraintViolation(f"d < s/t + 1 violated (s={s}, d={d}, t={t})")
    l = s * d
    return GeneratorSet(tuple(sorted(set(range(0, l + 1, d)) | {l - 1 - j * d for j in range(t + 1)})))


def block_family_prediction(s: int, d: int, t: int) -> dict:
    return {"l": s * d, "n": s + t + 2, "k": d - 1, "frobenius": (d - 1) * ((s - t) * d - 2) - 1}


def union_family_grid(l_max: int) -> list[tuple[int, int]]:
    return [(l, d) for l in range(4, l_max + 1) for d in range(2, l // 2 + 1) if l % d == 0]


def block_family_grid(l_max: int) -> list[tuple[int, int, int]]:
    out = []
    for s in range(2, l_max // 2 + 1):
        for d in range(2, l_max // s + 1):
            for t in range(1, s):
                if d * t < s + t:
                    out.append((s, d, t))
    return out
