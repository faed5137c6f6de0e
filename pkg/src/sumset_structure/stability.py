"""Which sets need ``m`` close to ``l - n + 2`` for the structure of ``mA``.

Above the stability threshold the only sets whose ``m``-fold sumset is not
``[0, ml]`` minus both gap sets are the dense subsets of
``{0, 1} | [m+2, l]`` (head family) and their mirror images (tail family).
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial, reduce
from math import gcd

from .errors import ConsistencyError, InvalidArgs, TheoremViolation
from .intset import DEFAULT_CAP, GeneratorSet, generator_sets, m_fold, reflect
from .parallel import ordered_map
from .semigroup import exceptional_set
from .structure import StructureVerdict, shape_params, verdict_from


class Outcome(str, enum.Enum):
    HOLDS = "Holds"
    FAILS_HEAD_FAMILY = "FailsHeadFamily"
    FAILS_TAIL_FAMILY = "FailsTailFamily"
    FAILS_UNEXPECTED = "FailsUnexpected"


@dataclass(frozen=True)
class StabilityVerdict:
    m: int
    outcome: Outcome
    witness: int | None
    structure: StructureVerdict | None = None


def _threshold(l: int, n: int) -> int:
    # ceil((2l - 3n + 9) / 2) and ceil(2(l - n + 2) / 3)
    return max(-(-(2 * l - 3 * n + 9) // 2), -(-2 * (l - n + 2) // 3))


def stab_threshold(l: int, n: int) -> int:
    """Least integer ``m >= max(l - 3n/2 + 9/2, 2(l - n + 2)/3)``."""
    if n < 6:
        raise InvalidArgs(f"stability threshold needs n >= 6, got n={n}")
    if l <= n:
        raise InvalidArgs(f"stability threshold needs l > n, got l={l}, n={n}")
    real = max(Fraction(2 * l - 3 * n + 9, 2), Fraction(2 * (l - n + 2), 3))
    if not real < l - n + 2:
        raise TheoremViolation(f"stability bound {real} is not below l-n+2 for l={l}, n={n}")
    return _threshold(l, n)


def in_head_family(A: GeneratorSet, m: int) -> bool:
    """``{0, 1} <= A <= {0, 1} | [m+2, l]``."""
    el = A.elements
    return el[1] == 1 and all(a >= m + 2 for a in el[2:])


def in_tail_family(A: GeneratorSet, m: int) -> bool:
    """``{l-1, l} <= A <= [0, l-m-2] | {l-1, l}``."""
    el, l = A.elements, A.l
    return el[-2] == l - 1 and all(a <= l - m - 2 for a in el[:-2])


def stability_check(A: GeneratorSet, m: int, *, exploratory: bool = False, cap: int = DEFAULT_CAP) -> StabilityVerdict:
    """Classify ``A`` at multiplicity ``m`` and confirm the classification on ``mA``.

    In exploratory mode (meant for ``n = 5``) preconditions are relaxed and
    observations are reported without being judged.
    """
    if not exploratory:
        bound = stab_threshold(A.l, A.n)
        if m < bound:
            raise InvalidArgs(f"m={m} is below the stability threshold {bound}")
    head, tail = in_head_family(A, m), in_tail_family(A, m)
    if head and tail:
        raise ConsistencyError(f"{A} matches both exceptional families at m={m}")

    E, E2 = exceptional_set(A), exceptional_set(reflect(A))
    mA = m_fold(A, m, cap=cap)
    try:
        v = verdict_from(A, m, mA, E, E2, shape_params(A))
    except TheoremViolation:
        if not exploratory:
            raise
        return StabilityVerdict(m, Outcome.FAILS_UNEXPECTED, None)
    top = m * A.l
    gaps, rgaps = set(E.gaps), set(E2.gaps)

    if v.holds:
        if (head or tail) and not exploratory:
            raise TheoremViolation(f"{A} is in an exceptional family but the structure holds at m={m}", A)
        return StabilityVerdict(m, Outcome.HOLDS, None, v)

    if head:
        w = m + 1
        # w is missing from mA yet neither a gap nor a reflected gap
        confirmed = v.witness == w and w not in mA and w not in gaps and (top - w) not in rgaps
        if confirmed or exploratory:
            return StabilityVerdict(m, Outcome.FAILS_HEAD_FAMILY if confirmed else Outcome.FAILS_UNEXPECTED, w, v)
        raise TheoremViolation(f"head-family set {A} fails at m={m} without witness {w}", v)
    if tail:
        w = top - m - 1
        confirmed = w not in mA and w not in gaps and (top - w) not in rgaps
        if confirmed or exploratory:
            return StabilityVerdict(m, Outcome.FAILS_TAIL_FAMILY if confirmed else Outcome.FAILS_UNEXPECTED, w, v)
        raise TheoremViolation(f"tail-family set {A} fails at m={m} without witness {w}", v)
    if exploratory:
        return StabilityVerdict(m, Outcome.FAILS_UNEXPECTED, v.witness, v)
    raise TheoremViolation(f"{A} fails the structure at m={m} outside both families", v)


@dataclass
class StabilityReport:
    l: int
    n: int
    m: int
    scanned: int
    skipped_non_coprime: int
    counts: dict[str, int]
    failures: list[dict] = field(default_factory=list)
    exploratory: bool = False

    @property
    def family_match(self) -> bool:
        """Whether the failing sets are exactly the family members (ignores exploratory)."""
        expected = {
            tuple(el)
            for el in generator_sets(self.l, self.n)
            if in_head_family(GeneratorSet(el), self.m) or in_tail_family(GeneratorSet(el), self.m)
        }
        return expected == {tuple(f["set"]) for f in self.failures}


def _check_one(el: tuple[int, ...], m: int, exploratory: bool) -> tuple[str, int | None]:
    v = stability_check(GeneratorSet(el), m, exploratory=exploratory)
    return v.outcome.value, v.witness


def stability_scan(
    l: int, n: int, m: int | None = None, *, exploratory: bool = False, workers: int | None = 1
) -> StabilityReport:
    """Run ``stability_check`` on every normalized set with the given ``l`` and ``n``.

    Sets whose elements share a factor are skipped and counted, not rescaled.
    """
    if exploratory:
        if n < 3 or l <= n:
            raise InvalidArgs(f"need 3 <= n < l, got l={l}, n={n}")
        m = _threshold(l, n) if m is None else m
    else:
        bound = stab_threshold(l, n)
        m = bound if m is None else m
        if m < bound:
            raise InvalidArgs(f"m={m} is below the stability threshold {bound}")
    candidates = list(generator_sets(l, n, include_non_coprime=True))
    sets = [el for el in candidates if reduce(gcd, el) == 1]
    results = ordered_map(partial(_check_one, m=m, exploratory=exploratory), sets, workers)
    counts = Counter({o.value: 0 for o in Outcome})
    failures = []
    for el, (outcome, witness) in zip(sets, results):
        counts[outcome] += 1
        if outcome != Outcome.HOLDS.value:
            failures.append({"set": list(el), "outcome": outcome, "witness": witness})
    report = StabilityReport(
        l=l, n=n, m=m, scanned=len(sets), skipped_non_coprime=len(candidates) - len(sets),
        counts=dict(counts), failures=failures, exploratory=exploratory,
    )
    if not exploratory and not report.family_match:
        raise TheoremViolation(f"failures at l={l}, n={n}, m={m} are not exactly the family sets", report)
    return report
