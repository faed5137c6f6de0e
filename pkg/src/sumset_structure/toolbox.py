"""Small-scale brute-force checks of the classical sumset estimates.

Everything here returns ``True`` when the estimate holds on the given
instance.  Cyclic groups ``Z/q`` are represented by residue bitmasks of
width ``q``; rotation is a shift plus a wraparound.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable

from .errors import InvalidArgs, PreconditionUnmet, TheoremViolation
from .intset import GeneratorSet, longest_run, m_fold
from .semigroup import frobenius_apery, shape_kr


@dataclass(frozen=True)
class ModSequence:
    q: int
    terms: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise InvalidArgs(f"modulus must be at least 2, got {self.q}")
        if any(not 1 <= a < self.q for a in self.terms):
            raise InvalidArgs(f"terms must be nonzero residues in [1, {self.q - 1}]")

    @classmethod
    def reduce(cls, q: int, values: Iterable[int]) -> ModSequence:
        return cls(q, tuple(v % q for v in values))

    @property
    def u(self) -> int:
        return len(self.terms)


def freiman_check(A: GeneratorSet) -> bool:
    """``|2A| >= min(l, 2n - 3) + n``."""
    return len(m_fold(A, 2)) >= min(A.l, 2 * A.n - 3) + A.n


def dixmier_lev_check(A: GeneratorSet, m: int) -> bool:
    """Frobenius bound, plus the interval and long-block statements when ``m`` allows.

    The Frobenius number comes from the Apéry route so this check does not
    lean on the window that ``exceptional_set`` derives from the same bound.
    """
    if m < 1:
        raise InvalidArgs(f"m must be positive, got {m}")
    l, n = A.l, A.n
    k, r = shape_kr(l, n)
    ok = frobenius_apery(A) <= k * (l - n + r + 1) - 1
    if m >= 2 * k:
        mA = m_fold(A, m)
        lo, hi = k * l - k * (n - 1 - r), (m - k) * l + k * (n - 1 - r)
        block = ((1 << (hi - lo + 1)) - 1) << lo
        ok = ok and (mA.bits & block) == block
        if m >= 3 * k:
            ok = ok and longest_run(mA)[1] >= (m - k) * l + k * (n - 1 - r) + 1
    return ok


def _subset_sums_mod(seq: ModSequence) -> int:
    """Bitmask of residues hit by nonempty subsequence sums."""
    q, full = seq.q, (1 << seq.q) - 1
    reach = 0
    for a in seq.terms:
        rotated = ((reach << a) | (reach >> (q - a))) & full
        reach |= rotated | (1 << a)
    return reach


def zero_sum_free(seq: ModSequence) -> bool:
    if seq.u < 1:
        raise InvalidArgs("sequence must be nonempty")
    return not _subset_sums_mod(seq) & 1


def savchev_chen_witness(seq: ModSequence) -> tuple[int, list[int]]:
    """Unit ``a`` and positive ``xs`` with ``terms[i] = xs[i] * a (mod q)`` and ``sum(xs) < q``.

    For a fixed ``a`` the smallest admissible ``x_i`` is ``terms[i] / a mod q``;
    any other choice adds a multiple of ``q``, so that is the only candidate.
    """
    q = seq.q
    if not zero_sum_free(seq):
        raise PreconditionUnmet("sequence is not zero-sum-free")
    if not 2 * seq.u > q:
        raise PreconditionUnmet(f"need u > q/2, got u={seq.u}, q={q}")
    for a in range(1, q):
        if gcd(a, q) != 1:
            continue
        inv = pow(a, -1, q)
        xs = [t * inv % q for t in seq.terms]
        if sum(xs) < q:
            return a, xs
    raise TheoremViolation(f"no witness for long zero-sum-free sequence {seq}", seq)


def subset_sum_count(xs: Iterable[int]) -> int:
    """Distinct subsequence sums, the empty sum included."""
    bits = 1
    for x in xs:
        bits |= bits << x
    return bits.bit_count()


def subsum_structure_check(xs: list[int]) -> bool:
    """Few subsequence sums force ``x_1 | x_i`` and ``x_{i+1} <= x_1 + ... + x_i``."""
    if not xs or any(x <= 0 for x in xs):
        raise InvalidArgs("need a nonempty sequence of positive integers")
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise InvalidArgs("sequence must be sorted")
    if subset_sum_count(xs) >= 2 * len(xs):
        return True
    x1 = xs[0]
    if any(x % x1 for x in xs):
        return False
    prefix = 0
    for a, b in zip(xs, xs[1:]):
        prefix += a
        if b > prefix:
            return False
    return True


# --- cyclic group Z/q ------------------------------------------------------


def _mask(residues: Iterable[int], q: int) -> int:
    out = 0
    for x in residues:
        out |= 1 << (x % q)
    return out


def _rotate(bits: int, s: int, q: int) -> int:
    s %= q
    return ((bits << s) | (bits >> (q - s))) & ((1 << q) - 1)


def cyclic_sumset(b: int, c: int, q: int) -> int:
    out = 0
    x = c
    for s in range(q):
        if (b >> s) & 1:
            out |= _rotate(x, s, q)
    return out


def _stabilizer(s: int, q: int) -> int:
    return _mask((z for z in range(q) if _rotate(s, z, q) == s), q)


def in_proper_coset(b: int, q: int) -> bool:
    """Whether the residues lie in one coset of a proper subgroup of ``Z/q``."""
    members = [x for x in range(q) if (b >> x) & 1]
    return reduce(gcd, (x - members[0] for x in members[1:]), q) > 1


def olson_check(b: int, c: int, q: int) -> bool:
    """With ``0`` in ``B``: ``B`` inside the period of ``B + C``, or ``|B + C| >= |C| + |B|/2``."""
    s = cyclic_sumset(b, c, q)
    if b & ~_stabilizer(s, q) == 0:
        return True
    return 2 * s.bit_count() >= 2 * c.bit_count() + b.bit_count()


def small_doubling_coset_check(b: int, c: int, q: int) -> bool:
    """``|B + C| <= |C| + 1``, ``B + C != G`` and ``|B| >= 3`` force ``B`` into a proper coset."""
    s = cyclic_sumset(b, c, q)
    if s.bit_count() <= c.bit_count() + 1 and s != (1 << q) - 1 and b.bit_count() >= 3:
        return in_proper_coset(b, q)
    return True


def scherk_check(b: int, c: int, q: int) -> bool:
    """``0`` uniquely represented in ``B + C`` gives ``|B + C| >= |B| + |C| - 1``."""
    reps = sum(1 for x in range(q) if (b >> x) & 1 and (c >> ((-x) % q)) & 1)
    if reps != 1:
        return True
    return cyclic_sumset(b, c, q).bit_count() >= b.bit_count() + c.bit_count() - 1


def alon_check(b: int, q: int, m: int) -> bool:
    """``0`` outside ``B | 2B | ... | mB`` gives ``|B | 2B | ... | mB| >= m |B|``.

    The hypothesis must exclude ``0`` from every layer: ``B = {1}`` in ``Z/2``
    with ``m = 3`` has ``0`` missing from ``3B`` only, and the bound fails.
    """
    layers = []
    cur = b
    for j in range(1, m + 1):
        if j > 1:
            cur = cyclic_sumset(cur, b, q)
        layers.append(cur)
    union = reduce(int.__or__, layers)
    if union & 1:
        return True
    return union.bit_count() >= m * b.bit_count()


def olson_multiple_check(b: int, q: int, m: int) -> bool:
    """``B`` not in a proper coset: ``mB = G`` or ``|mB| >= (m + 1)|B| / 2``."""
    if in_proper_coset(b, q):
        return True
    cur = b
    for _ in range(m - 1):
        cur = cyclic_sumset(cur, b, q)
    if cur == (1 << q) - 1:
        return True
    return cur.bit_count() >= Fraction(m + 1, 2) * b.bit_count()


def cyclic_addition_oracles(q: int, B: Iterable[int], C: Iterable[int], m: int) -> bool:
    """All applicable cyclic-group estimates for ``(B, C)`` and ``m``; vacuous ones pass."""
    b, c = _mask(B, q), _mask(C, q)
    if not b or not c or m < 1:
        raise InvalidArgs("B and C must be nonempty and m positive")
    ok = small_doubling_coset_check(b, c, q) and alon_check(b, q, m) and olson_multiple_check(b, q, m)
    if b & 1:
        ok = ok and olson_check(b, c, q)
    if b & c & 1:
        ok = ok and scherk_check(b, c, q)
    return ok
