"""Report builders and exhaustive scans behind the command line.

Each scan enumerates sets deterministically, farms the per-set work out via
``ordered_map`` and returns plain rows plus a ``RunManifest``.  Row order
depends only on the parameters, never on the worker count.
"""
from __future__ import annotations

import json
import random
import statistics
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from functools import partial, reduce
from math import comb, gcd

from . import __version__
from .errors import MismatchError, TheoremViolation
from .intset import (
    DEFAULT_CAP,
    GeneratorSet,
    all_generator_sets,
    generator_sets,
    m_fold,
    m_fold_enumerate,
    m_fold_naive,
    normalize,
    reflect,
    sumset,
    sumset_calls,
)
from .parallel import default_workers, ordered_map
from .semigroup import exceptional_set, frobenius_apery
from .stability import Outcome, stab_threshold, stability_check, stability_scan
from .structure import (
    block_family_grid,
    block_family_prediction,
    decompose,
    lev_family_block,
    lev_family_union,
    shape_params,
    shape_params_ln,
    threshold_scan,
    union_family_grid,
    union_family_prediction,
    verdict_from,
)
from .toolbox import dixmier_lev_check, freiman_check

SCHEMA = 1


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class RunManifest:
    command: str
    parameters: dict
    threads: int
    version: str = __version__
    started: str = field(default_factory=_now)
    finished: str | None = None
    counts: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    schema: int = SCHEMA

    @property
    def exit_code(self) -> int:
        return 1 if self.violations else 0

    def finish(self) -> RunManifest:
        self.finished = _now()
        return self

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> RunManifest:
        return cls(**json.loads(text))


# --- analyze ---------------------------------------------------------------


def _verdict_dict(v) -> dict:
    return asdict(v)


def _gap_dict(g) -> dict:
    return {"gaps": list(g.gaps), "frobenius": g.frobenius}


def analyze(raw: list[int], m: int | None = None, m_max: int | None = None, strict: bool = False) -> dict:
    """Full single-set report; raises ``TheoremViolation`` on any failed check."""
    A = normalize(raw, strict=strict)
    p = shape_params(A)
    E, E2 = exceptional_set(A), exceptional_set(reflect(A))
    if E.frobenius != frobenius_apery(A):
        raise TheoremViolation(f"gap routes disagree on the Frobenius number of {A}", A)
    report = {
        "schema": SCHEMA,
        "input": list(raw),
        "set": list(A.elements),
        "n": A.n,
        "l": A.l,
        "shape": {"k": p.k, "r": p.r, "M": p.M, "delta": p.delta},
        "gaps": _gap_dict(E),
        "reflected_gaps": _gap_dict(E2),
    }
    if m_max is not None:
        scan = threshold_scan(A, m_max)
        report["verdicts"] = [_verdict_dict(v) for v in scan.verdicts]
        report["m0"] = scan.m0
        m_ref = p.M if m is None else m
    else:
        m_ref = p.M if m is None else m
        report["verdicts"] = [_verdict_dict(verdict_from(A, m_ref, m_fold(A, m_ref), E, E2, p))]
    d = decompose(A, m_ref)
    report["decomposition"] = {
        "m": m_ref,
        "head": d.head.to_list(),
        "run": [d.run_lo, d.run_hi],
        "tail": d.tail.to_list(),
        "union_checked": m_ref >= p.M,
    }
    toolbox = {"freiman": freiman_check(A), "dixmier_lev": dixmier_lev_check(A, m_ref)}
    if not all(toolbox.values()):
        raise TheoremViolation(f"toolbox estimate fails for {A}", toolbox)
    report["toolbox"] = toolbox
    if A.n >= 6 and A.l > A.n:
        t = stab_threshold(A.l, A.n)
        entry = {"threshold": t}
        if m_ref >= t:
            sv = stability_check(A, m_ref)
            entry.update(m=m_ref, outcome=sv.outcome.value, witness=sv.witness)
        report["stability"] = entry
    return report


# --- scans -----------------------------------------------------------------

STRUCTURE_COLUMNS = ["set", "n", "l", "k", "r", "M", "delta", "holds_bits", "gap", "bound", "tight", "violation"]
SKIPPED = "SkippedNonCoprime"
STABILITY_COLUMNS = ["set", "n", "l", "k", "r", "M", "delta", "m", "outcome", "witness", "violation"]
TOOLBOX_COLUMNS = ["set", "n", "l", "k", "r", "M", "delta", "freiman", "dixmier_lev", "m_checked", "violation"]
EXTREMAL_COLUMNS = [
    "family", "params", "set", "n", "l", "k", "r", "M", "delta", "frobenius", "predicted_frobenius",
    "tight_bits", "violation",
]


def _base_row(A: GeneratorSet) -> dict:
    p = shape_params(A)
    return {"set": A.literal(), "n": A.n, "l": A.l, "k": p.k, "r": p.r, "M": p.M, "delta": p.delta}


def structure_row(el: tuple[int, ...], extra: int = 3) -> dict:
    """Check ``m = M .. M + extra`` for one set, reusing gaps and growing ``mA`` by ``A``."""
    A = GeneratorSet(el)
    row = _base_row(A)
    p = shape_params(A)
    E, E2 = exceptional_set(A), exceptional_set(reflect(A))
    base = A.dense()
    mA = m_fold(A, p.M)
    bits, first = [], None
    violation = ""
    for m in range(p.M, p.M + extra + 1):
        if m > p.M:
            mA = sumset(mA, base)
        try:
            v = verdict_from(A, m, mA, E, E2, p)
        except TheoremViolation as exc:
            violation = str(exc)
            bits.append("0")
            continue
        bits.append("1")
        first = first or v
    row.update(
        holds_bits="".join(bits),
        gap=first.gap_length if first else "",
        bound=first.bound if first else "",
        tight=int(first.tight) if first else "",
        violation=violation,
    )
    return row


def toolbox_row(el: tuple[int, ...], extra: int = 4) -> dict:
    A = GeneratorSet(el)
    row = _base_row(A)
    fr = freiman_check(A)
    top = 3 * row["k"] + extra
    dl = all(dixmier_lev_check(A, m) for m in range(1, top + 1))
    row.update(freiman=int(fr), dixmier_lev=int(dl), m_checked=top)
    row["violation"] = "" if fr and dl else f"toolbox estimate fails for {A}"
    return row


def stability_row(el: tuple[int, ...], m: int) -> dict:
    A = GeneratorSet(el)
    row = _base_row(A)
    row["m"] = m
    try:
        v = stability_check(A, m)
        row.update(outcome=v.outcome.value, witness="" if v.witness is None else v.witness, violation="")
    except TheoremViolation as exc:
        row.update(outcome=Outcome.FAILS_UNEXPECTED.value, witness="", violation=str(exc))
    return row


def _sets_up_to(l_max: int, l_min: int = 2) -> list[tuple[int, ...]]:
    return [A.elements for A in all_generator_sets(l_max, l_min)]


def _finish(manifest: RunManifest, rows: list[dict], outcome_key: str | None = None) -> tuple[list[dict], RunManifest]:
    manifest.violations = [{"set": r["set"], "detail": r["violation"]} for r in rows if r.get("violation")]
    counts = {"rows": len(rows), "violations": len(manifest.violations)}
    if outcome_key:
        for r in rows:
            counts[r[outcome_key]] = counts.get(r[outcome_key], 0) + 1
    manifest.counts = counts
    return rows, manifest.finish()


def scan_structure(l_max: int, l_min: int = 2, extra: int = 3, workers: int | None = None):
    workers = workers or default_workers()
    manifest = RunManifest("scan", {"mode": "structure", "l_min": l_min, "l_max": l_max, "m_extra": extra}, workers)
    rows = ordered_map(partial(structure_row, extra=extra), _sets_up_to(l_max, l_min), workers)
    return _finish(manifest, rows)


def scan_toolbox(l_max: int, l_min: int = 2, extra: int = 4, workers: int | None = None):
    workers = workers or default_workers()
    manifest = RunManifest("scan", {"mode": "toolbox", "l_min": l_min, "l_max": l_max, "m_extra": extra}, workers)
    rows = ordered_map(partial(toolbox_row, extra=extra), _sets_up_to(l_max, l_min), workers)
    return _finish(manifest, rows)


def stability_pairs(l: int | None, l_max: int | None, n: int | None, n_max: int = 8) -> list[tuple[int, int]]:
    ls = [l] if l is not None else list(range(7, (l_max or 18) + 1))
    ns = [n] if n is not None else list(range(6, n_max + 1))
    return [(a, b) for a in ls for b in ns if b >= 6 and a > b]


def scan_stability(pairs: list[tuple[int, int]], m: int | None = None, workers: int | None = None):
    """One row per candidate, in enumeration order; sets with gcd > 1 get a ``SkippedNonCoprime`` row."""
    workers = workers or default_workers()
    manifest = RunManifest("scan", {"mode": "stability", "pairs": [list(p) for p in pairs], "m": m}, workers)
    jobs = []
    for l, n in pairs:
        mm = stab_threshold(l, n) if m is None else m
        jobs.extend((el, mm) for el in _raw_sets(l, n))
    rows = ordered_map(_stability_job, jobs, workers)
    return _finish(manifest, rows, "outcome")


def _raw_sets(l: int, n: int):
    return generator_sets(l, n, include_non_coprime=True)


def _stability_job(job: tuple[tuple[int, ...], int]) -> dict:
    el, m = job
    if reduce(gcd, el) == 1:
        return stability_row(el, m)
    p = shape_params_ln(el[-1], len(el))
    return {
        "set": ",".join(map(str, el)), "n": p.n, "l": p.l, "k": p.k, "r": p.r, "M": p.M, "delta": p.delta,
        "m": m, "outcome": SKIPPED, "witness": "", "violation": "",
    }


# --- extremal families -----------------------------------------------------


def extremal_row(job: tuple[str, tuple[int, ...]], extra: int = 5) -> dict:
    family, params = job
    if family == "union":
        A = lev_family_union(*params)
        pred = union_family_prediction(*params)
    else:
        A = lev_family_block(*params)
        pred = block_family_prediction(*params)
    row = {"family": family, "params": ",".join(map(str, params))}
    row.update(_base_row(A))
    E, E2 = exceptional_set(A), exceptional_set(reflect(A))
    p = shape_params(A)
    problems = []
    for key in ("l", "n", "k", "r"):
        if key in pred and pred[key] != row[key]:
            problems.append(f"{key}={row[key]} != predicted {pred[key]}")
    if E.frobenius != pred["frobenius"]:
        problems.append(f"max(E)={E.frobenius} != predicted {pred['frobenius']}")
    base = A.dense()
    mA = m_fold(A, p.M)
    bits = []
    for m in range(p.M, p.M + extra + 1):
        if m > p.M:
            mA = sumset(mA, base)
        try:
            v = verdict_from(A, m, mA, E, E2, p)
            bits.append("1" if v.tight else "0")
        except TheoremViolation as exc:
            problems.append(str(exc))
            bits.append("x")
    if set(bits) != {"1"}:
        problems.append("gap bound not attained")
    row.update(
        frobenius=E.frobenius, predicted_frobenius=pred["frobenius"], tight_bits="".join(bits),
        violation="; ".join(problems),
    )
    return row


def scan_extremal(l_max: int = 60, extra: int = 5, workers: int | None = None):
    workers = workers or default_workers()
    manifest = RunManifest("extremal", {"l_max": l_max, "m_extra": extra}, workers)
    jobs = [("union", p) for p in union_family_grid(l_max)] + [("block", p) for p in block_family_grid(l_max)]
    rows = ordered_map(partial(extremal_row, extra=extra), jobs, workers, chunksize=8)
    return _finish(manifest, rows, "family")


def stability_report(l: int, n: int, m: int | None = None, exploratory: bool = False, workers: int | None = None):
    workers = workers or default_workers()
    manifest = RunManifest("stability", {"l": l, "n": n, "m": m, "exploratory": exploratory}, workers)
    try:
        rep = stability_scan(l, n, m, exploratory=exploratory, workers=workers)
    except TheoremViolation as exc:
        manifest.violations = [{"detail": str(exc)}]
        return None, manifest.finish()
    manifest.counts = dict(rep.counts, scanned=rep.scanned, skipped_non_coprime=rep.skipped_non_coprime)
    body = asdict(rep)
    body["family_match"] = rep.family_match
    return body, manifest.finish()


# --- benchmark -------------------------------------------------------------


def random_generator_set(l: int, n: int, rng: random.Random) -> GeneratorSet:
    n = max(3, min(n, l + 1))
    while True:
        interior = rng.sample(range(1, l), n - 2)
        if reduce(gcd, interior, l) == 1:
            return GeneratorSet(tuple(sorted([0, l, *interior])))


def bench(l: int, m: int, reps: int = 5, seed: int = 0, n: int | None = None) -> dict:
    """Median wall time of doubling vs. repeated addition on random sets; results must match."""
    rng = random.Random(seed)
    n = n or min(l + 1, 16)
    doubling_times, naive_times, sets = [], [], []
    brute = 0
    for _ in range(reps):
        A = random_generator_set(l, n, rng)
        sets.append(A.literal())
        t0 = time.perf_counter()
        fast = m_fold(A, m, cap=max(DEFAULT_CAP, m * l))
        t1 = time.perf_counter()
        slow = m_fold_naive(A, m, cap=max(DEFAULT_CAP, m * l))
        t2 = time.perf_counter()
        doubling_times.append(t1 - t0)
        naive_times.append(t2 - t1)
        if fast != slow:
            raise MismatchError(f"doubling and naive m_fold disagree on {A}, m={m}")
        if comb(A.n + m - 1, m) <= 200_000:
            if m_fold_enumerate(A, m) != fast:
                raise MismatchError(f"m_fold disagrees with enumeration on {A}, m={m}")
            brute += 1
    return {
        "schema": SCHEMA,
        "l": l,
        "m": m,
        "n": n,
        "reps": reps,
        "seed": seed,
        "sets": sets,
        "equal": True,
        "brute_force_checked": brute,
        "sumset_calls": {"doubling": sumset_calls(m, "doubling"), "naive": sumset_calls(m, "naive")},
        "median_seconds": {"doubling": statistics.median(doubling_times), "naive": statistics.median(naive_times)},
    }
