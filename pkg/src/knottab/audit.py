"""Desk-scale empirical audits of the number-theoretic claims.

Three audits run against the sieve oracle:

* ``goldbach``: every even number >= 6 up to a limit splits into two primes;
* ``twin-steps``: every dyadic step up to a bound contains a twin-prime pair;
* ``strong-twin``: the strengthened claim that every even number >= 6 splits
  into two *twin members* (primes belonging to some twin pair).  This one is
  expected to fail; the first counterexample is reported.

Reports carry witnesses, counterexamples and timing, and serialize to JSON.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .dyadic import Sieve, step_range

WITNESS_CAP = 20


@dataclass(frozen=True)
class TwinPair:
    p: int
    q: int

    def __post_init__(self):
        if self.q != self.p + 2:
            raise ValueError(f"({self.p}, {self.q}) is not a twin pair")


@dataclass
class AuditReport:
    claim: str
    lo: int
    hi: int
    passed: bool
    witnesses: list = field(default_factory=list)
    counterexamples: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed_ms: float = 0.0
    truncated: bool = False

    def to_json_dict(self) -> dict:
        out = {
            "claim": self.claim,
            "range": [self.lo, self.hi],
            "pass": self.passed,
            "counterexamples": self.counterexamples,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.witnesses:
            out["witnesses"] = self.witnesses[:WITNESS_CAP]
        if self.notes:
            out["notes"] = self.notes
        if self.truncated:
            out["truncated"] = True
        return out


def goldbach_witness(e: int, sieve: Sieve) -> Optional[tuple[int, int]]:
    """Smallest-p decomposition e = p + q with p <= q both prime."""
    if e < 6 or e % 2:
        raise ValueError(f"goldbach witness needs an even number >= 6, got {e}")
    for p in sieve.primes:
        if p > e // 2:
            break
        if sieve.is_prime(e - p):
            return p, e - p
    return None


def is_twin_member(p: int, sieve: Sieve) -> bool:
    """True iff p is prime and p-2 or p+2 is prime."""
    if not sieve.is_prime(p):
        return False
    return (p >= 4 and sieve.is_prime(p - 2)) or sieve.is_prime(p + 2)


def twin_pairs_in_step(n: int, sieve: Sieve) -> list[TwinPair]:
    """Twin pairs with both members inside step n.  Pairs straddling the
    step boundary belong to neither step and are reported separately."""
    if n < 3:
        raise ValueError("twin pairs per step start at n = 3")
    lo, hi = step_range(n)
    return [
        TwinPair(p, p + 2)
        for p in range(lo, hi - 1)
        if sieve.is_prime(p) and sieve.is_prime(p + 2)
    ]


def straddling_twin_pairs(max_step: int, sieve: Sieve) -> list[TwinPair]:
    out = []
    for n in range(2, max_step):
        b = 2**n
        if sieve.is_prime(b - 1) and sieve.is_prime(b + 1):
            out.append(TwinPair(b - 1, b + 1))
    return out


def _chunks(lo: int, hi: int, pieces: int) -> list[tuple[int, int]]:
    span = hi - lo + 1
    size = max(1, span // pieces)
    out = []
    start = lo
    while start <= hi:
        out.append((start, min(start + size - 1, hi)))
        start += size
    return out


def _scan_evens(lo, hi, probe) -> list[int]:
    start = lo if lo % 2 == 0 else lo + 1
    return [e for e in range(start, hi + 1, 2) if not probe(e)]


def goldbach_scan(
    limit: int,
    sieve: Optional[Sieve] = None,
    threads: int = 1,
    budget_secs: Optional[float] = None,
) -> AuditReport:
    """Verify the two-prime decomposition for every even number in [6, limit]."""
    started = time.monotonic()
    if sieve is None:
        sieve = Sieve(limit)
    report = AuditReport("goldbach", 6, limit, passed=True)

    flags = sieve._flags
    primes = sieve.primes

    def has_witness(e: int) -> bool:
        half = e // 2
        for p in primes:
            if p > half:
                return False
            if flags[e - p]:
                return True
        return False

    failures, truncated = _parallel_scan(
        6, limit, has_witness, threads, budget_secs, started
    )
    report.counterexamples = failures
    report.truncated = truncated
    report.passed = not failures and not truncated
    for e in range(6, min(limit, 6 + 2 * WITNESS_CAP) + 1, 2):
        witness = goldbach_witness(e, sieve)
        if witness:
            report.witnesses.append([e, *witness])
    report.elapsed_ms = (time.monotonic() - started) * 1000.0
    return report


def strong_twin_goldbach_check(
    limit: int,
    sieve: Optional[Sieve] = None,
    threads: int = 1,
    budget_secs: Optional[float] = None,
) -> AuditReport:
    """Audit the strengthened claim: every even number in [6, limit] as a sum
    of two twin members.  Reports all failures ascending (expected nonempty)."""
    started = time.monotonic()
    if sieve is None:
        sieve = Sieve(limit + 2)
    elif sieve.limit < limit + 2:
        sieve = Sieve(limit + 2)
    report = AuditReport("strong-twin", 6, limit, passed=True)

    members = [p for p in sieve.primes if p <= limit and is_twin_member(p, sieve)]
    member_set = set(members)

    def has_twin_sum(e: int) -> bool:
        for p in members:
            if p > e // 2:
                return False
            if (e - p) in member_set:
                return True
        return False

    failures, truncated = _parallel_scan(
        6, limit, has_twin_sum, threads, budget_secs, started
    )
    report.counterexamples = failures
    report.truncated = truncated
    report.passed = not failures and not truncated
    if failures:
        report.notes.append(f"first counterexample: {failures[0]}")
    report.elapsed_ms = (time.monotonic() - started) * 1000.0
    return report


def twin_steps_scan(
    max_step: int,
    sieve: Optional[Sieve] = None,
    budget_secs: Optional[float] = None,
) -> AuditReport:
    """Check that every step 3..max_step holds at least one interior twin pair."""
    started = time.monotonic()
    if sieve is None:
        sieve = Sieve(2**max_step + 2)
    report = AuditReport("twin-steps", 3, max_step, passed=True)
    for n in range(3, max_step + 1):
        if budget_secs is not None and time.monotonic() - started > budget_secs:
            report.truncated = True
            break
        pairs = twin_pairs_in_step(n, sieve)
        if pairs:
            report.witnesses.append([n, pairs[0].p, pairs[0].q])
        else:
            report.counterexamples.append(n)
    straddlers = straddling_twin_pairs(max_step, sieve)
    if straddlers:
        report.notes.append(
            "straddling pairs (in neither step): "
            + ", ".join(f"({t.p},{t.q})" for t in straddlers)
        )
    report.passed = not report.counterexamples and not report.truncated
    report.elapsed_ms = (time.monotonic() - started) * 1000.0
    return report


def _parallel_scan(lo, hi, probe, threads, budget_secs, started):
    """Scan even numbers in [lo, hi]; returns (failures, truncated).  The
    chunking is fixed so results do not depend on the thread count."""
    chunks = _chunks(lo, hi, pieces=64 if hi - lo > 1000 else 1)

    def over_budget() -> bool:
        return budget_secs is not None and time.monotonic() - started > budget_secs

    failures: list[int] = []
    truncated = False
    if threads <= 1:
        for c_lo, c_hi in chunks:
            if over_budget():
                truncated = True
                break
            failures.extend(_scan_evens(c_lo, c_hi, probe))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = []
            for c_lo, c_hi in chunks:
                if over_budget():
                    truncated = True
                    break
                futures.append(pool.submit(_scan_evens, c_lo, c_hi, probe))
            for future in futures:
                failures.extend(future.result())
    return sorted(failures), truncated


def audit_range(
    claims: list[str],
    limit: int = 10**6,
    max_step: int = 20,
    threads: int = 1,
    budget_secs: Optional[float] = None,
) -> list[AuditReport]:
    """Run the selected audits and aggregate their reports."""
    known = {"goldbach", "strong-twin", "twin-steps"}
    unknown = set(claims) - known
    if unknown:
        raise ValueError(f"unknown claim(s): {sorted(unknown)}")
    reports = []
    for claim in claims:
        if claim == "goldbach":
            reports.append(
                goldbach_scan(limit, threads=threads, budget_secs=budget_secs)
            )
        elif claim == "strong-twin":
            reports.append(
                strong_twin_goldbach_check(
                    limit, threads=threads, budget_secs=budget_secs
                )
            )
        else:
            reports.append(twin_steps_scan(max_step, budget_secs=budget_secs))
    return reports
