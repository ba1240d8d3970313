"""The main congruence as an executable verifier.

For a rational alpha and an odd prime p with v_p(alpha) = v_p(alpha-1) = 0
and ord_p(alpha) not divisible by 5,

    F_p(alpha)  =  F_{I_p(alpha) + (ord_p(alpha)/5)}   mod p,

where I_p is the residual index and (./5) the mod-5 quadratic symbol.
This module extracts the residual data, evaluates the left side by up to
four routes, and scans prime ranges in bulk.
"""

from __future__ import annotations

import enum
import multiprocessing
import time
from dataclasses import dataclass
from fractions import Fraction

from . import report
from .errors import DomainError, InternalInvariantViolation
from .modarith import (
    Rational,
    Residue,
    is_prime,
    legendre,
    lsym5,
    multiplicative_order,
    primes_upto,
    reduce_rational,
    residual_index,
)
from .qanalogue import _context
from .qfib import fib_mod, qfib_mod_andrews, qfib_mod_recurrence_many, qfib_poly

ALL_PATHS = frozenset({"recurrence", "andrews", "proposition", "poly"})
DEFAULT_PATHS = frozenset({"recurrence"})


class Reason(enum.Enum):
    OK = "OK"
    BAD_VALUATION_ALPHA = "BadValuationAlpha"
    BAD_VALUATION_ALPHA_MINUS_1 = "BadValuationAlphaMinus1"
    ORD_DIVISIBLE_BY_5 = "OrdDivisibleBy5"


SKIP_REASONS = (
    Reason.BAD_VALUATION_ALPHA,
    Reason.BAD_VALUATION_ALPHA_MINUS_1,
    Reason.ORD_DIVISIBLE_BY_5,
)


@dataclass(frozen=True)
class ResidualData:
    """Everything the congruence needs to know about one (alpha, p) pair."""

    alpha: Rational
    p: int
    alpha_res: Residue | None
    ord: int
    index: int
    lsym_ord: int
    reason: Reason

    @property
    def applicable(self) -> bool:
        return self.reason is Reason.OK


@dataclass(frozen=True)
class Inapplicable:
    reason: Reason
    data: ResidualData


@dataclass(frozen=True)
class SSets:
    """k in [0, I] with 2*k*ord = p - i mod 5, for i = 1, 2."""

    s1: tuple[int, ...]
    s2: tuple[int, ...]


@dataclass(frozen=True)
class CongruenceRecord:
    """One prime's verification outcome."""

    data: ResidualData
    lhs: Residue
    predicted_index: int
    rhs: Residue
    match: bool
    paths_agree: bool

    @property
    def p(self) -> int:
        return self.data.p


def residual_data(alpha: Rational, p: int) -> ResidualData:
    """Order, index, symbol and applicability flags for one (alpha, p) pair."""
    alpha = Fraction(alpha)
    if alpha == 0 or alpha == 1:
        raise DomainError("alpha must avoid 0 and 1")
    if p == 2 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    if alpha.numerator % p == 0 or alpha.denominator % p == 0:
        return ResidualData(alpha, p, None, 0, 0, 0, Reason.BAD_VALUATION_ALPHA)
    if (alpha - 1).numerator % p == 0:
        return ResidualData(alpha, p, None, 0, 0, 0, Reason.BAD_VALUATION_ALPHA_MINUS_1)
    res = reduce_rational(alpha, p)
    d = multiplicative_order(res)
    idx = residual_index(p, d)
    reason = Reason.ORD_DIVISIBLE_BY_5 if d % 5 == 0 else Reason.OK
    return ResidualData(alpha, p, res, d, idx, lsym5(d), reason)


def predicted_index(rd: ResidualData) -> int:
    """The Fibonacci index the congruence predicts: I_p(alpha) + (ord/5)."""
    if not rd.applicable:
        raise DomainError(f"inapplicable pair ({rd.alpha}, {rd.p}): {rd.reason.value}")
    n = rd.index + rd.lsym_ord
    if n < 0:
        raise InternalInvariantViolation("predicted index must be non-negative")
    return n


def s_sets(rd: ResidualData) -> SSets:
    """Materialize both index sets, intersected with [0, I] where C(I, k) lives."""
    if not rd.applicable:
        raise DomainError(f"inapplicable pair ({rd.alpha}, {rd.p}): {rd.reason.value}")
    p, d, idx = rd.p, rd.ord, rd.index
    s1 = tuple(k for k in range(idx + 1) if (2 * k * d - (p - 1)) % 5 == 0)
    s2 = tuple(k for k in range(idx + 1) if (2 * k * d - (p - 2)) % 5 == 0)
    return SSets(s1, s2)


def qfib_mod_proposition(rd: ResidualData) -> Residue:
    """F_p(alpha) mod p from the two S-set binomial sums.

    Exponents (p - 1 - 2k*ord)/10 are always integral for k in S1 but may
    be negative; they act through alpha**(p-1) = 1, so they are reduced
    mod p - 1.  A single O(I) sweep maintains C(I, k) mod p through the
    ratio update, using the linear-time inverse table for 1..I.
    """
    if not rd.applicable:
        raise DomainError(f"inapplicable pair ({rd.alpha}, {rd.p}): {rd.reason.value}")
    p, d, idx = rd.p, rd.ord, rd.index
    a = rd.alpha_res.value
    inv = [0, 1] + [0] * max(0, idx - 1)
    for i in range(2, idx + 1):
        inv[i] = (p - p // i) * inv[p % i] % p
    total = 0
    sub = 0
    comb = 1  # C(idx, k) mod p, updated as k advances
    for k in range(idx + 1):
        r = (2 * k * d - p) % 5
        if r == 4:
            e = p - 1 - 2 * k * d
            if e % 10 != 0:
                raise InternalInvariantViolation("S1 exponent must be divisible by 10")
            total += pow(a, (e // 10) % (p - 1), p) * comb
        elif r == 3:
            sub += comb
        if k < idx:
            comb = comb * (idx - k) % p * inv[k + 1] % p
    total -= legendre(a, p) * sub
    return Residue(total % p, p)


def verify_theorem(
    alpha: Rational, p: int, paths: frozenset[str] = DEFAULT_PATHS
) -> CongruenceRecord | Inapplicable:
    """Check the congruence at one prime; optionally cross-check extra paths."""
    rd = residual_data(alpha, p)
    if not rd.applicable:
        return Inapplicable(rd.reason, rd)
    return _verify_applicable(rd, paths)


def _lhs_paths(rd: ResidualData, paths: frozenset[str], recurrence_value: int | None = None) -> dict[str, int]:
    """Evaluate F_p(alpha) mod p along each requested route."""
    unknown = paths - ALL_PATHS
    if unknown:
        raise DomainError(f"unknown paths: {sorted(unknown)}")
    p = rd.p
    values: dict[str, int] = {}
    if recurrence_value is not None:
        values["recurrence"] = recurrence_value
    elif "recurrence" in paths or not paths:
        values["recurrence"] = qfib_mod_recurrence_many([p], [rd.alpha_res.value])[0]
    if "andrews" in paths:
        ctx = _context(p, rd.alpha_res.value)
        values["andrews"] = qfib_mod_andrews(p, rd.alpha_res, rd.ord, ctx).value
    if "proposition" in paths:
        values["proposition"] = qfib_mod_proposition(rd).value
    if "poly" in paths:
        values["poly"] = qfib_poly(p).eval_mod(rd.alpha_res.value, p)
    return values


def _verify_applicable(
    rd: ResidualData, paths: frozenset[str], recurrence_value: int | None = None
) -> CongruenceRecord:
    p = rd.p
    values = _lhs_paths(rd, paths, recurrence_value)
    lhs = values.get("recurrence", next(iter(values.values())))
    n_star = predicted_index(rd)
    rhs = fib_mod(n_star, p)
    return CongruenceRecord(
        data=rd,
        lhs=Residue(lhs, p),
        predicted_index=n_star,
        rhs=rhs,
        match=lhs == rhs.value,
        paths_agree=len(set(values.values())) == 1,
    )


def _scan_chunk(args) -> tuple[list[CongruenceRecord], dict[str, int]]:
    alpha, primes, paths = args
    alpha = Fraction(alpha)
    skipped = {r.value: 0 for r in SKIP_REASONS}
    rds: list[ResidualData] = []
    for p in primes:
        rd = residual_data(alpha, p)
        if rd.applicable:
            rds.append(rd)
        else:
            skipped[rd.reason.value] += 1
    lhs_values = qfib_mod_recurrence_many(
        [rd.p for rd in rds], [rd.alpha_res.value for rd in rds]
    )
    extra = frozenset(paths) - {"recurrence"}
    records = [
        _verify_applicable(rd, extra, recurrence_value=v)
        for rd, v in zip(rds, lhs_values)
    ]
    return records, skipped


def split_chunks(items: list, n: int) -> list[list]:
    """n contiguous chunks of near-equal size (some possibly empty)."""
    n = max(1, n)
    size, rem = divmod(len(items), n)
    out = []
    start = 0
    for i in range(n):
        stop = start + size + (1 if i < rem else 0)
        out.append(items[start:stop])
        start = stop
    return out


def scan_range(
    alpha: Rational,
    p_min: int,
    p_max: int,
    paths: frozenset[str] = DEFAULT_PATHS,
    workers: int = 1,
) -> "report.ScanReport":
    """Verify the congruence at every applicable prime in [p_min, p_max].

    The range is partitioned into contiguous chunks handled by independent
    workers; records depend only on (alpha, p) and are merged sorted by p,
    so the output is identical for any worker count.
    """
    alpha = Fraction(alpha)
    if not 2 < p_min <= p_max:
        raise DomainError(f"need 2 < p_min <= p_max, got [{p_min}, {p_max}]")
    start = time.monotonic()
    primes = [p for p in primes_upto(p_max) if p >= p_min]
    chunks = [c for c in split_chunks(primes, workers) if c]
    jobs = [(alpha, chunk, tuple(sorted(paths))) for chunk in chunks]
    if workers > 1 and len(jobs) > 1:
        with multiprocessing.Pool(workers) as pool:
            parts = pool.map(_scan_chunk, jobs)
    else:
        parts = [_scan_chunk(job) for job in jobs]
    records: list[CongruenceRecord] = []
    skipped = {r.value: 0 for r in SKIP_REASONS}
    for recs, skips in parts:
        records.extend(recs)
        for k, v in skips.items():
            skipped[k] += v
    records.sort(key=lambda r: r.p)
    return report.ScanReport(
        alpha=alpha,
        p_min=p_min,
        p_max=p_max,
        paths=tuple(sorted(paths)),
        workers=workers,
        wall_time_s=time.monotonic() - start,
        records=records,
        skipped=skipped,
    )
