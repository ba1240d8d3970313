"""Density machinery for primes with a prescribed residual index.

Degrees of the Kummer-type fields K^g_{s,r} = Q(zeta_s, g^(1/r)), the
entanglement indicator C_g, exact-rational truncations of the density
series delta(a, d; t) with a certified tail bound, and empirical prime
counts to compare against.  Everything here is exact rational; floats
appear only when rendering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, InternalInvariantViolation
from .modarith import (
    euler_phi,
    is_prime,
    is_squarefree,
    kronecker,
    moebius,
    multiplicative_order,
    primes_upto,
    reduce_rational,
    residual_index,
)


def _require_base(g: int) -> None:
    if g < 2 or not is_squarefree(g):
        raise DomainError(f"base must be a square-free integer >= 2, got {g}")


def epsilon_g(g: int, s: int) -> int:
    """The degree-defect factor: 2 iff 2g | s and g = 1 mod 4, else 1."""
    _require_base(g)
    if s < 1:
        raise DomainError(f"epsilon_g needs s >= 1, got {s}")
    return 2 if s % (2 * g) == 0 and g % 4 == 1 else 1


def field_degree(g: int, s: int, r: int) -> int:
    """[Q(zeta_s, g^(1/r)) : Q] = r * phi(s) / epsilon_g(s); requires r | s."""
    _require_base(g)
    if r < 1 or s % r != 0:
        raise DomainError(f"field_degree needs r | s, got s={s}, r={r}")
    num = r * euler_phi(s)
    eps = epsilon_g(g, s)
    if num % eps != 0:
        raise InternalInvariantViolation("degree formula did not divide evenly")
    return num // eps


@dataclass(frozen=True)
class DegreeRatioBounds:
    """Verified growth of field degrees when the cyclotomic or Kummer layer deepens.

    part1: [Q(zeta_ap, g^(1/b)) : Q(zeta_a, g^(1/b))], present when b | a;
    must be >= (p-1)/2.  part2: [Q(zeta_a, g^(1/bp)) : Q(zeta_a, g^(1/b))],
    present when bp | a; must equal p.
    """

    g: int
    a: int
    b: int
    p: int
    part1: Fraction | None
    part1_holds: bool | None
    part2: Fraction | None
    part2_holds: bool | None


def degree_ratio_bounds(g: int, a: int, b: int, p: int) -> DegreeRatioBounds:
    """Compute both degree ratios via field_degree and check the bounds."""
    _require_base(g)
    if a < 2 or b < 2:
        raise DomainError(f"need a, b >= 2, got a={a}, b={b}")
    if p == 2 or not is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    part1 = part1_holds = part2 = part2_holds = None
    if a % b == 0:
        part1 = Fraction(field_degree(g, a * p, b), field_degree(g, a, b))
        part1_holds = part1 >= Fraction(p - 1, 2)
    if a % (b * p) == 0:
        part2 = Fraction(field_degree(g, a, b * p), field_degree(g, a, b))
        part2_holds = part2 == p
    if part1 is None and part2 is None:
        raise DomainError(f"neither b | a nor bp | a holds for a={a}, b={b}, p={p}")
    return DegreeRatioBounds(g, a, b, p, part1, part1_holds, part2, part2_holds)


def quadratic_discriminant(g: int) -> int:
    """Discriminant of Q(sqrt(g)): g when g = 1 mod 4, else 4g."""
    _require_base(g)
    return g if g % 4 == 1 else 4 * g


def c_g(g: int, b: int, f: int, v: int) -> int:
    """Entanglement indicator: 1 iff the Artin map at b fixes Q(zeta_f) inside K^g_{v,v}.

    Criterion: with m = gcd(f, v), the intersection is Q(zeta_m), possibly
    extended by sqrt(g) exactly when v is even and the discriminant D of
    Q(sqrt(g)) divides f.  So the value is 1 iff b = 1 mod m and, in the
    extended case, the quadratic character of D at b is +1.
    """
    _require_base(g)
    if f < 1 or v < 1:
        raise DomainError(f"need f, v >= 1, got f={f}, v={v}")
    if math.gcd(b, f) != 1:
        raise DomainError(f"b={b} must be coprime to f={f}")
    m = math.gcd(f, v)
    if (b - 1) % m != 0:
        return 0
    if v % 2 == 0:
        disc = quadratic_discriminant(g)
        if f % disc == 0 and kronecker(disc, b) != 1:
            return 0
    return 1


@dataclass(frozen=True)
class DeltaTerm:
    """One summand of the density series: mu(n) * C_g / degree."""

    n: int
    moebius: int
    c_g: int
    degree: int
    value: Fraction


@dataclass(frozen=True)
class DeltaEstimate:
    """Truncated density with an exact-rational certified tail bound."""

    g: int
    a: int
    d: int
    t: int
    truncation: int
    partial_sum: Fraction
    tail_bound: Fraction
    terms: tuple[DeltaTerm, ...]

    @property
    def lower_bound(self) -> Fraction:
        return self.partial_sum - self.tail_bound

    @property
    def positive(self) -> bool:
        return self.lower_bound > 0


def _tail_bound(t: int, n_max: int) -> Fraction:
    """Exact-rational bound on the tail sum past the truncation point.

    Every dropped term has absolute value at most 1/degree, and the degree
    satisfies degree >= n*t*phi(n)*phi(t)/2, so the tail is at most
    (2/(t*phi(t))) * sum_{n > N} 1/(n*phi(n)).  That sum is bounded by
    expanding n/phi(n) = sum_{m | n} mu(m)^2/phi(m) and swapping the order
    of summation:

        sum_{n>N} 1/(n*phi(n)) = sum_m mu(m)^2/(phi(m)*m^2) * sum_{j>N/m} 1/j^2.

    For m <= N the inner sum is at most 1/floor(N/m) (telescoping); the
    m > N remainder is at most zeta(2)*sqrt(2)*(2/3)*N^(-3/2) <= 33/(20*N*sqrt(N))
    using phi(m) >= sqrt(m/2) and zeta(2) <= 33/20.
    """
    n = n_max
    head = sum(
        (
            Fraction(1, euler_phi(m) * m * m * (n // m))
            for m in range(1, n + 1)
            if is_squarefree(m)
        ),
        Fraction(0),
    )
    rest = Fraction(33, 20 * n * math.isqrt(n))
    return Fraction(2, t * euler_phi(t)) * (head + rest)


def delta_truncated(g: int, a: int, d: int, t: int, n_max: int) -> DeltaEstimate:
    """The density series truncated at n_max, with every term an exact rational."""
    _require_base(g)
    if t < 1 or d < 1 or n_max < 1:
        raise DomainError(f"need t, d, N >= 1, got t={t}, d={d}, N={n_max}")
    b = 1 + t * a
    terms: list[DeltaTerm] = []
    total = Fraction(0)
    for n in range(1, n_max + 1):
        mu = moebius(n)
        if mu == 0 or a % math.gcd(n, d) != 0:
            continue
        ind = c_g(g, b, d * t, n * t)
        deg = field_degree(g, math.lcm(d, n) * t, n * t)
        value = Fraction(mu * ind, deg)
        terms.append(DeltaTerm(n, mu, ind, deg, value))
        total += value
    return DeltaEstimate(
        g=g,
        a=a,
        d=d,
        t=t,
        truncation=n_max,
        partial_sum=total,
        tail_bound=_tail_bound(t, n_max),
        terms=tuple(terms),
    )


@dataclass(frozen=True)
class VCount:
    """Empirical count of primes p <= x with I_p(g) = t in the progression 1+ta mod dt."""

    g: int
    a: int
    d: int
    t: int
    x: int
    count: int
    witnesses: tuple[int, ...] = field(default_factory=tuple)


def v_count(g: int, a: int, d: int, t: int, x: int, collect_witnesses: bool = False) -> VCount:
    """Sieve the arithmetic progression, then filter on the residual index."""
    _require_base(g)
    if x < 2:
        raise DomainError(f"v_count needs x >= 2, got {x}")
    if t < 1 or d < 1:
        raise DomainError(f"need t, d >= 1, got t={t}, d={d}")
    modulus = d * t
    target = (1 + t * a) % modulus
    hits: list[int] = []
    count = 0
    for p in primes_upto(x):
        if p % modulus != target or g % p == 0:
            continue
        ord_ = multiplicative_order(reduce_rational(Fraction(g), p))
        if residual_index(p, ord_) == t:
            count += 1
            if collect_witnesses:
                hits.append(p)
    return VCount(g, a, d, t, x, count, tuple(hits))


def consistency_report(g: int, a: int, d: int, t: int, x: int, n_max: int = 200) -> dict:
    """Non-gating comparison of the empirical rate against the truncated density.

    Convergence speed is outside what the truncation certifies, so this
    records the numbers without asserting anything about their ratio.
    """
    est = delta_truncated(g, a, d, t, n_max)
    vc = v_count(g, a, d, t, x)
    pi_x = len(primes_upto(x))
    rate = Fraction(vc.count, pi_x) if pi_x else Fraction(0)
    central = est.partial_sum
    return {
        "g": g, "a": a, "d": d, "t": t, "x": x, "truncation": n_max,
        "empirical_count": vc.count,
        "primes_below_x": pi_x,
        "empirical_rate": float(rate),
        "truncated_density": float(central),
        "ratio": float(rate / central) if central else None,
        "within_factor_2": bool(central and central / 2 <= rate <= central * 2),
    }
