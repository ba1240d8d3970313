"""Modular and multiplicative arithmetic over prime fields.

Primes, factorization, residues, multiplicative orders, residual indices,
and the two quadratic-residue symbols the rest of the library needs.
All functions are pure; values are freely copyable across workers.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    BadValuation,
    DomainError,
    InternalInvariantViolation,
    NotInvertible,
)

# The exact-rational carrier.  fractions.Fraction already maintains the
# gcd(num, den) = 1, den >= 1 normal form required of rationals here.
Rational = Fraction

Factorization = list[tuple[int, int]]

_TRIAL_LIMIT = 1000  # trial division covers all composites below _TRIAL_LIMIT**2
_RHO_SEED = 0x5EED
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)  # deterministic < 3.3e24


@dataclass(frozen=True)
class Residue:
    """An element of Z/pZ together with its prime modulus.

    The canonical lift lives in [0, p); all congruence comparisons happen
    on lifts.
    """

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise DomainError(f"modulus {self.modulus} is not a prime")
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def __int__(self) -> int:
        return self.value


def _simple_sieve(limit: int) -> list[int]:
    if limit < 2:
        return []
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).tolist()


_SEGMENT = 1 << 18


def prime_sieve(limit: int) -> list[int]:
    """All primes <= limit, ascending; segmented so memory stays O(sqrt + segment)."""
    if limit < 2:
        return []
    root = math.isqrt(limit)
    base = _simple_sieve(root)
    primes = list(base)
    lo = root + 1
    while lo <= limit:
        hi = min(lo + _SEGMENT - 1, limit)
        mask = np.ones(hi - lo + 1, dtype=bool)
        for p in base:
            start = ((lo + p - 1) // p) * p
            if start <= hi:
                mask[start - lo :: p] = False
        if lo <= 1:
            mask[: 2 - lo] = False
        primes.extend((np.flatnonzero(mask) + lo).tolist())
        lo = hi + 1
    return primes


@lru_cache(maxsize=8)
def primes_upto(limit: int) -> tuple[int, ...]:
    """Cached variant of prime_sieve for repeated scans over the same range."""
    return tuple(prime_sieve(limit))


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(_simple_sieve(_TRIAL_LIMIT))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any input the scans produce."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of composite n; fixed seed keeps runs reproducible."""
    rng = random.Random(_RHO_SEED ^ n)
    while True:
        c = rng.randrange(1, n)
        x = rng.randrange(0, n)
        y = x
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorize(n: int) -> Factorization:
    """Complete prime factorization of n >= 1, primes strictly increasing."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    factors: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(m):
                factors[m] = factors.get(m, 0) + 1
            else:
                d = _pollard_rho(m)
                stack.append(d)
                stack.append(m // d)
    return sorted(factors.items())


def mod_pow(base: Residue, exp: int) -> Residue:
    """base**exp in Z/pZ; exp = 0 yields 1 even for base 0, by convention."""
    if exp < 0:
        raise DomainError("mod_pow needs a non-negative exponent")
    return Residue(pow(base.value, exp, base.modulus), base.modulus)


def mod_inv(a: Residue) -> Residue:
    if a.value == 0:
        raise NotInvertible(f"0 mod {a.modulus} has no inverse")
    return Residue(pow(a.value, -1, a.modulus), a.modulus)


def reduce_rational(alpha: Rational, p: int) -> Residue:
    """The image of alpha under Z_(p) -> Z/pZ; requires v_p(alpha) = 0."""
    num, den = alpha.numerator, alpha.denominator
    if num % p == 0:
        raise BadValuation("positive", f"{p} divides numerator of {alpha}")
    if den % p == 0:
        raise BadValuation("negative", f"{p} divides denominator of {alpha}")
    return Residue(num * pow(den, -1, p) % p, p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion, p an odd prime."""
    if p == 2 or not is_prime(p):
        raise DomainError(f"legendre needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def lsym5(m: int) -> int:
    """The quadratic-residue symbol (m/5); the index-shift sign of the main congruence."""
    return legendre(m % 5, 5)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 0."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if n < 0:
        raise DomainError("kronecker implemented for non-negative n only")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def multiplicative_order(a: Residue) -> int:
    """Least d >= 1 with a**d = 1, by dividing prime factors out of p - 1."""
    if a.value == 0:
        raise NotInvertible(f"0 mod {a.modulus} has no order")
    p = a.modulus
    d = p - 1
    for q, _ in factorize(p - 1):
        while d % q == 0 and pow(a.value, d // q, p) == 1:
            d //= q
    return d


def residual_index(p: int, ord_: int) -> int:
    """(p - 1) / ord, the index of the subgroup generated by the element."""
    if ord_ <= 0 or (p - 1) % ord_ != 0:
        raise InternalInvariantViolation(f"order {ord_} does not divide {p} - 1")
    return (p - 1) // ord_


def euler_phi(n: int) -> int:
    if n < 1:
        raise DomainError(f"euler_phi needs n >= 1, got {n}")
    out = 1
    for p, e in factorize(n):
        out *= (p - 1) * p ** (e - 1)
    return out


def moebius(n: int) -> int:
    if n < 1:
        raise DomainError(f"moebius needs n >= 1, got {n}")
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for _, e in factorize(n))
