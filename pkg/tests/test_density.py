import math
import random
from fractions import Fraction

import pytest

from qfibcong.density import (
    c_g,
    consistency_report,
    degree_ratio_bounds,
    delta_truncated,
    epsilon_g,
    field_degree,
    quadratic_discriminant,
    v_count,
)
from qfibcong.errors import DomainError
from qfibcong.modarith import euler_phi, is_squarefree, kronecker, primes_upto

SQUAREFREE = [g for g in range(2, 60) if is_squarefree(g)]


def test_epsilon_g_examples():
    assert epsilon_g(2, 5) == 1
    assert epsilon_g(5, 20) == 2
    assert epsilon_g(5, 15) == 1
    assert epsilon_g(13, 26) == 2
    with pytest.raises(DomainError):
        epsilon_g(4, 10)
    with pytest.raises(DomainError):
        epsilon_g(-2, 10)


def test_field_degree_examples():
    assert field_degree(2, 5, 5) == 20
    assert field_degree(2, 55, 11) == 440
    for g in (2, 3, 7):
        for s in (3, 5, 9, 25):
            if s % (2 * g) != 0:
                assert field_degree(g, s, 1) == euler_phi(s)
    with pytest.raises(DomainError):
        field_degree(2, 10, 3)


def test_field_degree_divides_exactly_randomized():
    rng = random.Random(11)
    for _ in range(1000):
        g = rng.choice(SQUAREFREE)
        r = rng.randrange(1, 50)
        s = r * rng.randrange(1, 50)
        deg = field_degree(g, s, r)
        assert deg >= 1
        assert deg * epsilon_g(g, s) == r * euler_phi(s)


def test_degree_ratio_bounds_examples():
    b1 = degree_ratio_bounds(2, 6, 3, 5)
    assert b1.part1 == 4 and b1.part1_holds
    b2 = degree_ratio_bounds(2, 30, 3, 5)
    assert b2.part2 == 5 and b2.part2_holds
    b3 = degree_ratio_bounds(5, 10, 2, 3)
    assert b3.part1 >= 1 and b3.part1_holds


def test_degree_ratio_bounds_domain():
    with pytest.raises(DomainError):
        degree_ratio_bounds(2, 1, 3, 5)
    with pytest.raises(DomainError):
        degree_ratio_bounds(2, 6, 3, 4)
    with pytest.raises(DomainError):
        degree_ratio_bounds(2, 7, 3, 5)  # neither 3 | 7 nor 15 | 7


def test_quadratic_discriminant():
    assert quadratic_discriminant(5) == 5
    assert quadratic_discriminant(13) == 13
    assert quadratic_discriminant(2) == 8
    assert quadratic_discriminant(3) == 12


def test_c_g_examples():
    assert c_g(2, 1, 55, 11) == 1
    assert c_g(2, 12, 55, 11) == 1
    assert c_g(2, 2, 55, 11) == 0  # 2 is not 1 mod 11
    for g in (2, 3, 5):
        for b in (1, 3, 7, 9):
            assert c_g(g, b, 4, 9) == 1  # gcd(f, v) = 1, v odd
    with pytest.raises(DomainError):
        c_g(2, 5, 55, 11)  # gcd(b, f) != 1


def test_c_g_even_v_quadratic_condition():
    # D = 8 for g = 2; with D | f and v even the character at b gates the value
    for b in (3, 5, 7, 9, 11, 13):
        expected = 1 if kronecker(8, b) == 1 else 0
        got = c_g(2, b, 8, 2)  # m = gcd(8, 2) = 2, so b = 1 mod 2 holds for odd b
        assert got == expected


def test_delta_truncated_leading_term():
    est = delta_truncated(2, 1, 5, 11, 1)
    assert est.partial_sum == Fraction(1, 440)
    assert est.terms[0].degree == 440
    assert est.terms[0].c_g == 1


def test_delta_truncated_ledger_reconstructs_sum():
    for n_max in (1, 10, 50, 200):
        est = delta_truncated(2, 1, 5, 11, n_max)
        assert sum((t.value for t in est.terms), Fraction(0)) == est.partial_sum
        assert all(t.degree >= 1 for t in est.terms)
        assert all(is_squarefree(t.n) and 1 % math.gcd(t.n, 5) == 0 for t in est.terms)


def test_delta_truncated_successive_truncations():
    prev = delta_truncated(2, 1, 5, 11, 30)
    for n_max in range(31, 40):
        cur = delta_truncated(2, 1, 5, 11, n_max)
        diff = cur.partial_sum - prev.partial_sum
        assert abs(diff) <= Fraction(2, n_max * 11 * euler_phi(n_max) * 10)
        prev = cur


def test_delta_truncated_positive_certificate():
    est = delta_truncated(2, 1, 5, 11, 200)
    assert est.positive
    assert est.lower_bound == est.partial_sum - est.tail_bound


def test_tail_bound_dominates_partial_tails():
    # the certified bound must exceed any finite continuation of the dropped sum
    est = delta_truncated(2, 1, 5, 11, 50)
    tail_piece = sum(
        (
            Fraction(2, 11 * 10 * n * euler_phi(n))
            for n in range(51, 400)
            if is_squarefree(n)
        ),
        Fraction(0),
    )
    assert est.tail_bound > tail_piece


def test_v_count_examples():
    vc = v_count(2, 1, 5, 11, 100, collect_witnesses=True)
    assert vc.count == 0 and vc.witnesses == ()
    assert v_count(2, 1, 5, 1, 20).count == 0
    # empty progression: no prime is 1 + 7*3 = 22 mod 7*3... and x below dt
    assert v_count(2, 3, 1, 7, 6).count == 0
    with pytest.raises(DomainError):
        v_count(2, 1, 5, 11, 1)


def test_v_count_monotone_and_witnessed():
    prev = 0
    for x in (100, 1000, 5000, 20000):
        vc = v_count(2, 1, 5, 3, x, collect_witnesses=True)
        assert vc.count >= prev
        assert len(vc.witnesses) == vc.count
        for p in vc.witnesses:
            assert p <= x and p % 15 == 4
        prev = vc.count


def test_v_count_partitions_indexed_primes():
    # for each small index t, summing over the d = 5 residue classes of a
    # recovers a direct census of primes with that index
    from qfibcong.congruence import residual_data

    x = 10**4
    for t in (1, 2, 3, 4, 6):
        direct = 0
        for p in primes_upto(x):
            if p == 2:
                continue
            rd = residual_data(Fraction(2), p)
            if rd.reason.value != "BadValuationAlpha" and rd.index == t:
                direct += 1
        total = sum(v_count(2, a, 5, t, x).count for a in range(5))
        assert total == direct


def test_consistency_report_shape():
    out = consistency_report(2, 1, 5, 3, 10**4, n_max=50)
    assert out["empirical_count"] >= 0
    assert out["truncated_density"] > 0
    assert isinstance(out["within_factor_2"], bool)
