import random
from math import gcd, isqrt

import pytest

from quatisom import (cornacchia, equivalent_power_norm_ideal, random_left_ideal,
                      represent_integer)
from quatisom.normeq import _ideal_is_primitive
from quatisom.orders import SamplingBudgetError


def brute_cornacchia(d, m):
    out = []
    x = 0
    while x * x <= m:
        rem = m - x * x
        if rem % d == 0:
            y = isqrt(rem // d)
            if y * y * d + x * x == m and gcd(x, y) == 1:
                out.append((x, y))
        x += 1
    return out


def test_cornacchia_examples():
    assert cornacchia(1, 2) == (1, 1)
    assert cornacchia(1, 243) is None  # 3 = 3 mod 4 to an odd power
    assert cornacchia(1, 625) == (7, 24)
    assert cornacchia(1, 1) == (1, 0)
    assert cornacchia(2, 2) == (0, 1)
    assert cornacchia(3, 7) == (2, 1)


def test_cornacchia_matches_brute_force_sample():
    for d in (1, 2, 3):
        for m in range(1, 3000):
            got = cornacchia(d, m)
            want = brute_cornacchia(d, m)
            assert (got is None) == (not want), (d, m, got, want)
            if got is not None:
                x, y = got
                assert x * x + d * y * y == m
                assert gcd(x, y) == 1


def test_cornacchia_prime_powers():
    # the primary use: d = 1, odd prime powers
    for m in (5 ** 6, 13 ** 4, 3 ** 7, 7 ** 5, 29 ** 3):
        got = cornacchia(1, m)
        want = brute_cornacchia(1, m)
        assert (got is None) == (not want)
        if got:
            assert got in want or (got[1], got[0]) in want


def test_represent_integer_examples(o0_103, alg103):
    rng = random.Random(51)
    assert represent_integer(o0_103, 1, rng) == alg103.one()
    a = represent_integer(o0_103, 243, rng)
    assert a.reduced_norm() == 243
    assert o0_103.lattice.contains(a)


def test_represent_integer_random(o0_103):
    rng = random.Random(52)
    hits = 0
    for _ in range(40):
        n = rng.randint(103 ** 2, 103 ** 3)
        try:
            a = represent_integer(o0_103, n, rng, budget=4000)
        except SamplingBudgetError:
            continue
        hits += 1
        assert a.reduced_norm() == n
        assert o0_103.lattice.contains(a)
        assert a.reduced_trace().denominator == 1
    assert hits >= 30  # Las Vegas: the vast majority succeed at this size


def test_equivalent_power_norm_trivial(o0_103, alg103):
    ideal, beta = equivalent_power_norm_ideal(o0_103.one_ideal(), 5, random.Random(53))
    assert ideal.lattice == o0_103.lattice
    assert beta == alg103.one()


def test_equivalent_power_norm_invariants(o0_103):
    rng = random.Random(54)
    for seed in range(6):
        j = random_left_ideal(o0_103, 3, 4, rng)
        ideal, beta = equivalent_power_norm_ideal(j, 5, rng)
        n = ideal.nrd()
        while n % 5 == 0:
            n //= 5
        assert n == 1
        assert ideal.left_order() == o0_103
        assert _ideal_is_primitive(ideal, 5)
        # witness: beta in J, Nrd(beta) = Nrd(J) * l^e, I = J conj(beta)/Nrd(J)
        assert j.lattice.contains(beta)
        assert beta.reduced_norm() == j.nrd() * ideal.nrd()
        from fractions import Fraction
        assert ideal.lattice == j.lattice.rmul_q(beta.conjugate()).scale(Fraction(1, j.nrd()))
        # chi-identity: J * conj(beta) is an integral multiple of Nrd(J)
        chi = j.lattice.rmul_q(beta.conjugate())
        assert o0_103.lattice.scale(j.nrd()).contains_lattice(chi)
        # right orders conjugate through beta: O_R(I) = beta O_R(J) beta^-1
        o_r = ideal.right_order().lattice
        conj_or = j.right_order().lattice.lmul_q(beta).rmul_q(beta.inverse())
        assert o_r == conj_or


def test_equivalent_power_norm_force_rebuild(o0_103):
    rng = random.Random(55)
    j = random_left_ideal(o0_103, 3, 4, rng)  # norm 81 < p = 103
    ideal, beta = equivalent_power_norm_ideal(j, 3, rng, force_rebuild=True)
    assert ideal.nrd() > 103
    assert ideal.left_order() == o0_103
    assert j.lattice.contains(beta)


def test_equivalent_power_norm_rejects_bad_ell(o0_103):
    rng = random.Random(56)
    j = random_left_ideal(o0_103, 3, 3, rng)
    with pytest.raises(ValueError):
        equivalent_power_norm_ideal(j, 2, rng)
    with pytest.raises(ValueError):
        equivalent_power_norm_ideal(j, 103, rng)
