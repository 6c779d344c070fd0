import random
from fractions import Fraction
from itertools import permutations

import pytest

from quatisom import (l_type, l_type_of_ideal, local_generator, random_left_ideal,
                      rgcd_hnf, split_order)
from quatisom.linalg import hnf_rows
from quatisom.localization import _mat_mul2


def test_split_order_relations(o0_103):
    sp = split_order(o0_103, 3, 5)
    mod = 3 ** 5
    alg = o0_103.alg
    one, i, j, k = alg.gens()
    mi, mj = sp.to_matrix(i), sp.to_matrix(j)
    neg_one = ((mod - 1, 0), (0, mod - 1))
    assert _mat_mul2(mi, mi, mod) == neg_one
    assert _mat_mul2(mj, mj, mod) == (((-103) % mod, 0), (0, (-103) % mod))
    assert _mat_mul2(mi, mj, mod) == tuple(
        tuple((-v) % mod for v in row) for row in _mat_mul2(mj, mi, mod))
    # i -> [[0,1],[-1,0]] and j -> [[a,b],[b,-a]] with a^2+b^2 = -p
    assert mi == ((0, 1), (mod - 1, 0))
    a, b = mj[0]
    assert (a * a + b * b) % mod == (-103) % mod == 140
    assert mj == ((a, b), (b, (-a) % mod))


def test_split_order_rejects_bad_primes(o0_103):
    with pytest.raises(ValueError):
        split_order(o0_103, 2, 3)
    with pytest.raises(ValueError):
        split_order(o0_103, 103, 2)
    with pytest.raises(ValueError):
        split_order(o0_103, 15, 2)


def test_splitting_is_ring_hom(o0_103):
    sp = split_order(o0_103, 3, 5)
    mod = sp.mod
    rng = random.Random(41)
    alg = o0_103.alg
    for _ in range(60):
        x = alg.quaternion(*(Fraction(rng.randint(-20, 20), rng.choice((1, 2)))
                             for _ in range(4)))
        y = alg.quaternion(*(rng.randint(-20, 20) for _ in range(4)))
        assert sp.to_matrix(x * y) == _mat_mul2(sp.to_matrix(x), sp.to_matrix(y), mod)
        mx = sp.to_matrix(x)
        det = (mx[0][0] * mx[1][1] - mx[0][1] * mx[1][0]) % mod
        assert det == x.reduced_norm().numerator * pow(x.reduced_norm().denominator, -1, mod) % mod


def test_splitting_roundtrip(o0_103):
    sp = split_order(o0_103, 3, 4)
    for b in o0_103.basis():
        assert sp.to_matrix(sp.from_matrix(sp.to_matrix(b))) == sp.to_matrix(b)


def test_rgcd_examples():
    a = ((1, 1), (0, 9))
    assert rgcd_hnf(a, a, 3) == a
    # spec worked example: mhat = min(2, 1, val3(2 - 3*1)) = 0
    out = rgcd_hnf(((1, 1), (0, 9)), ((3, 2), (0, 3)), 3)
    assert out == ((1, 0), (0, 1))
    with pytest.raises(ValueError):
        rgcd_hnf(((2, 0), (0, 3)), a, 3)  # pivot not a power of 3
    with pytest.raises(ValueError):
        rgcd_hnf(((3, 5), (0, 3)), a, 3)  # r not reduced mod the second pivot


def brute_rgcd(a1, a2, ell, m):
    """Row-span oracle: integer HNF of the stacked rows plus l^m scalars,
    pivots normalized to powers of l."""
    mod = ell ** m
    rows = [list(a1[0]), list(a1[1]), list(a2[0]), list(a2[1]), [mod, 0], [0, mod]]
    h = hnf_rows(rows)
    g1, t = h[0]
    g2 = h[1][1] if len(h) > 1 else mod

    def val(x):
        v = 0
        while x % ell == 0:
            x //= ell
            v += 1
        return v, x

    v1, u1 = val(g1)
    v2, u2 = val(g2)
    piv2 = ell ** v2
    r = t * pow(u1, -1, mod) % piv2 if piv2 > 1 else 0
    return ((ell ** v1, r), (0, piv2))


def test_rgcd_against_row_span_oracle():
    rng = random.Random(42)
    for ell in (3, 5, 7):
        for _ in range(300):
            mats = []
            for _ in range(2):
                n = rng.randint(0, 3)
                m = rng.randint(0, 3)
                r = rng.randrange(ell ** m)
                mats.append(((ell ** n, r), (0, ell ** m)))
            cap = max(3, max(v for mat in mats for v in (mat[0][0], mat[1][1])).bit_length())
            prec = 6
            got = rgcd_hnf(mats[0], mats[1], ell)
            want = brute_rgcd(mats[0], mats[1], ell, prec)
            assert got == want, (mats, got, want)


def test_rgcd_associative_commutative():
    rng = random.Random(43)
    ell = 3
    for _ in range(60):
        mats = []
        for _ in range(3):
            n = rng.randint(0, 3)
            m = rng.randint(0, 3)
            mats.append(((ell ** n, rng.randrange(ell ** m)), (0, ell ** m)))

        def fold(seq):
            acc = seq[0]
            for x in seq[1:]:
                acc = rgcd_hnf(acc, x, ell)
            return acc

        results = {fold(list(p)) for p in permutations(mats)}
        assert len(results) == 1


def test_l_type_scalars(o0_103):
    sp = split_order(o0_103, 3, 4)
    alg = o0_103.alg
    assert l_type(alg.quaternion(9), sp).as_tuple() == (2, 2)
    assert l_type(alg.quaternion(3), sp).as_tuple() == (1, 1)
    with pytest.raises(ValueError):
        l_type(alg.quaternion(81), sp)  # valuation reaches the precision


def test_l_type_of_ideals(o0_103):
    rng = random.Random(44)
    ideal = random_left_ideal(o0_103, 3, 5, rng)
    assert l_type_of_ideal(ideal, 3).as_tuple() == (0, 5)
    scaled = ideal.scale(3)
    assert l_type_of_ideal(scaled, 3).as_tuple() == (1, 6)


def test_l_type_independent_of_splitting(o0_103):
    # two splittings from different precisions/lifts agree on random elements
    rng = random.Random(45)
    alg = o0_103.alg
    sp1 = split_order(o0_103, 3, 6)
    sp2 = split_order(o0_103, 3, 7)
    for _ in range(40):
        x = alg.quaternion(*(rng.randint(-40, 40) for _ in range(4)))
        if x.is_zero():
            continue
        n = int(x.reduced_norm())
        v = 0
        while n % 3 == 0:
            n //= 3
            v += 1
        if v >= 5:
            continue
        assert l_type(x, sp1) == l_type(x, sp2)


def test_local_generator_trivial(o0_103, alg103):
    alpha, x = local_generator(3, o0_103.one_ideal(), alg103.one())
    assert x == alg103.one()


def test_local_generator_paper_instance(example_p103, o0_103):
    alg = example_p103["alg"]
    i11 = example_p103["I11"]
    alpha = example_p103["alpha"]
    assert alpha.reduced_norm() == 243
    a, x = local_generator(3, i11, alpha)
    assert x.reduced_norm() % 3 != 0
    assert i11.lattice.contains(alpha * x)
    # local generation witnessed at precision l^m
    gen = o0_103.lattice.rmul_q(alpha * x).add(o0_103.lattice.scale(243))
    assert gen == i11.lattice


def test_paper_witness_pair(example_p103):
    i11, alpha, nu1 = example_p103["I11"], example_p103["alpha"], example_p103["nu1"]
    assert i11.lattice.contains(alpha * nu1)
    assert nu1.reduced_norm() % 3 != 0


def test_local_generator_type_mismatch(o0_103, alg103):
    rng = random.Random(46)
    i11 = random_left_ideal(o0_103, 3, 4, rng)
    bad_alpha = alg103.quaternion(9)  # norm 81 = 3^4 but type (2, 2)
    with pytest.raises(ValueError):
        local_generator(3, i11, bad_alpha)


def test_local_generator_random(o0_103):
    from quatisom import represent_integer

    rng = random.Random(47)
    for _ in range(4):
        i11 = random_left_ideal(o0_103, 3, 5, rng)
        while True:
            alpha = represent_integer(o0_103, 243, rng)
            if not o0_103.lattice.scale(3).contains(alpha):
                break
        a, x = local_generator(3, i11, alpha)
        assert x.reduced_norm() % 3 != 0
        assert i11.lattice.contains(alpha * x)
