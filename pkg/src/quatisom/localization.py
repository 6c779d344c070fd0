"""l-adic machinery: splitting O0 (x) Z_l = Mat_2 truncated at Z/l^m,
right-gcd of 2x2 Hermite normal forms, l-types and local ideal generators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import hnf_rows, snf_prime_power
from .orders import Ideal, Order
from .quat import Quaternion, is_prime

Mat2 = tuple[tuple[int, int], tuple[int, int]]


class PrecisionError(ValueError):
    """A valuation reached the working precision l^m."""


def _sqrt_mod_prime(a: int, ell: int) -> int | None:
    """Tonelli-Shanks; deterministic nonresidue search, None if no root."""
    a %= ell
    if a == 0:
        return 0
    if pow(a, (ell - 1) // 2, ell) != 1:
        return None
    if ell % 4 == 3:
        return pow(a, (ell + 1) // 4, ell)
    q, s = ell - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (ell - 1) // 2, ell) != ell - 1:
        z += 1
    m, c, t, r = s, pow(z, q, ell), pow(a, q, ell), pow(a, (q + 1) // 2, ell)
    while t != 1:
        i, t2 = 1, t * t % ell
        while t2 != 1:
            t2 = t2 * t2 % ell
            i += 1
        b = pow(c, 1 << (m - i - 1), ell)
        r, c, t, m = r * b % ell, b * b % ell, t * b * b % ell, i
    return r


def _mat_mul2(a: Mat2, b: Mat2, mod: int) -> Mat2:
    return (
        ((a[0][0] * b[0][0] + a[0][1] * b[1][0]) % mod,
         (a[0][0] * b[0][1] + a[0][1] * b[1][1]) % mod),
        ((a[1][0] * b[0][0] + a[1][1] * b[1][0]) % mod,
         (a[1][0] * b[0][1] + a[1][1] * b[1][1]) % mod),
    )


def _val_cap(x: int, ell: int, cap: int) -> int:
    x = abs(x)
    if x == 0:
        return cap
    v = 0
    while x % ell == 0 and v < cap:
        x //= ell
        v += 1
    return v


@dataclass(frozen=True)
class LType:
    """Sorted pair of valuations of the Smith invariant factors."""

    d1: int
    d2: int

    def __post_init__(self):
        if self.d1 > self.d2:
            raise ValueError("l-type valuations must be sorted")

    def as_tuple(self) -> tuple[int, int]:
        return (self.d1, self.d2)


class Splitting:
    """Ring isomorphism O0/l^m O0 -> Mat_2(Z/l^m Z) for an odd prime l != p.

    i maps to [[0,1],[-1,0]] and j to [[a,b],[b,-a]] with a^2+b^2 = -p
    mod l^m, found by search mod l followed by Hensel lifting.
    """

    def __init__(self, o0: Order, ell: int, m: int):
        p = o0.alg.p
        if ell == 2 or ell == p or not is_prime(ell):
            raise ValueError("l must be an odd prime different from p")
        if m < 1:
            raise ValueError("precision exponent must be >= 1")
        self.order = o0
        self.ell = ell
        self.m = m
        self.mod = ell ** m
        a, b = self._solve_a_b(p, ell, m)
        mod = self.mod
        img_one: Mat2 = ((1, 0), (0, 1))
        img_i: Mat2 = ((0, 1), (mod - 1, 0))
        img_j: Mat2 = ((a % mod, b % mod), (b % mod, (-a) % mod))
        img_k = _mat_mul2(img_i, img_j, mod)
        self.images = (img_one, img_i, img_j, img_k)
        # columns of phi: images of the basis 1, i, j, k flattened
        phi = [[self.images[c][r // 2][r % 2] for c in range(4)] for r in range(4)]
        self._phi = phi
        self._phi_inv = self._invert_mod(phi, mod)

    @staticmethod
    def _solve_a_b(p: int, ell: int, m: int) -> tuple[int, int]:
        target = (-p) % ell
        for a in range(ell):
            b2 = (target - a * a) % ell
            b = _sqrt_mod_prime(b2, ell)
            if b is not None and b % ell != 0:
                break
        else:
            raise ValueError("no splitting pair found mod l")
        # Hensel: fix a, lift b with 2b invertible
        mod = ell
        for _ in range(m - 1):
            mod *= ell
            f = (a * a + b * b + p) % mod
            step = (-f * pow(2 * b, -1, mod)) % mod
            b = (b + step) % mod
        assert (a * a + b * b + p) % (ell ** m) == 0
        return a, b

    @staticmethod
    def _invert_mod(mat, mod):
        n = len(mat)
        aug = [[mat[r][c] % mod for c in range(n)] + [1 if r == c else 0 for c in range(n)]
               for r in range(n)]
        for c in range(n):
            piv = inv = None
            for r in range(c, n):
                try:
                    inv = pow(aug[r][c], -1, mod)
                except ValueError:
                    continue
                piv = r
                break
            if piv is None:
                raise ValueError("matrix not invertible mod l^m")
            aug[c], aug[piv] = aug[piv], aug[c]
            aug[c] = [v * inv % mod for v in aug[c]]
            for r in range(n):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [(v - f * w) % mod for v, w in zip(aug[r], aug[c])]
        return [row[n:] for row in aug]

    def to_matrix(self, x: Quaternion) -> Mat2:
        """Image of x in Mat_2(Z/l^m); denominators must be prime to l."""
        mod = self.mod
        co = []
        for c in x.coords():
            if c.denominator % self.ell == 0:
                raise ValueError("denominator not invertible mod l^m")
            co.append(c.numerator * pow(c.denominator, -1, mod) % mod)
        ent = [sum(self._phi[r][c] * co[c] for c in range(4)) % mod for r in range(4)]
        return ((ent[0], ent[1]), (ent[2], ent[3]))

    def from_matrix(self, mat: Mat2) -> Quaternion:
        """Lift of the preimage, coordinates reduced into [0, l^m)."""
        mod = self.mod
        vec = [mat[0][0], mat[0][1], mat[1][0], mat[1][1]]
        co = [sum(self._phi_inv[r][c] * vec[c] for c in range(4)) % mod for r in range(4)]
        return self.order.alg.quaternion(*co)


def split_order(o0: Order, ell: int, m: int) -> Splitting:
    return Splitting(o0, ell, m)


# ---------------------------------------------------------------------------
# Normal forms and right-gcd in Mat_2(Z_l)
# ---------------------------------------------------------------------------


def _is_normal_form(a: Mat2, ell: int) -> bool:
    (x, r), (z, y) = a
    if z != 0:
        return False
    for v in (x, y):
        if v <= 0:
            return False
        t = v
        while t % ell == 0:
            t //= ell
        if t != 1:
            return False
    return 0 <= r < y


def hnf2_mod(mat: Mat2, ell: int, m: int) -> Mat2:
    """Normal form [[l^n, r], [0, l^m']] of the left ideal generated by mat
    in Mat_2(Z/l^m), pivots normalized to exact powers of l."""
    mod = ell ** m
    rows = [[mat[0][0] % mod, mat[0][1] % mod], [mat[1][0] % mod, mat[1][1] % mod],
            [mod, 0], [0, mod]]
    h = hnf_rows(rows)
    # h has two rows [[g1, t], [0, g2]] with g1, g2 dividing l^m
    g1, t = h[0]
    g2 = h[1][1] if len(h) > 1 else mod
    v1, v2 = _val_cap(g1, ell, m), _val_cap(g2, ell, m)
    u1 = g1 // ell ** v1
    piv2 = ell ** v2
    r = t * pow(u1, -1, mod) % piv2 if piv2 > 1 else 0
    return ((ell ** v1, r), (0, piv2))


def rgcd_hnf(a1: Mat2, a2: Mat2, ell: int) -> Mat2:
    """Right-gcd of two normal-form matrices: generator of the ideal sum.

    With A_i = [[l^{n_i}, r_i], [0, l^{m_i}]] and n_2 >= n_1 after swapping,
    the result is [[l^{n_1}, r_1 mod l^mhat], [0, l^mhat]] where
    mhat = min(m_1, m_2, val(r_2 - l^{n_2-n_1} r_1)).
    """
    if not _is_normal_form(a1, ell) or not _is_normal_form(a2, ell):
        raise ValueError("inputs must be in the normal form [[l^n, r], [0, l^m]]")
    cap = max(a1[1][1], a2[1][1]).bit_length() * 2 + 4  # safe valuation cap
    n1, n2 = _val_cap(a1[0][0], ell, cap), _val_cap(a2[0][0], ell, cap)
    if n2 < n1:
        a1, a2 = a2, a1
        n1, n2 = n2, n1
    r1, r2 = a1[0][1], a2[0][1]
    m1, m2 = _val_cap(a1[1][1], ell, cap), _val_cap(a2[1][1], ell, cap)
    diff = r2 - ell ** (n2 - n1) * r1
    mhat = min(m1, m2) if diff == 0 else min(m1, m2, _val_cap(diff, ell, cap))
    piv = ell ** mhat
    return ((ell ** n1, r1 % piv), (0, piv))


# ---------------------------------------------------------------------------
# l-types
# ---------------------------------------------------------------------------


def _ltype_of_matrix(mat: Mat2, splitting: Splitting) -> LType:
    _, d, _ = snf_prime_power([[mat[0][0], mat[0][1]], [mat[1][0], mat[1][1]]],
                              splitting.ell, splitting.m)
    vals = sorted(_val_cap(d[t][t], splitting.ell, splitting.m) for t in range(2))
    if vals[1] >= splitting.m:
        raise PrecisionError("valuation reaches precision l^m; raise m")
    return LType(vals[0], vals[1])


def _local_normal_form_of_ideal(ideal: Ideal, splitting: Splitting) -> Mat2:
    acc = None
    for b in ideal.basis():
        nf = hnf2_mod(splitting.to_matrix(b), splitting.ell, splitting.m)
        acc = nf if acc is None else rgcd_hnf(acc, nf, splitting.ell)
    return acc


def l_type(x, splitting: Splitting) -> LType:
    """l-type of a quaternion or ideal: valuations of the invariant factors."""
    if isinstance(x, Quaternion):
        return _ltype_of_matrix(splitting.to_matrix(x), splitting)
    if isinstance(x, Ideal):
        nf = _local_normal_form_of_ideal(x, splitting)
        return _ltype_of_matrix(nf, splitting)
    raise TypeError("l_type expects a Quaternion or an Ideal")


def l_type_of_ideal(ideal: Ideal, ell: int) -> LType:
    """l-type at automatically sufficient precision v_l(Nrd(I)) + 1."""
    v = _val_cap(ideal.nrd(), ell, ideal.nrd().bit_length() + 2)
    split = Splitting(ideal.left_order(), ell, v + 1)
    return l_type(ideal, split)


# ---------------------------------------------------------------------------
# LocalGenerator
# ---------------------------------------------------------------------------


def local_generator(ell: int, ideal: Ideal, alpha: Quaternion) -> tuple[Quaternion, Quaternion]:
    """Given a left O0-ideal I of norm l^m with l-type (0, m) and alpha of
    reduced norm l^m, return (alpha, x) with Nrd(x) prime to l and alpha*x
    generating I locally at l; in fact alpha*x lies in I globally.
    """
    o0 = ideal.left_order()
    n = ideal.nrd()
    m = _val_cap(n, ell, n.bit_length() + 2)
    if ell ** m != n:
        raise ValueError(f"ideal norm {n} is not a power of {ell}")
    if alpha.reduced_norm() != n:
        raise ValueError("Nrd(alpha) must equal the ideal norm")
    if m == 0:
        return alpha, o0.alg.one()

    split = Splitting(o0, ell, m)
    m_alpha = split.to_matrix(alpha)
    # types must agree, else no invertible local y exists
    probe = Splitting(o0, ell, m + 1)
    t_ideal = l_type(ideal, probe)
    t_alpha = l_type(alpha, probe)
    if t_ideal != t_alpha:
        raise ValueError(f"l-type mismatch: ideal {t_ideal.as_tuple()}, alpha {t_alpha.as_tuple()}")
    if t_ideal.as_tuple() != (0, m):
        raise ValueError(f"ideal is divisible by {ell}: l-type {t_ideal.as_tuple()}")

    m_beta = _local_normal_form_of_ideal(ideal, split)
    s1, d1, t1 = snf_prime_power([list(m_alpha[0]), list(m_alpha[1])], ell, m)
    s2, d2, t2 = snf_prime_power([list(m_beta[0]), list(m_beta[1])], ell, m)
    assert d1 == d2, "equal l-types must give equal local Smith forms"
    mod = split.mod
    t1m = ((t1[0][0], t1[0][1]), (t1[1][0], t1[1][1]))
    t2m = ((t2[0][0], t2[0][1]), (t2[1][0], t2[1][1]))
    t2_inv = _inv2_mod(t2m, mod)
    t_mat = _mat_mul2(t1m, t2_inv, mod)
    x = split.from_matrix(t_mat)

    if x.reduced_norm() % ell == 0:
        raise ArithmeticError("constructed x has norm divisible by l")
    prod = alpha * x
    if not ideal.lattice.contains(prod):
        raise ArithmeticError("alpha*x does not lie in the ideal")
    return alpha, x


def _inv2_mod(a: Mat2, mod: int) -> Mat2:
    det = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % mod
    inv = pow(det, -1, mod)
    return ((a[1][1] * inv % mod, -a[0][1] * inv % mod),
            (-a[1][0] * inv % mod, a[0][0] * inv % mod))
