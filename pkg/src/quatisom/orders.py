"""Maximal orders and integral ideals of B_{p,oo} as rank-4 lattices.

A lattice is stored as a 4x4 integer basis matrix (rows are coordinates on
1, i, j, k) together with a common positive denominator, canonicalized to
Hermite normal form so that structural equality is mathematical equality.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm, isqrt

from .linalg import hnf_rows, kernel_basis, vectors_of_value
from .quat import QuatAlgebra, Quaternion


class SamplingBudgetError(RuntimeError):
    """A randomized search exhausted its retry budget."""


def nrd_gram(p: int) -> list[list[Fraction]]:
    """Gram matrix of the reduced norm form on coordinates (1, i, j, k)."""
    d = [1, 1, p, p]
    return [[Fraction(d[i]) if i == j else Fraction(0) for j in range(4)] for i in range(4)]


def _qmul_int(x, y, p):
    """Product of quaternions given as integer 4-tuples."""
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return (
        x0 * y0 - x1 * y1 - p * (x2 * y2 + x3 * y3),
        x0 * y1 + x1 * y0 + p * (x2 * y3 - x3 * y2),
        x0 * y2 + x2 * y0 - x1 * y3 + x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    )


def _det4(m) -> int:
    """Determinant of a 4x4 integer matrix by cofactor expansion."""

    def det3(a, b, c, d, e, f, g, h, i):
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    (m00, m01, m02, m03), (m10, m11, m12, m13), (m20, m21, m22, m23), (m30, m31, m32, m33) = m
    return (
        m00 * det3(m11, m12, m13, m21, m22, m23, m31, m32, m33)
        - m01 * det3(m10, m12, m13, m20, m22, m23, m30, m32, m33)
        + m02 * det3(m10, m11, m13, m20, m21, m23, m30, m31, m33)
        - m03 * det3(m10, m11, m12, m20, m21, m22, m30, m31, m32)
    )


class Lattice4:
    """Full rank-4 Z-lattice in B_{p,oo}, canonical HNF basis over a denominator."""

    __slots__ = ("alg", "mat", "den")

    def __init__(self, alg: QuatAlgebra, rows, den: int = 1, *, _canonical=False):
        self.alg = alg
        if _canonical:
            self.mat = rows
            self.den = den
            return
        if den <= 0:
            raise ValueError("denominator must be positive")
        reduced = hnf_rows([list(r) for r in rows])
        if len(reduced) != 4:
            raise ValueError(f"lattice has rank {len(reduced)}, expected 4")
        g = den
        for row in reduced:
            for v in row:
                g = gcd(g, v)
        self.mat = tuple(tuple(v // g for v in row) for row in reduced)
        self.den = den // g

    @classmethod
    def from_quaternions(cls, alg: QuatAlgebra, quats) -> "Lattice4":
        dens = []
        ints = []
        for q in quats:
            co, d = q.int_coords()
            ints.append(co)
            dens.append(d)
        den = lcm(*dens) if dens else 1
        rows = [[c * (den // d) for c in co] for co, d in zip(ints, dens)]
        return cls(alg, rows, den)

    def basis(self) -> list[Quaternion]:
        d = self.den
        return [self.alg.quaternion(Fraction(r[0], d), Fraction(r[1], d),
                                     Fraction(r[2], d), Fraction(r[3], d))
                for r in self.mat]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Lattice4) and self.alg == other.alg
                and self.den == other.den and self.mat == other.mat)

    def __hash__(self):
        return hash((self.alg, self.den, self.mat))

    def __repr__(self):
        return f"Lattice4(den={self.den}, mat={[list(r) for r in self.mat]})"

    def det(self) -> Fraction:
        return Fraction(_det4(self.mat), self.den ** 4)

    def coords_of(self, q: Quaternion) -> list[Fraction] | None:
        """Coordinates of q on the basis, or None if q is not in Q-span (never here)."""
        target = [c * self.den for c in q.coords()]
        xs = []
        for r in range(4):
            piv = self.mat[r][r]
            acc = target[r]
            for t in range(r):
                acc -= xs[t] * self.mat[t][r]
            xs.append(Fraction(acc, piv))
        return xs

    def contains(self, q: Quaternion) -> bool:
        return all(x.denominator == 1 for x in self.coords_of(q))

    def contains_lattice(self, other: "Lattice4") -> bool:
        return all(self.contains(b) for b in other.basis())

    def add(self, other: "Lattice4") -> "Lattice4":
        d = lcm(self.den, other.den)
        rows = [[v * (d // self.den) for v in r] for r in self.mat]
        rows += [[v * (d // other.den) for v in r] for r in other.mat]
        return Lattice4(self.alg, rows, d)

    def mul(self, other: "Lattice4") -> "Lattice4":
        p = self.alg.p
        rows = []
        for x in self.mat:
            for y in other.mat:
                rows.append(list(_qmul_int(x, y, p)))
        return Lattice4(self.alg, rows, self.den * other.den)

    def scale(self, c) -> "Lattice4":
        c = Fraction(c)
        if c == 0:
            raise ValueError("cannot scale a lattice by zero")
        num, den = abs(c.numerator), c.denominator
        rows = [[v * num for v in r] for r in self.mat]
        return Lattice4(self.alg, rows, self.den * den)

    def rmul_q(self, q: Quaternion) -> "Lattice4":
        """The lattice L*q."""
        if q.is_zero():
            raise ValueError("cannot multiply a lattice by zero")
        co, d = q.int_coords()
        p = self.alg.p
        rows = [list(_qmul_int(r, co, p)) for r in self.mat]
        return Lattice4(self.alg, rows, self.den * d)

    def lmul_q(self, q: Quaternion) -> "Lattice4":
        """The lattice q*L."""
        if q.is_zero():
            raise ValueError("cannot multiply a lattice by zero")
        co, d = q.int_coords()
        p = self.alg.p
        rows = [list(_qmul_int(co, r, p)) for r in self.mat]
        return Lattice4(self.alg, rows, self.den * d)

    def conjugate(self) -> "Lattice4":
        rows = [[r[0], -r[1], -r[2], -r[3]] for r in self.mat]
        return Lattice4(self.alg, rows, self.den)

    def intersect(self, other: "Lattice4") -> "Lattice4":
        d = lcm(self.den, other.den)
        a = [[v * (d // self.den) for v in r] for r in self.mat]
        b = [[v * (d // other.den) for v in r] for r in other.mat]
        # x = u*a = v*b  <=>  (u, v) in kernel of [a^T | -b^T]
        sys = [[a[r][c] for r in range(4)] + [-b[r][c] for r in range(4)] for c in range(4)]
        ker = kernel_basis(sys)
        rows = []
        for vec in ker:
            rows.append([sum(vec[t] * a[t][c] for t in range(4)) for c in range(4)])
        return Lattice4(self.alg, rows, d)

    def index_in(self, other: "Lattice4") -> Fraction:
        """[other : self] as a positive rational (integer when self <= other)."""
        return abs(self.det() / other.det())

    def min_nonzero_norm(self) -> tuple[Quaternion, Fraction]:
        """Shortest nonzero vector under the reduced norm, deterministic."""
        from .linalg import shortest_vector

        _, vec, val = shortest_vector([list(r) for r in self.mat], nrd_gram(self.alg.p))
        d = self.den
        q = self.alg.quaternion(Fraction(vec[0], d), Fraction(vec[1], d),
                                Fraction(vec[2], d), Fraction(vec[3], d))
        return q, val / d ** 2

    def norm_value_vectors(self, value: Fraction) -> list[Quaternion]:
        """All lattice elements of exact reduced norm `value` (both signs)."""
        target = Fraction(value) * self.den ** 2
        out = []
        for vec in vectors_of_value([list(r) for r in self.mat], nrd_gram(self.alg.p), target):
            out.append(self.alg.quaternion(Fraction(vec[0], self.den), Fraction(vec[1], self.den),
                                           Fraction(vec[2], self.den), Fraction(vec[3], self.den)))
        return out


def left_order(lat: Lattice4) -> "Order":
    """O_L(L) = {a : a*L <= L}, computed as the intersection of L * b^-1."""
    acc = None
    for b in lat.basis():
        cand = lat.rmul_q(b.inverse())
        acc = cand if acc is None else acc.intersect(cand)
    return Order(acc)


def right_order(lat: Lattice4) -> "Order":
    """O_R(L) = {a : L*a <= L}."""
    acc = None
    for b in lat.basis():
        cand = lat.lmul_q(b.inverse())
        acc = cand if acc is None else acc.intersect(cand)
    return Order(acc)


def unit_orders(lat: Lattice4) -> tuple["Order", "Order"]:
    return left_order(lat), right_order(lat)


class Order:
    """An order in B_{p,oo}; validity is checked at construction."""

    __slots__ = ("lattice", "_units")

    def __init__(self, lattice: Lattice4):
        self.lattice = lattice
        self._units = None
        basis = lattice.basis()
        if not lattice.contains(lattice.alg.one()):
            raise ValueError("order must contain 1")
        for x in basis:
            if x.reduced_trace().denominator != 1 or x.reduced_norm().denominator != 1:
                raise ValueError("order elements must have integral trace and norm")
            for y in basis:
                if not lattice.contains(x * y):
                    raise ValueError("lattice is not closed under multiplication")

    @property
    def alg(self) -> QuatAlgebra:
        return self.lattice.alg

    def __eq__(self, other) -> bool:
        return isinstance(other, Order) and self.lattice == other.lattice

    def __hash__(self):
        return hash(("Order", self.lattice))

    def __repr__(self):
        return f"Order({self.lattice!r})"

    def basis(self) -> list[Quaternion]:
        return self.lattice.basis()

    def reduced_discriminant(self) -> int:
        basis = self.lattice.basis()
        gram = [[(x * y.conjugate()).reduced_trace() for y in basis] for x in basis]
        m = [row[:] for row in gram]
        det = Fraction(1)
        for c in range(4):
            piv = next((r for r in range(c, 4) if m[r][c] != 0), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = -det
            det *= m[c][c]
            for r in range(c + 1, 4):
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        det = abs(det)
        if det.denominator != 1:
            raise ValueError("non-integral discriminant")
        d = isqrt(int(det))
        if d * d != int(det):
            raise ValueError("discriminant determinant is not a perfect square")
        return d

    def is_maximal(self) -> bool:
        return self.reduced_discriminant() == self.alg.p

    def units(self) -> list[Quaternion]:
        """All elements of reduced norm 1 (at most 24)."""
        if self._units is None:
            self._units = self.lattice.norm_value_vectors(Fraction(1))
        return self._units

    def one_ideal(self) -> "Ideal":
        return Ideal(self.lattice, left=self, right=self, nrd=1)


def standard_extremal_order(alg: QuatAlgebra) -> Order:
    """The maximal order O0 = <1, i, (i+j)/2, (1+k)/2> for p = 3 mod 4."""
    rows = [[2, 0, 0, 0], [0, 2, 0, 0], [0, 1, 1, 0], [1, 0, 0, 1]]
    return Order(Lattice4(alg, rows, 2))


class Ideal:
    """Integral ideal given by its lattice; orders and norm cached lazily."""

    __slots__ = ("lattice", "_left", "_right", "_nrd")

    def __init__(self, lattice: Lattice4, *, left: Order | None = None,
                 right: Order | None = None, nrd: int | None = None):
        self.lattice = lattice
        self._left = left
        self._right = right
        self._nrd = nrd

    @property
    def alg(self) -> QuatAlgebra:
        return self.lattice.alg

    def __eq__(self, other) -> bool:
        return isinstance(other, Ideal) and self.lattice == other.lattice

    def __hash__(self):
        return hash(("Ideal", self.lattice))

    def __repr__(self):
        return f"Ideal(nrd={self._nrd}, {self.lattice!r})"

    def basis(self) -> list[Quaternion]:
        return self.lattice.basis()

    def left_order(self) -> Order:
        if self._left is None:
            self._left = left_order(self.lattice)
        return self._left

    def right_order(self) -> Order:
        if self._right is None:
            self._right = right_order(self.lattice)
        return self._right

    def nrd(self) -> int:
        if self._nrd is None:
            idx = self.lattice.index_in(self.left_order().lattice)
            if idx.denominator != 1:
                raise ValueError("ideal is not contained in its left order")
            n = isqrt(int(idx))
            if n * n != int(idx):
                raise ValueError("lattice index is not a perfect square: corrupted ideal")
            for b in self.basis():
                if b.reduced_norm() % n != 0:
                    raise ValueError("norm does not divide a basis element norm: corrupted ideal")
            self._nrd = n
        return self._nrd

    def is_integral(self) -> bool:
        return self.left_order().lattice.contains_lattice(self.lattice)

    def conjugate(self) -> "Ideal":
        return Ideal(self.lattice.conjugate(), left=self._right, right=self._left, nrd=self._nrd)

    def scale(self, c) -> "Ideal":
        nrd = None
        if self._nrd is not None and isinstance(c, int) and c > 0:
            nrd = self._nrd * c * c
        return Ideal(self.lattice.scale(c), left=self._left, right=self._right, nrd=nrd)

    def add(self, other: "Ideal") -> "Ideal":
        return Ideal(self.lattice.add(other.lattice))


def ideal_norm(ideal: Ideal) -> int:
    return ideal.nrd()


def lattice_nrd(lat: Lattice4) -> Fraction:
    """sqrt([O_L(L) : L]) as an exact rational, for possibly non-integral lattices."""
    idx = lat.index_in(left_order(lat).lattice)
    num, den = idx.numerator, idx.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError("lattice index is not a perfect square")
    return Fraction(rn, rd)


def multiply_ideals(i: Ideal, j: Ideal, *, check_compatible: bool = True) -> Ideal:
    """Product lattice I*J; with check_compatible, O_R(I) must equal O_L(J)."""
    if check_compatible and i.right_order() != j.left_order():
        raise ValueError("incompatible ideals: O_R(I) != O_L(J)")
    out = Ideal(i.lattice.mul(j.lattice), left=i._left, right=j._right)
    if check_compatible and i._nrd is not None and j._nrd is not None:
        out._nrd = i._nrd * j._nrd
    return out


def principal_ideal(order: Order, gamma: Quaternion) -> Ideal:
    """The left ideal O*gamma."""
    n = gamma.reduced_norm()
    return Ideal(order.lattice.rmul_q(gamma), left=order,
                 nrd=int(n) if n.denominator == 1 else None)


def connecting_ideal(o1: Order, o2: Order) -> Ideal:
    """I_psi = d*O1*O2 with d minimal such that the product is integral."""
    prod = o1.lattice.mul(o2.lattice)
    d = 1
    for target in (o1.lattice, o2.lattice):
        for b in prod.basis():
            for c in target.coords_of(b):
                d = lcm(d, c.denominator)
    lat = prod.scale(d) if d != 1 else prod
    return Ideal(lat, left=o1, right=o2)


def two_sided_prime(order: Order) -> Ideal:
    """The unique two-sided ideal of reduced norm p (the ramified prime)."""
    p = order.alg.p
    basis = order.basis()
    # radical of O/pO: kernel of the trace form Trd(x * conj(y)) mod p
    gram = [[int((x * y.conjugate()).reduced_trace()) % p for y in basis] for x in basis]
    # kernel over F_p via integer kernel of [gram | p*I]
    sys = [row[:] + [p if i == j else 0 for j in range(4)] for i, row in enumerate(gram)]
    ker = kernel_basis([[sys[r][c] for c in range(8)] for r in range(4)])
    gens = []
    for vec in ker:
        co = vec[:4]
        if all(v % p == 0 for v in co):
            continue
        gens.append(sum((c * b for c, b in zip(co[1:], basis[1:])), co[0] * basis[0]))
    lat = order.lattice.scale(p)
    for g in gens:
        lat = lat.add(order.lattice.rmul_q(g).mul(order.lattice))
    out = Ideal(lat, left=order, right=order)
    if out.nrd() != p:
        raise ArithmeticError("two-sided prime construction failed")
    return out


def random_left_ideal(o0: Order, ell: int, m: int, rng: random.Random,
                      *, budget: int = 1000) -> Ideal:
    """Random integral left O0-ideal of reduced norm exactly l^m.

    Samples a uniform point (a : b) of P^1(Z/l^m) and lifts the local row
    [[a, b], [0, 0]] through the splitting O0 (x) Z_l = Mat_2 to a generator
    gamma; the ideal is O0*gamma + l^m*O0, uniform over the l^(m-1)*(l+1)
    primitive ideals of norm l^m.
    """
    if o0.alg.p % ell == 0:
        raise ValueError("l must not divide p")
    if m == 0:
        return o0.one_ideal()
    from .localization import Splitting

    target = ell ** m
    split = Splitting(o0, ell, m)
    for _ in range(budget):
        a = rng.randrange(target)
        b = rng.randrange(target)
        if a % ell == 0 and b % ell == 0:
            continue
        gamma = split.from_matrix(((a, b), (0, 0)))
        if gamma.reduced_norm() % target != 0:  # defensive; holds by construction
            continue
        lat = o0.lattice.rmul_q(gamma).add(o0.lattice.scale(target))
        cand = Ideal(lat, left=o0)
        if cand.nrd() == target:
            return cand
    raise SamplingBudgetError(f"no ideal of norm {ell}^{m} found in {budget} samples")
