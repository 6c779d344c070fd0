"""Arbitrary-precision rational quaternions over B_{p,oo} for p = 3 mod 4.

The algebra has basis 1, i, j, k with i^2 = -1, j^2 = -p and k = ij = -ji.
All coordinates are `fractions.Fraction`, so arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Union[int, Fraction]

# Deterministic Miller-Rabin; this base set is proven correct for
# n < 3_317_044_064_679_887_385_961_981, far beyond desk scale.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class QuatAlgebra:
    """The quaternion algebra B_{p,oo} with p prime, p = 3 mod 4, p > 3."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p <= 3 or p % 4 != 3:
            raise ValueError(f"p must be a prime = 3 mod 4 greater than 3, got {p}")
        if not is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        self.p = p

    def __eq__(self, other) -> bool:
        return isinstance(other, QuatAlgebra) and self.p == other.p

    def __hash__(self):
        return hash(("QuatAlgebra", self.p))

    def __repr__(self):
        return f"QuatAlgebra(p={self.p})"

    def quaternion(self, a0: Rat, a1: Rat = 0, a2: Rat = 0, a3: Rat = 0) -> "Quaternion":
        return Quaternion(self, Fraction(a0), Fraction(a1), Fraction(a2), Fraction(a3))

    def zero(self) -> "Quaternion":
        return self.quaternion(0)

    def one(self) -> "Quaternion":
        return self.quaternion(1)

    def gens(self):
        """The basis quaternions 1, i, j, k."""
        one = self.quaternion(1)
        i = self.quaternion(0, 1)
        j = self.quaternion(0, 0, 1)
        k = self.quaternion(0, 0, 0, 1)
        return one, i, j, k


@dataclass(frozen=True)
class Quaternion:
    """Element a0 + a1*i + a2*j + a3*k of B_{p,oo}, coordinates in Q."""

    alg: QuatAlgebra
    a0: Fraction
    a1: Fraction
    a2: Fraction
    a3: Fraction

    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a0, self.a1, self.a2, self.a3)

    def int_coords(self) -> tuple[tuple[int, int, int, int], int]:
        """Coordinates as (4 integers, common positive denominator)."""
        from math import lcm

        den = lcm(self.a0.denominator, self.a1.denominator,
                  self.a2.denominator, self.a3.denominator)
        return (
            (int(self.a0 * den), int(self.a1 * den),
             int(self.a2 * den), int(self.a3 * den)),
            den,
        )

    def _check_same(self, other: "Quaternion"):
        if self.alg != other.alg:
            raise ValueError("quaternions live in different algebras (distinct p)")

    def __add__(self, other: "Quaternion") -> "Quaternion":
        self._check_same(other)
        return Quaternion(self.alg, self.a0 + other.a0, self.a1 + other.a1,
                          self.a2 + other.a2, self.a3 + other.a3)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        self._check_same(other)
        return Quaternion(self.alg, self.a0 - other.a0, self.a1 - other.a1,
                          self.a2 - other.a2, self.a3 - other.a3)

    def __neg__(self) -> "Quaternion":
        return Quaternion(self.alg, -self.a0, -self.a1, -self.a2, -self.a3)

    def __mul__(self, other) -> "Quaternion":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Quaternion(self.alg, self.a0 * c, self.a1 * c, self.a2 * c, self.a3 * c)
        self._check_same(other)
        p = self.alg.p
        x0, x1, x2, x3 = self.a0, self.a1, self.a2, self.a3
        y0, y1, y2, y3 = other.a0, other.a1, other.a2, other.a3
        return Quaternion(
            self.alg,
            x0 * y0 - x1 * y1 - p * (x2 * y2 + x3 * y3),
            x0 * y1 + x1 * y0 + p * (x2 * y3 - x3 * y2),
            x0 * y2 + x2 * y0 - x1 * y3 + x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        )

    def __rmul__(self, other) -> "Quaternion":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other) -> "Quaternion":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Quaternion(self.alg, self.a0 / c, self.a1 / c, self.a2 / c, self.a3 / c)
        self._check_same(other)
        return self * other.inverse()

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.alg, self.a0, -self.a1, -self.a2, -self.a3)

    def reduced_norm(self) -> Fraction:
        p = self.alg.p
        return self.a0 ** 2 + self.a1 ** 2 + p * (self.a2 ** 2 + self.a3 ** 2)

    def reduced_trace(self) -> Fraction:
        return 2 * self.a0

    def inverse(self) -> "Quaternion":
        n = self.reduced_norm()
        if n == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conjugate() / n

    def is_zero(self) -> bool:
        return self.a0 == 0 and self.a1 == 0 and self.a2 == 0 and self.a3 == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for c, sym in zip(self.coords(), ("", "i", "j", "k")):
            if c == 0:
                continue
            s = str(c) if not sym else (sym if abs(c) == 1 else f"{abs(c)}*{sym}")
            if sym and c < 0:
                s = "-" + s
            terms.append(s if not terms or s.startswith("-") else "+" + s)
        return "".join(terms) if terms else "0"


def multiply(x: Quaternion, y: Quaternion) -> Quaternion:
    return x * y


def conjugate(x: Quaternion) -> Quaternion:
    return x.conjugate()


def reduced_norm(x: Quaternion) -> Fraction:
    return x.reduced_norm()


def reduced_trace(x: Quaternion) -> Fraction:
    return x.reduced_trace()
