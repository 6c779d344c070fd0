"""Exact division of principal ideals by connecting ideals.

Solves I*J = d*O1 for the unique left O2-ideal J via the characterization
J = {s in O1 n O2 : I*s <= O1*d}, reduced to a 16-equation integer linear
system in 20 unknowns whose solution lattice projects onto J.
"""

from __future__ import annotations

from math import lcm

from .linalg import kernel_basis, hnf_rows
from .orders import Ideal, Lattice4, Order, multiply_ideals
from .quat import Quaternion


class NotDivisibleError(ArithmeticError):
    """No ideal J satisfies I*J = d*O1 (precondition violated)."""


def integer_ideal_divide(o1: Order, o2: Order, ideal: Ideal, d: int) -> Ideal:
    """The unique left O2-ideal J with I*J = d*O1.

    Builds the system u_j * (sum x_i v_i) = d * (sum y_ij e_i) over bases
    (e) of O1, (u) of I, (v) of O1 n O2, takes the integer solution lattice
    and projects it to the x-coordinates.
    """
    if d == 0:
        raise ValueError("d must be nonzero")
    alg = o1.alg
    e_basis = o1.basis()
    u_basis = ideal.basis()
    inter = o1.lattice.intersect(o2.lattice)
    v_basis = inter.basis()

    # Row t of the system matrix is coordinate t (of 16 quaternion coords,
    # 4 per equation E_j); columns are x_0..x_3, y_00..y_33.
    cols: list[list] = []
    for i in range(4):
        col = []
        for j in range(4):
            prod = u_basis[j] * v_basis[i]
            col.extend(prod.coords())
        cols.append(col)
    for i in range(4):
        for j in range(4):
            col = []
            for jj in range(4):
                if jj == j:
                    col.extend((-d * c for c in e_basis[i].coords()))
                else:
                    col.extend((0, 0, 0, 0))
            cols.append(col)

    den = 1
    for col in cols:
        for v in col:
            den = lcm(den, v.denominator) if hasattr(v, "denominator") else den
    mat = [[int(cols[c][r] * den) for c in range(20)] for r in range(16)]

    ker = kernel_basis(mat)
    if len(ker) != 4:
        raise NotDivisibleError(
            f"solution lattice of the 20-unknown system has rank {len(ker)}, expected 4")

    x_rows = hnf_rows([vec[:4] for vec in ker])
    if len(x_rows) != 4:
        raise NotDivisibleError("x-projection of the solution lattice is rank deficient")

    gens = []
    for row in x_rows:
        gens.append(sum((c * b for c, b in zip(row[1:], v_basis[1:])), row[0] * v_basis[0]))
    j_ideal = Ideal(Lattice4.from_quaternions(alg, gens), left=o2)

    product = multiply_ideals(ideal, j_ideal, check_compatible=False)
    if product.lattice != o1.lattice.scale(abs(d)):
        raise NotDivisibleError("I*J != d*O1: no exact divisor exists for this input")
    return j_ideal


def principal_ideal_divide(o1: Order, o2: Order, mu: Quaternion, ideal: Ideal) -> Ideal:
    """The unique left O2-ideal J with O1*mu = I*J.

    Reduces to the integer case with inputs mu^-1 O1 mu, O2, Nrd(mu),
    conjugate(mu)*I.
    """
    if mu.is_zero():
        raise ValueError("mu must be nonzero")
    n = mu.reduced_norm()
    if n.denominator != 1:
        raise ValueError("mu must have integral reduced norm")
    mu_inv = mu.inverse()
    o1_conj = Order(o1.lattice.lmul_q(mu_inv).rmul_q(mu))
    ideal_shift = Ideal(ideal.lattice.lmul_q(mu.conjugate()), right=ideal._right)
    return integer_ideal_divide(o1_conj, o2, ideal_shift, int(n))
