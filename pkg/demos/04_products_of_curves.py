#!/usr/bin/env python3
"""General isomorphisms between products of supersingular curves.

Any two products E1 x E2 and E1' x E2' of curves with known endomorphism
data are isomorphic as unpolarized surfaces; this demo computes such an
isomorphism through E0^2 in the middle, then chains three curves at once.
"""

import random

from quatisom import (QuatAlgebra, base_node, isom_g_products, isom_two_products,
                      isomorphism_E0, kani_degree, mat_compose, node_from_ideal,
                      random_left_ideal, standard_extremal_order, swap_with_E0,
                      transpose)

p = 1019
alg = QuatAlgebra(p)
o0 = standard_extremal_order(alg)
rng = random.Random(2024)

# four "curves": right orders of random left O0-ideals, tracked by frames
nodes = [node_from_ideal(random_left_ideal(o0, ell, 3, rng)) for ell in (3, 5, 3, 5)]
n1, n2, n1p, n2p = nodes
print(f"p = {p}; four random curves with frame norms "
      f"{[n.frame_norm() for n in nodes]}")

# E0^2 -> E1 x E2
m = isomorphism_E0(n1, n2, rng)
print("\nE0^2 -> E1 x E2        degree:", kani_degree(m))

# E1 x E2 -> E1' x E2' through E0^2 (transpose one leg, compose)
iso = isom_two_products(n1, n2, n1p, n2p, rng)
print("E1 x E2 -> E1' x E2'   degree:", kani_degree(iso))
print("entry degrees:", [e.degree() for e in iso.entries()])

# composing with the reversed matrix gives a degree-1 endomorphism matrix
roundtrip = mat_compose(transpose(iso), iso)
print("composed with its reverse, still degree:", kani_degree(roundtrip))

# swapping a curve next to E0: E1 x E0 -> E2 x E0
sw = swap_with_E0(n1, n2, rng)
print("\nE1 x E0 -> E2 x E0     degree:", kani_degree(sw))

# a three-fold product, factored into two pairwise isomorphisms
sources = [n1, n2, n1p]
targets = [n2p, base_node(alg), n1]
chain = isom_g_products(sources, targets, rng)
print(f"\nE1 x E2 x E3 -> E1' x E2' x E3' factored into {len(chain)} steps:")
for idx, mat in chain:
    print(f"   acts on coordinates ({idx}, {idx + 1}), degree {kani_degree(mat)}")
