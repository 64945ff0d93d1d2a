#!/usr/bin/env python3
"""Complete boundedness: the lifted products stay contractive at every level.

The level-k lift multiplies k-by-k grids of block matrices with the Schur
block product as entry multiplication. Contractivity
||lift(A, B)|| <= ||A|| ||B|| holds at every k, the ratio 1 is attained by
identity instances, and random sampling gives lower witnesses below 1.
"""

import numpy as np

from schurblock import (
    block_identity,
    flatten_lift,
    lift_norm_ratio,
    sample_lift,
    schur_unit,
    spectral_norm,
    zero_block_matrix,
)

rng = np.random.default_rng(11)
n, d = 3, 2

print("=" * 70)
print(f"Random lifted instances at (n, d) = ({n}, {d})")
print("=" * 70)
for k in (1, 2, 3):
    ratios = []
    for _ in range(200):
        a = sample_lift(rng, k, n, d)
        b = sample_lift(rng, k, n, d)
        ratios.append(lift_norm_ratio(a, b))
    print(f"  k = {k}: max ratio over 200 draws = {max(ratios):.6f} "
          f"(mean {np.mean(ratios):.4f})")

print()
print("=" * 70)
print("Saturation: where the ratio hits 1 exactly")
print("=" * 70)

identity = block_identity(n, d)
zero = zero_block_matrix(n, d)
for k in (1, 2, 3):
    lifted_identity = [[identity if i == j else zero for j in range(k)]
                       for i in range(k)]
    r = lift_norm_ratio(lifted_identity, lifted_identity)
    print(f"  lifted ordinary identity, k = {k}: ratio = {r}")

print()
print("The unit E of the slotwise product (every slot I_d) behaves")
print("differently: E [] E = E but ||E|| = n, so its ratio is 1/n.")
for size in (1, 2, 3):
    e = schur_unit(size, d)
    print(f"  n = {size}: ||E|| = {spectral_norm(flatten_lift([[e]])):.4f}, "
          f"ratio = {lift_norm_ratio([[e]], [[e]]):.4f}")
