"""Finite-scale uniformity seminorms of sequences and orbit functions.

The order-k sequence seminorm averages conjugated cube correlations over an
offset box and takes a 2^k-th root. A degree-d polynomial phase is killed at
order d (its order-d correlations equidistribute) but saturates at order
d+1, where the iterated multiplicative derivative becomes constant. The
orbit seminorm shows the same ladder for functions: eigenfunctions keep
mass at order 2, mixing systems lose it.
"""

import numpy as np

from ergonil import (
    PolynomialPhase,
    RotationTorus,
    ToralAutomorphism,
    c_h_estimate,
    ghk_seminorm,
    local_seminorm,
    observable,
    weight_samples,
)

phi = (np.sqrt(5.0) - 1.0) / 2.0

print("== closed-form correlations behind the ladder ==")
quad = weight_samples(PolynomialPhase((0.0, 0.0, phi)), 5000)
box = c_h_estimate(quad, 2, (3, 5), 4096)
print(f"  order-2 correlation of e(n^2 phi) at h=(3,5): {box.value:.6f}")
print(f"  predicted n-free value e(2 phi * 15):        "
      f"{np.exp(2j * np.pi * ((2 * 15 * phi) % 1)):.6f}")

print("\n== sequence seminorm ladder at H=256 (64 for order 3), N = H^2 ==")
lin = weight_samples(PolynomialPhase((0.0, phi)), (1 << 16) + 600)
quad_long = weight_samples(PolynomialPhase((0.0, 0.0, phi)), (1 << 16) + 600)
for label, seq, k, H, N in [
    ("linear    order 1", lin, 1, 256, 1 << 16),
    ("linear    order 2", lin, 2, 256, 1 << 16),
    ("quadratic order 2", quad_long, 2, 256, 1 << 16),
    ("quadratic order 3", quad_long[: 4096 + 3 * 64 + 4], 3, 64, 4096),
]:
    est = local_seminorm(seq, k, H, N)
    flag = "  (clamped: box average was negative)" if est.clamped else ""
    print(f"  {label}: {est.value:.6f}{flag}")

print("\n== orbit seminorms: eigenfunction vs mixing ==")
rot = RotationTorus((phi,))
ex = observable([((1,), 1.0)])
l1 = ghk_seminorm(rot, ex, (0.1,), 1, 1, 1 << 16)
l2 = ghk_seminorm(rot, ex, (0.1,), 2, 64, 1 << 14)
print(f"  rotation eigenfunction: order 1 = {l1.value:.5f}, order 2 = {l2.value:.5f}")
cat = ToralAutomorphism(((2, 1), (1, 1)))
zx = observable([((1, 0), 1.0)])
m2 = ghk_seminorm(cat, zx, (1, 0), 2, 128, 1 << 16)
print(f"  mixing automorphism:    order 2 = {m2.value:.5f}  (vanishing)")
