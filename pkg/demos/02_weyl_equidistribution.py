"""Cesaro averages of polynomial phase sequences.

Linear and quadratic phases with an irrational coefficient equidistribute,
so their Cesaro means tend to zero; the dyadic deltas |A_2N - A_N| make the
convergence visible at desk scale.
"""

import numpy as np

from ergonil import PolynomialPhase, cesaro_nilseq

phi = (np.sqrt(5.0) - 1.0) / 2.0
schedule = [1 << k for k in range(10, 17)]

for label, coeffs in [
    ("linear phase      e(n phi)", (0.0, phi)),
    ("quadratic phase   e(n^2 phi)", (0.0, 0.0, phi)),
    ("cubic phase       e(n^3 phi)", (0.0, 0.0, 0.0, phi)),
]:
    rep = cesaro_nilseq(PolynomialPhase(coeffs), schedule)
    print(f"== {label} ==")
    for i, n in enumerate(rep.schedule):
        delta = f"  delta = {rep.dyadic_deltas[i]:.5f}" if i < len(rep.dyadic_deltas) else ""
        print(f"  N = 2^{n.bit_length() - 1:2d}:  |A_N| = {abs(rep.values[i]):.5f}{delta}")
    print()

print("a constant (0-step) sequence for contrast: A_N = 1 at every N")
rep = cesaro_nilseq(PolynomialPhase((0.0,)), [16, 256, 4096])
print("  values:", [v.real for v in rep.values])
