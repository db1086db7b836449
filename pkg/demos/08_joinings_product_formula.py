"""Invariant conditional expectations and the product formula.

The limit of a double-recurrence average pairs the conditional expectations
of the two observables over the sigma-field invariant under the exponent
difference. For trigonometric polynomials on the model systems both sides
are computable: the pairing exactly, the average at finite N.
"""

import numpy as np
from fractions import Fraction

from ergonil import (
    RotationTorus,
    ToralAutomorphism,
    invariant_conditional_expectation,
    observable,
    product_formula_check,
)

print("== declared-irrational vs declared-rational angles ==")
f = observable([((0,), 0.3), ((3,), 0.7)])
irr = RotationTorus((np.sqrt(2.0) - 1.0,))
exp_irr = invariant_conditional_expectation(irr, f, 1)
print(f"  alpha = sqrt(2)-1 (decimal literal): E[f|I] = {exp_irr.result.terms} "
      f"(ergodic = {exp_irr.ergodic})")
rat = RotationTorus((Fraction(1, 3),))
exp_rat = invariant_conditional_expectation(rat, f, 1)
print(f"  alpha declared '1/3': E[f|I] = {exp_rat.result.terms}")
print("  (frequency 3 resonates: 3 * 1/3 is an integer, so e(3x) is invariant)")

print("\n== ergodic rotation: pairing equals the product of the means ==")
rot = RotationTorus((np.sqrt(2.0) - 1.0,))
f1 = observable([((0,), 0.3), ((1,), 0.7)])
f2 = observable([((0,), 0.5), ((2,), 0.5)])
rep = product_formula_check(rot, f1, f2, (0.3183098861837907,), 1, 2, 1 << 18, 1e-2)
print(f"  lhs (orbit average, N = 2^18) = {rep.lhs:.8f}")
print(f"  rhs (exact pairing)           = {rep.rhs:.8f}")
print(f"  |lhs - rhs| = {abs(rep.lhs - rep.rhs):.2e}  pass = {rep.passed}")

print("\n== mixing automorphism: zero-mean observables pair to zero ==")
cat = ToralAutomorphism(((2, 1), (1, 1)))
zf = observable([((1, 0), 1.0)])
zg = observable([((0, 1), 1.0)])
rep2 = product_formula_check(cat, zf, zg, (1, 0), 1, 2, 1 << 16, 0.05)
print(f"  lhs = {rep2.lhs:.6f}, rhs = {rep2.rhs}, pass = {rep2.passed}")
