"""Invariant conditional expectations and the product formula check."""

import numpy as np
import pytest
from fractions import Fraction

from ergonil import (
    AnzaiSkew,
    RotationTorus,
    ToralAutomorphism,
    constant_observable,
    expectation_pairing,
    integrate_observable,
    invariant_conditional_expectation,
    observable,
    product_formula_check,
)
from ergonil.errors import UnsupportedSystemError

PHI = (np.sqrt(5.0) - 1.0) / 2.0
SQRT2M1 = np.sqrt(2.0) - 1.0


class TestInvariantExpectation:
    def test_constant_observable_fixed(self):
        for system in (RotationTorus((PHI,)), AnzaiSkew(PHI), ToralAutomorphism(((2, 1), (1, 1)))):
            c = constant_observable(0.3 - 0.1j, system.dimension)
            exp = invariant_conditional_expectation(system, c, 1)
            assert exp.result.terms == c.terms

    def test_irrational_rotation_collapses_to_mean(self):
        rot = RotationTorus((PHI,))
        obs = observable([((0,), 0.3), ((1,), 0.7)])
        exp = invariant_conditional_expectation(rot, obs, 1)
        assert exp.ergodic
        assert exp.result.terms == (((0,), 0.3 + 0j),)

    def test_declared_rational_keeps_resonant_frequencies(self):
        rot = RotationTorus((Fraction(1, 3),))
        obs = observable([((3,), 1.0)])
        exp = invariant_conditional_expectation(rot, obs, 1)
        assert not exp.ergodic
        assert exp.result.terms == (((3,), 1.0 + 0j),)
        obs2 = observable([((1,), 1.0), ((3,), 0.5), ((6,), 0.25)])
        exp2 = invariant_conditional_expectation(rot, obs2, 1)
        assert exp2.result.terms == (((3,), 0.5 + 0j), ((6,), 0.25 + 0j))

    def test_rational_power_can_resonate(self):
        # alpha = 1/3, m = 3: T^3 is the identity rotation, everything survives
        rot = RotationTorus((Fraction(1, 3),))
        obs = observable([((1,), 1.0), ((2,), 0.5)])
        exp = invariant_conditional_expectation(rot, obs, 3)
        assert exp.result.terms == obs.terms

    def test_anzai_irrational(self):
        anz = AnzaiSkew(PHI)
        obs = observable([((0, 0), 0.1), ((1, 0), 0.5), ((0, 1), 0.4)])
        exp = invariant_conditional_expectation(anz, obs, 2)
        assert exp.ergodic
        assert exp.result.terms == (((0, 0), 0.1 + 0j),)

    def test_anzai_rational_keeps_base_frequencies(self):
        anz = AnzaiSkew(Fraction(1, 4))
        obs = observable([((0, 0), 0.1), ((4, 0), 0.5), ((1, 0), 0.2), ((4, 1), 0.2)])
        exp = invariant_conditional_expectation(anz, obs, 1)
        # fiber frequencies vanish; base frequency 4 resonates with alpha = 1/4
        assert exp.result.terms == (((0, 0), 0.1 + 0j), ((4, 0), 0.5 + 0j))

    def test_toral_automorphism_always_mean(self):
        cat = ToralAutomorphism(((2, 1), (1, 1)))
        obs = observable([((0, 0), 0.25), ((1, 1), 1.0)])
        for m in (1, -1, 5):
            exp = invariant_conditional_expectation(cat, obs, m)
            assert exp.ergodic
            assert exp.result.terms == (((0, 0), 0.25 + 0j),)

    def test_zero_power_rejected(self):
        with pytest.raises(ValueError):
            invariant_conditional_expectation(RotationTorus((PHI,)), constant_observable(1, 1), 0)

    def test_idempotent(self):
        systems = [RotationTorus((Fraction(1, 3),)), RotationTorus((PHI,)),
                   AnzaiSkew(PHI), ToralAutomorphism(((2, 1), (1, 1)))]
        for system in systems:
            d = system.dimension
            freq = (3,) if d == 1 else (3, 0)
            freq2 = (1,) if d == 1 else (1, 1)
            obs = observable([((0,) * d, 0.5), (freq, 0.25), (freq2, 0.25)])
            once = invariant_conditional_expectation(system, obs, 2)
            twice = invariant_conditional_expectation(system, once.result, 2)
            assert twice.result.terms == once.result.terms

    def test_projection_shrinks_support_and_bound(self):
        rot = RotationTorus((Fraction(2, 7),))
        obs = observable([((0,), 0.5), ((7,), 0.25), ((3,), 0.25)])
        exp = invariant_conditional_expectation(rot, obs, 1)
        in_freqs = {f for f, _ in obs.terms}
        assert {f for f, _ in exp.result.terms} <= in_freqs
        assert exp.result.bound <= obs.bound

    def test_integral_preserved(self):
        for system in (RotationTorus((PHI,)), RotationTorus((Fraction(1, 5),)), AnzaiSkew(PHI)):
            d = system.dimension
            obs = observable([((0,) * d, 0.3 + 0.4j), ((1,) * d, 0.7)])
            exp = invariant_conditional_expectation(system, obs, 3)
            assert integrate_observable(exp.result) == integrate_observable(obs)

    def test_pairing_conjugate_symmetry(self):
        rot = RotationTorus((Fraction(1, 3),))
        f = observable([((0,), 0.5), ((3,), 0.5 - 0.25j)])
        g = observable([((0,), 0.25), ((-3,), 1.0j)])
        ef = invariant_conditional_expectation(rot, f, 1)
        eg = invariant_conditional_expectation(rot, g, 1)
        fwd = expectation_pairing(ef, eg)
        # swap with conjugation: int E[conj g] E[conj f] = conj(int E[f] E[g])
        ef_c = invariant_conditional_expectation(rot, f.conjugate(), 1)
        eg_c = invariant_conditional_expectation(rot, g.conjugate(), 1)
        assert expectation_pairing(eg_c, ef_c) == fwd.conjugate()

    def test_ergodic_pairing_is_product_of_means(self):
        rot = RotationTorus((PHI,))
        f = observable([((0,), 0.3), ((1,), 0.7)])
        g = observable([((0,), 0.5), ((2,), 0.5)])
        ef = invariant_conditional_expectation(rot, f, 1)
        eg = invariant_conditional_expectation(rot, g, 1)
        assert expectation_pairing(ef, eg) == 0.3 * 0.5


class TestProductFormula:
    def test_constants_trivial(self):
        rot = RotationTorus((PHI,))
        one = constant_observable(1.0, 1)
        rep = product_formula_check(rot, one, one, (0.2,), 1, 2, 100, 1e-12)
        assert rep.passed
        assert rep.lhs == rep.rhs == 1.0

    def test_rotation_instance(self):
        # rhs = 0.3 * 0.5 exactly; lhs within 1e-2 at N = 2**20 (oracle: 1.8e-7)
        rot = RotationTorus((SQRT2M1,))
        f = observable([((0,), 0.3), ((1,), 0.7)])
        g = observable([((0,), 0.5), ((2,), 0.5)])
        rep = product_formula_check(rot, f, g, (0.3183098861837907,), 1, 2, 1 << 20, 1e-2)
        assert rep.rhs == 0.15
        assert rep.passed

    def test_mixing_instance(self):
        # rhs = 0; |lhs| = 0.004 at N = 2**16 frozen from the lattice oracle
        cat = ToralAutomorphism(((2, 1), (1, 1)))
        f = observable([((1, 0), 1.0)])
        g = observable([((0, 1), 1.0)])
        rep = product_formula_check(cat, f, g, (1, 0), 1, 2, 1 << 16, 0.05)
        assert rep.rhs == 0.0
        assert rep.passed

    def test_unsupported_kind(self):
        class Weird:
            dimension = 1

        with pytest.raises(UnsupportedSystemError):
            invariant_conditional_expectation(Weird(), constant_observable(1.0, 1), 1)
