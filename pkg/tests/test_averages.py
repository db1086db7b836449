"""Averages: exact reductions, resonances, certified sup sweeps, the
auxiliary-system product average, and the schedule driver."""

import numpy as np
import pytest

from ergonil import (
    AnzaiSkew,
    GridTooFineError,
    HeisenbergElement,
    HeisenbergNilseq,
    InvalidExponentsError,
    PolynomialPhase,
    RotationTorus,
    Table,
    ToralAutomorphism,
    TorusChar,
    birkhoff_avg,
    constant_observable,
    constant_weight,
    double_avg,
    dual_system_avg,
    nil_wwdr_avg,
    observable,
    poly_wwdr_avg,
    run_schedule,
    sup_over_frequency,
    ww_avg,
    ww_sup,
    wwdr_avg,
)
from ergonil.errors import SequenceTooShortError

import oracles

PHI = (np.sqrt(5.0) - 1.0) / 2.0
SQRT2M1 = np.sqrt(2.0) - 1.0
E1 = observable([((1,), 1.0)])


class TestBirkhoff:
    def test_constant_is_exact(self):
        rot = RotationTorus((PHI,))
        assert birkhoff_avg(rot, constant_observable(1.0, 1), (0.2,), 1000) == 1.0

    def test_golden_rotation_geometric_bound(self):
        rot = RotationTorus((PHI,))
        n = 1 << 16
        val = birkhoff_avg(rot, E1, (0.0,), n)
        assert abs(val) <= oracles.geometric_avg_bound(PHI, n)
        assert abs(val) < 1e-3

    def test_cat_map_zero_mean(self):
        # frozen from the exact-lattice oracle run: |A_N| = 0.00264 at N = 2**16
        cat = ToralAutomorphism(((2, 1), (1, 1)))
        obs = observable([((1, 0), 1.0)])
        assert abs(birkhoff_avg(cat, obs, (1, 0), 1 << 16)) < 0.05

    def test_matches_direct_mean(self):
        rot = RotationTorus((PHI,))
        obs = observable([((0,), 0.5), ((1,), 0.25), ((2,), 0.25j)])
        got = birkhoff_avg(rot, obs, (0.3,), 333)
        coords = oracles.np.stack(
            [oracles.iterate_rotation((PHI,), (0.3,), n) for n in range(1, 334)]
        )
        want = oracles.direct_mean(
            [sum(c * oracles.unit(sum(f * x for f, x in zip(fr, pt))) for fr, c in obs.terms)
             for pt in coords]
        )
        assert abs(got - want) < 1e-10


class TestWienerWintner:
    def test_t_zero_is_bitwise_birkhoff(self):
        rot = RotationTorus((PHI,))
        obs = observable([((0,), 0.5), ((1,), 0.5)])
        assert ww_avg(rot, obs, (0.4,), 0.0, 2048) == birkhoff_avg(rot, obs, (0.4,), 2048)

    def test_resonant_frequency_is_constant(self):
        # with f = e(x) and t = 1 - alpha every summand equals e(x0)
        rot = RotationTorus((PHI,))
        t = 1.0 - PHI  # exact: PHI >= 0.5
        for n in (10, 1000, 65536):
            val = ww_avg(rot, E1, (0.3,), t, n)
            assert abs(val - np.exp(2j * np.pi * 0.3)) < 1e-12

    def test_constant_alternating(self):
        rot = RotationTorus((PHI,))
        one = constant_observable(1.0, 1)
        # n = 1..N: sum of (-1)^n is -1 for odd N, 0 for even
        assert abs(ww_avg(rot, one, (0.0,), 0.5, 5) - (-1 / 5)) < 1e-15
        assert abs(ww_avg(rot, one, (0.0,), 0.5, 6)) < 1e-15


class TestWWSup:
    def test_zero_observable(self):
        rot = RotationTorus((PHI,))
        res = ww_sup(rot, observable([((1,), 0.0)]), (0.1,), 1024, 0.01)
        assert res.sup_value == 0.0

    def test_eigenfunction_resonance_found(self):
        rot = RotationTorus((PHI,))
        for n in (1 << 10, 1 << 12):
            res = ww_sup(rot, E1, (0.2,), n, 0.01)
            assert res.sup_value >= 1.0 - 0.01
            assert res.sup_value <= 1.0 + 1e-9
            # the argmax frequency should sit near the resonance 1 - alpha
            assert min(abs(res.t_star - (1 - PHI)), 1 - abs(res.t_star - (1 - PHI))) < 1e-3

    def test_mixing_case_is_uniformly_small(self):
        # frozen from the oracle run: grid max 0.0196 at N = 2**15, eps = 0.01
        cat = ToralAutomorphism(((2, 1), (1, 1)))
        obs = observable([((1, 0), 1.0)])
        res = ww_sup(cat, obs, (1, 0), 1 << 15, 0.01)
        assert res.sup_value < 0.05

    def test_grid_guarantee_against_dense_scan(self):
        # certified grid max must dominate any sampled value minus eps
        rng = np.random.default_rng(5)
        u = np.exp(2j * np.pi * rng.random(256))
        res = sup_over_frequency(u, 0.05)
        ts = rng.random(2000)
        n = np.arange(1, 257)
        for t in ts:
            val = abs(np.mean(u * np.exp(2j * np.pi * n * t)))
            assert res.sup_value >= val - 0.05

    def test_eps_floor_rejected(self):
        rot = RotationTorus((PHI,))
        with pytest.raises(GridTooFineError):
            ww_sup(rot, E1, (0.2,), 1 << 16, 1e-9)


class TestDoubleRecurrence:
    def test_exponent_validation(self):
        rot = RotationTorus((PHI,))
        with pytest.raises(InvalidExponentsError):
            double_avg(rot, E1, E1, (0.1,), 2, 2, 100)
        with pytest.raises(InvalidExponentsError):
            double_avg(rot, E1, E1, (0.1,), 0, 1, 100)

    def test_constant_second_reduces_to_power_birkhoff(self):
        rot = RotationTorus((PHI,))
        obs = observable([((1,), 0.7), ((0,), 0.3)])
        one = constant_observable(1.0, 1)
        got = double_avg(rot, obs, one, (0.25,), 3, 1, 512)
        # equals the Birkhoff average of obs along the cube of the rotation
        rot3 = RotationTorus((float((3 * oracles.Fraction(PHI)) % 1),))
        want = birkhoff_avg(rot3, obs, (0.25,), 512)
        assert abs(got - want) < 1e-12

    def test_rotation_geometric_series(self):
        rot = RotationTorus((SQRT2M1,))
        n = 1 << 12
        val = double_avg(rot, E1, E1, (0.1,), 1, 2, n)
        theta = float((3 * oracles.Fraction(SQRT2M1)) % 1)
        assert abs(val) <= oracles.geometric_avg_bound(theta, n)

    def test_opposite_exponents_cancel_rotation(self):
        # a = 1, b = -1: frequencies add to zero, every term is e(2 x0)
        rot = RotationTorus((PHI,))
        for n in (7, 129, 4096):
            val = double_avg(rot, E1, E1, (0.3,), 1, -1, n)
            assert abs(val - np.exp(2j * np.pi * 0.6)) < 1e-12

    def test_wwdr_t_zero_bitwise(self):
        anz = AnzaiSkew(PHI)
        obs = observable([((0, 1), 1.0)])
        assert (
            wwdr_avg(anz, obs, obs, (0.2, 0.7), 1, 2, 0.0, 1024)
            == double_avg(anz, obs, obs, (0.2, 0.7), 1, 2, 1024)
        )

    def test_wwdr_constant_alternating(self):
        rot = RotationTorus((PHI,))
        c1 = constant_observable(0.5, 1)
        c2 = constant_observable(2.0j, 1)
        val = wwdr_avg(rot, c1, c2, (0.0,), 1, 2, 0.5, 5)
        assert abs(val - (-1.0j / 5)) < 1e-15

    def test_wwdr_resonance(self):
        rot = RotationTorus((SQRT2M1,))
        t = 1.0 - float((3 * oracles.Fraction(SQRT2M1)) % 1)
        vals = [abs(wwdr_avg(rot, E1, E1, (0.15,), 1, 2, t, n)) for n in (64, 512, 4096)]
        assert all(abs(v - 1.0) < 1e-11 for v in vals)

    def test_poly_linear_collapses_to_wwdr(self):
        rot = RotationTorus((PHI,))
        t = 0.37
        a1 = poly_wwdr_avg(rot, E1, E1, (0.2,), 1, 2, (0.0, t), 2048)
        a2 = wwdr_avg(rot, E1, E1, (0.2,), 1, 2, t, 2048)
        assert a1 == a2

    def test_poly_zero_collapses_to_double(self):
        rot = RotationTorus((PHI,))
        a1 = poly_wwdr_avg(rot, E1, E1, (0.2,), 1, 2, (0.0,), 2048)
        a2 = double_avg(rot, E1, E1, (0.2,), 1, 2, 2048)
        assert a1 == a2

    def test_weyl_quadratic_weight(self):
        rot = RotationTorus((PHI,))
        one = constant_observable(1.0, 1)
        val = poly_wwdr_avg(rot, one, one, (0.0,), 1, 2, (0.0, 0.0, PHI), 1 << 16)
        assert abs(val) < 0.02

    def test_nil_polynomial_weight_collapses(self):
        anz = AnzaiSkew(PHI)
        obs = observable([((0, 1), 1.0)])
        w = PolynomialPhase((0.0, 0.37))
        a1 = nil_wwdr_avg(anz, obs, obs, (0.2, 0.7), 1, 2, w, 1024)
        a2 = wwdr_avg(anz, obs, obs, (0.2, 0.7), 1, 2, 0.37, 1024)
        assert a1 == a2

    def test_nil_constant_weight_collapses(self):
        anz = AnzaiSkew(PHI)
        obs = observable([((0, 1), 1.0)])
        a1 = nil_wwdr_avg(anz, obs, obs, (0.2, 0.7), 1, 2, constant_weight(1.0), 1024)
        a2 = double_avg(anz, obs, obs, (0.2, 0.7), 1, 2, 1024)
        assert a1 == a2

    def test_nil_table_too_short(self):
        anz = AnzaiSkew(PHI)
        obs = observable([((0, 1), 1.0)])
        with pytest.raises(SequenceTooShortError):
            nil_wwdr_avg(anz, obs, obs, (0.2, 0.7), 1, 2, Table(np.ones(100)), 128)

    def test_anzai_heisenberg_trend(self):
        # dyadic deltas shrink between 2**10 and 2**16 (frozen trend oracle)
        anz = AnzaiSkew(PHI)
        obs = observable([((0, 1), 1.0)])
        w = HeisenbergNilseq(
            HeisenbergElement(np.sqrt(3) - 1, 0.3, 0.1),
            HeisenbergElement.identity(),
            TorusChar(1, 0),
        )
        rep = run_schedule(
            "nil_wwdr",
            dict(system=anz, obs1=obs, obs2=obs, x0=(0.2, 0.3), a=1, b=2, weight=w),
            [1 << k for k in range(10, 18)],
        )
        assert rep.delta_at(1 << 16) < rep.delta_at(1 << 10)


class TestLinearityAndBounds:
    def test_additive_in_first_observable(self):
        rng = np.random.default_rng(17)
        rot = RotationTorus((PHI,))
        for _ in range(10):
            c = rng.normal(size=4) + 1j * rng.normal(size=4)
            obs_a = observable([((0,), c[0]), ((1,), c[1])])
            obs_b = observable([((0,), c[2]), ((2,), c[3])])
            both = observable([((0,), c[0] + c[2]), ((1,), c[1]), ((2,), c[3])])
            f2 = observable([((1,), 1.0)])
            x0, t, n = (float(rng.random()),), float(rng.random()), 512
            s = wwdr_avg(rot, obs_a, f2, x0, 1, 2, t, n) + wwdr_avg(rot, obs_b, f2, x0, 1, 2, t, n)
            w = wwdr_avg(rot, both, f2, x0, 1, 2, t, n)
            assert abs(s - w) < 1e-12

    def test_average_bounded_by_product_of_bounds(self):
        rng = np.random.default_rng(19)
        anz = AnzaiSkew(PHI)
        for _ in range(10):
            c = rng.normal(size=4) + 1j * rng.normal(size=4)
            o1 = observable([((0, 0), c[0]), ((1, 0), c[1])])
            o2 = observable([((0, 1), c[2]), ((1, 1), c[3])])
            w = PolynomialPhase((0.0, float(rng.random())))
            val = nil_wwdr_avg(anz, o1, o2, (0.1, 0.9), 1, 2, w, 256)
            assert abs(val) <= o1.bound * o2.bound * w.bound + 1e-12


class TestDualSystem:
    def test_k1_rotation_collapse(self):
        rot = RotationTorus((PHI,))
        t = 0.2360679774997896
        s = RotationTorus((t,))
        g = observable([((1,), 1.0)])
        res = dual_system_avg(rot, E1, E1, (0.3,), 1, 2, s, [g], 64, 512)
        base = wwdr_avg(rot, E1, E1, (0.3,), 1, 2, t, 512)
        for y, v in zip(res.grid, res.node_values):
            assert abs(v - np.exp(2j * np.pi * y) * base) < 1e-12

    def test_constant_g_reduces_to_double(self):
        rot = RotationTorus((PHI,))
        one = constant_observable(1.0, 1)
        res = dual_system_avg(rot, E1, E1, (0.3,), 1, 2, RotationTorus((0.3,)), [one, one], 64, 256)
        want = double_avg(rot, E1, E1, (0.3,), 1, 2, 256)
        assert all(abs(v - want) < 1e-15 for v in res.node_values)

    def test_l2_norm_is_rms(self):
        rot = RotationTorus((PHI,))
        one = constant_observable(1.0, 1)
        res = dual_system_avg(rot, one, one, (0.0,), 1, 2, RotationTorus((0.3,)), [one], 64, 16)
        assert res.l2_norm == pytest.approx(1.0, abs=1e-14)

    def test_k2_trend(self):
        # frozen trend oracle: last dyadic delta below the first
        rot = RotationTorus((SQRT2M1,))
        f = observable([((0,), 0.5), ((1,), 0.5)])
        g = observable([((0,), 0.5), ((1,), 0.5)])
        rep = run_schedule(
            "dual_system",
            dict(system=rot, obs1=f, obs2=f, x0=(0.25,), a=1, b=2,
                 system_s=RotationTorus((PHI,)), g_list=[g, g], grid_size=64),
            [1 << k for k in range(10, 15)],
        )
        assert rep.dyadic_deltas[-1] < rep.dyadic_deltas[0]

    def test_validation(self):
        rot = RotationTorus((PHI,))
        with pytest.raises(ValueError):
            dual_system_avg(rot, E1, E1, (0.1,), 1, 2, RotationTorus((0.3,)), [E1], 32, 64)
        with pytest.raises(Exception):
            dual_system_avg(rot, E1, E1, (0.1,), 1, 2, AnzaiSkew(PHI), [E1], 64, 64)


class TestSchedule:
    def test_schedule_values_match_single_shots(self):
        rot = RotationTorus((PHI,))
        obs = observable([((0,), 0.4), ((1,), 0.6)])
        sched = [100, 200, 400]
        rep = run_schedule("ww", dict(system=rot, obs=obs, x0=(0.2,), t=0.31), sched)
        for n in sched:
            assert rep.value_at(n) == ww_avg(rot, obs, (0.2,), 0.31, n)

    def test_deltas_are_consecutive_differences(self):
        rot = RotationTorus((PHI,))
        rep = run_schedule("birkhoff", dict(system=rot, obs=E1, x0=(0.2,)), [64, 128, 256])
        assert rep.dyadic_deltas[0] == abs(rep.values[1] - rep.values[0])

    def test_error_budget_from_table_weight(self):
        rot = RotationTorus((PHI,))
        w = Table(np.ones(1024), sup_error_budget=0.25)
        rep = run_schedule(
            "nil_wwdr",
            dict(system=rot, obs1=E1, obs2=E1, x0=(0.2,), a=1, b=2, weight=w),
            [128, 256],
        )
        assert rep.error_budget == 0.25

    def test_rejects_bad_schedule(self):
        rot = RotationTorus((PHI,))
        with pytest.raises(ValueError):
            run_schedule("birkhoff", dict(system=rot, obs=E1, x0=(0.2,)), [64, 64])
