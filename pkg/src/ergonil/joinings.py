"""Conditional expectations over power-invariant sigma-fields on the model
systems, and the product/kernel identity check for double averages.

The limit of (1/N) sum f(T^{an} x) g(T^{bn} x), integrated in x, equals
int E[f|I] E[g|I] dmu where I is the sigma-field of T^{b-a}-invariant sets.
For trigonometric polynomials on the model systems both conditional
expectations are again trigonometric polynomials given by an exact frequency
rule, so the right-hand side is computable in closed form and the check
compares it against the finite-N orbit average.

Whether a given power is ergodic is decided by the declared parameter type
(decimal literals are treated as irrational, `fractions.Fraction` as
rational); nothing is ever inferred from float comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .averages import double_avg
from .errors import UnsupportedSystemError
from .systems import (
    AnzaiSkew,
    Observable,
    RotationTorus,
    System,
    ToralAutomorphism,
    integrate_observable,
)


@dataclass(frozen=True)
class InvariantExpectation:
    system: System
    power: int
    result: Observable
    ergodic: bool


def _constant_expectation(system: System, obs: Observable, m: int) -> InvariantExpectation:
    c = integrate_observable(obs)
    terms = (((0,) * obs.dimension, c),) if c != 0 else ()
    return InvariantExpectation(system, m, Observable(obs.dimension, terms), True)


def invariant_conditional_expectation(system: System, obs: Observable, m: int) -> InvariantExpectation:
    """E[obs | sigma-field of T^m-invariant sets], as a trigonometric polynomial.

    Rotations with declared-rational angles keep exactly the frequencies k
    with k . (m alpha) integral; every ergodic branch collapses to the mean.
    """
    m = int(m)
    if m == 0:
        raise ValueError("power m must be nonzero")
    if isinstance(system, RotationTorus):
        rational = system.is_rational()
        if not any(rational):
            # totally irrational declaration: T^m ergodic, expectation is the mean
            return _constant_expectation(system, obs, m)
        kept = []
        for freq, coeff in obs.terms:
            phase = Fraction(0)
            for k, a, is_rat in zip(freq, system.alpha, rational):
                if k == 0:
                    continue
                if not is_rat:
                    # irrational component with nonzero frequency never resonates
                    phase = None
                    break
                phase += k * m * a
            if phase is not None and phase.denominator == 1:
                kept.append((freq, coeff))
        return InvariantExpectation(system, m, Observable(obs.dimension, tuple(kept)), False)
    if isinstance(system, AnzaiSkew):
        if not system.is_rational():
            return _constant_expectation(system, obs, m)
        # rational base angle: fiber frequencies average out, base frequencies
        # survive exactly when k m alpha is integral
        kept = tuple(
            (freq, coeff)
            for freq, coeff in obs.terms
            if freq[1] == 0 and (freq[0] * m * system.alpha).denominator == 1
        )
        return InvariantExpectation(system, m, Observable(obs.dimension, kept), False)
    if isinstance(system, ToralAutomorphism):
        # hyperbolic: every nonzero power is ergodic (indeed mixing)
        return _constant_expectation(system, obs, m)
    raise UnsupportedSystemError(f"unknown system kind {type(system).__name__}")


def expectation_pairing(e1: InvariantExpectation, e2: InvariantExpectation) -> complex:
    """int E[f|I] E[g|I] dmu, exactly: frequencies pair when they cancel."""
    total = 0.0 + 0.0j
    lookup = {freq: coeff for freq, coeff in e2.result.terms}
    for freq, coeff in e1.result.terms:
        neg = tuple(-v for v in freq)
        other = lookup.get(neg)
        if other is not None:
            total += coeff * other
    return total


@dataclass(frozen=True)
class ProductFormulaReport:
    lhs: complex
    rhs: complex
    passed: bool
    N: int
    tol: float


def product_formula_check(system: System, obs1: Observable, obs2: Observable, x0,
                          a: int, b: int, N: int, tol: float,
                          index_base: int = 1) -> ProductFormulaReport:
    """Compare the finite-N double average against the invariant pairing.

    The pairing identity holds after integrating the left side in x; for an
    ergodic power T^{b-a} and a generic starting point the pointwise limit
    agrees as well, which is the regime this check exercises. The gap between
    the two readings at finite N is reported, not resolved.
    """
    e1 = invariant_conditional_expectation(system, obs1, b - a)
    e2 = invariant_conditional_expectation(system, obs2, b - a)
    rhs = expectation_pairing(e1, e2)
    lhs = double_avg(system, obs1, obs2, x0, a, b, N, index_base)
    return ProductFormulaReport(lhs, rhs, abs(lhs - rhs) <= tol, N, tol)
