"""Weighted ergodic averages: Birkhoff, frequency-twisted single and double
recurrence, polynomial and nilsequence weights, certified sup-over-frequency
sweeps, and the auxiliary-system product average.

Conventions
-----------
Averages run over n = index_base .. index_base + N - 1 with index_base = 1 by
default (the seminorm module defaults to 0; both are accepted everywhere).
Sums use the fixed-shape pairwise tree from `numerics`, so identical inputs
give bit-identical outputs regardless of blocking or worker count.

Exact reductions hold bit-for-bit by construction: a frequency weight t is
evaluated through the same polynomial-phase path as the weight object
`PolynomialPhase((0, t))`, and a zero/constant weight multiplies the term
array by exact ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    GridTooFineError,
    InvalidExponentsError,
    SequenceTooShortError,
    UnsupportedSystemError,
)
from .nilseq import WeightSequence
from .numerics import frac, frac_poly, pairwise_mean, pairwise_sum, unit_phase
from .report import ConvergenceReport, SupPoint, make_report
from .systems import (
    Observable,
    RotationTorus,
    System,
    eval_observable_many,
    orbit_coords,
)

MAX_SUP_GRID = 1 << 28  # frequency-grid hard cap; eps floor is 2*pi*N*B / this


def _times(index_base: int, count: int) -> np.ndarray:
    return np.arange(index_base, index_base + count, dtype=np.int64)


def _orbit_values(system: System, obs: Observable, x0, exponent: int, n: np.ndarray):
    coords = orbit_coords(system, x0, exponent * n)
    return eval_observable_many(obs, coords)


def _check_exponents(a: int, b: int):
    if a == b or a == 0 or b == 0:
        raise InvalidExponentsError(f"exponents must be distinct and nonzero, got a={a}, b={b}")


def double_terms(system: System, obs1: Observable, obs2: Observable, x0, a: int, b: int,
                 count: int, index_base: int = 1) -> np.ndarray:
    """Term array f1(T^{an} x0) f2(T^{bn} x0) for n = index_base .. +count-1."""
    _check_exponents(a, b)
    n = _times(index_base, count)
    return _orbit_values(system, obs1, x0, a, n) * _orbit_values(system, obs2, x0, b, n)


def frequency_phases(t: float, n: np.ndarray) -> np.ndarray:
    """e(n t) via the polynomial-phase evaluator (degree-1 path)."""
    return unit_phase(frac_poly((0.0, float(t)), n))


# ---------------------------------------------------------------------------
# single-orbit averages
# ---------------------------------------------------------------------------


def birkhoff_avg(system: System, obs: Observable, x0, N: int, index_base: int = 1) -> complex:
    """(1/N) sum f(T^n x0)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n = _times(index_base, N)
    return complex(pairwise_mean(_orbit_values(system, obs, x0, 1, n)))


def ww_avg(system: System, obs: Observable, x0, t: float, N: int, index_base: int = 1) -> complex:
    """(1/N) sum f(T^n x0) e(n t)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n = _times(index_base, N)
    terms = _orbit_values(system, obs, x0, 1, n) * frequency_phases(t, n)
    return complex(pairwise_mean(terms))


@dataclass(frozen=True)
class SupResult:
    sup_value: float
    t_star: float
    grid_size: int
    grid_spacing: float
    error_bound: float

    def as_sup_point(self) -> SupPoint:
        return SupPoint(self.sup_value, self.t_star, self.grid_size, self.grid_spacing,
                        self.error_bound)


def sup_over_frequency(u: np.ndarray, eps: float, index_base: int = 1) -> SupResult:
    """Certified maximum of t -> |(1/N) sum_n u_n e(n t)| over t in [0, 1).

    The target is a trigonometric polynomial with derivative bounded by
    2*pi*N*B (B = max |u_n|), so a uniform grid of spacing eps/(2*pi*N*B)
    pins the sup to within eps. Evaluation is a zero-padded FFT, split into
    fractionally shifted passes so memory stays bounded for fine grids.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    u = np.asarray(u, dtype=np.complex128)
    N = u.size
    B = float(np.abs(u).max()) if N else 0.0
    if B == 0.0:
        return SupResult(0.0, 0.0, 1, 1.0, 0.0)
    lipschitz = 2 * np.pi * (index_base + N - 1) * B
    M = int(np.ceil(lipschitz / eps))
    if M > MAX_SUP_GRID:
        raise GridTooFineError(
            f"eps={eps} needs a grid of {M} > {MAX_SUP_GRID} nodes; "
            f"floor for this sequence is eps >= {lipschitz / MAX_SUP_GRID:.3e}"
        )
    m0 = 1 << 12
    while m0 < N + index_base + 1:
        m0 <<= 1
    while m0 < min(M, 1 << 22):
        m0 <<= 1
    K = max(1, -(-M // m0))
    grid = K * m0
    offsets = np.arange(index_base, index_base + N, dtype=np.int64)
    padded = np.zeros(m0, dtype=np.complex128)
    best = -1.0
    best_m = 0
    for r in range(K):
        padded[:] = 0.0
        shift = unit_phase(frac(offsets * (r / grid)))
        padded[offsets] = u * shift
        vals = np.abs(np.fft.ifft(padded)) * (m0 / N)
        j = int(np.argmax(vals))
        if vals[j] > best:
            best = float(vals[j])
            best_m = j * K + r
    spacing = 1.0 / grid
    return SupResult(best, best_m / grid, grid, spacing, lipschitz * spacing / 2.0)


def ww_sup(system: System, obs: Observable, x0, N: int, eps: float,
           index_base: int = 1) -> SupResult:
    """Certified sup over the frequency t of |(1/N) sum f(T^n x0) e(n t)|."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n = _times(index_base, N)
    u = _orbit_values(system, obs, x0, 1, n)
    return sup_over_frequency(u, eps, index_base)


# ---------------------------------------------------------------------------
# double-recurrence averages
# ---------------------------------------------------------------------------


def double_avg(system: System, obs1: Observable, obs2: Observable, x0, a: int, b: int,
               N: int, index_base: int = 1) -> complex:
    """(1/N) sum f1(T^{an} x0) f2(T^{bn} x0)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return complex(pairwise_mean(double_terms(system, obs1, obs2, x0, a, b, N, index_base)))


def wwdr_avg(system: System, obs1: Observable, obs2: Observable, x0, a: int, b: int,
             t: float, N: int, index_base: int = 1) -> complex:
    """Double recurrence with frequency weight e(n t); t = 0 reduces bit-for-bit."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n = _times(index_base, N)
    terms = double_terms(system, obs1, obs2, x0, a, b, N, index_base) * frequency_phases(t, n)
    return complex(pairwise_mean(terms))


def poly_wwdr_avg(system: System, obs1: Observable, obs2: Observable, x0, a: int, b: int,
                  p, N: int, index_base: int = 1) -> complex:
    """Double recurrence with polynomial weight e(p(n))."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n = _times(index_base, N)
    phases = unit_phase(frac_poly(tuple(p), n))
    terms = double_terms(system, obs1, obs2, x0, a, b, N, index_base) * phases
    return complex(pairwise_mean(terms))


def nil_wwdr_avg(system: System, obs1: Observable, obs2: Observable, x0, a: int, b: int,
                 w: WeightSequence, N: int, index_base: int = 1) -> complex:
    """Double recurrence against an arbitrary weight sequence."""
    if N < 1:
        raise ValueError("N must be >= 1")
    n = _times(index_base, N)
    if w.length is not None and index_base + N > w.length:
        raise SequenceTooShortError(
            f"weight defined for n < {w.length}, average needs n < {index_base + N}"
        )
    terms = double_terms(system, obs1, obs2, x0, a, b, N, index_base) * w.eval_many(n)
    return complex(pairwise_mean(terms))


# ---------------------------------------------------------------------------
# auxiliary-system product average
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualSystemResult:
    grid: tuple[float, ...]
    node_values: tuple[complex, ...]
    l2_norm: float


def dual_system_avg(system: System, obs1: Observable, obs2: Observable, x0, a: int, b: int,
                    system_s: RotationTorus, g_list, grid_size: int, N: int,
                    index_base: int = 1) -> DualSystemResult:
    """Node values y_j -> (1/N) sum f1(T^{an}x0) f2(T^{bn}x0) prod_i g_i(S^{in} y_j).

    S must be a circle rotation; the quadrature grid is uniform with at least
    64 nodes and the reported norm is the root mean square over nodes.
    """
    if not isinstance(system_s, RotationTorus) or system_s.dimension != 1:
        raise UnsupportedSystemError("auxiliary system must be a circle rotation")
    g_list = list(g_list)
    if not 1 <= len(g_list) <= 3:
        raise ValueError("need between 1 and 3 auxiliary observables")
    if grid_size < 64:
        raise ValueError("quadrature grid needs at least 64 nodes")
    if N < 1:
        raise ValueError("N must be >= 1")
    t = system_s.alpha_floats[0]
    n = _times(index_base, N)
    base_terms = double_terms(system, obs1, obs2, x0, a, b, N, index_base)
    # with S^{in} y = y + (i n) t, the i-th factor phase reuses the weight path
    rotated = [frac_poly((0.0, t), (i + 1) * n) for i in range(len(g_list))]
    nodes = np.arange(grid_size, dtype=np.float64) / grid_size
    values = []
    for y in nodes:
        prod = base_terms
        for g, rot in zip(g_list, rotated):
            coords = frac(y + rot)[:, None]
            prod = prod * eval_observable_many(g, coords)
        values.append(complex(pairwise_mean(prod)))
    arr = np.asarray(values)
    l2 = float(np.sqrt(pairwise_mean(np.abs(arr) ** 2).real))
    return DualSystemResult(tuple(nodes.tolist()), tuple(values), l2)


# ---------------------------------------------------------------------------
# schedule driver
# ---------------------------------------------------------------------------

_PREFIX_OPS = {"birkhoff", "ww", "double", "wwdr", "poly_wwdr", "nil_wwdr", "cesaro"}


def _schedule_terms(kind: str, params: dict, max_n: int, index_base: int) -> np.ndarray:
    n = _times(index_base, max_n)
    if kind == "birkhoff":
        return _orbit_values(params["system"], params["obs"], params["x0"], 1, n)
    if kind == "ww":
        u = _orbit_values(params["system"], params["obs"], params["x0"], 1, n)
        return u * frequency_phases(params["t"], n)
    if kind == "cesaro":
        return params["weight"].eval_many(n)
    base = double_terms(
        params["system"], params["obs1"], params["obs2"], params["x0"],
        params["a"], params["b"], max_n, index_base,
    )
    if kind == "double":
        return base
    if kind == "wwdr":
        return base * frequency_phases(params["t"], n)
    if kind == "poly_wwdr":
        return base * unit_phase(frac_poly(tuple(params["p"]), n))
    if kind == "nil_wwdr":
        return base * params["weight"].eval_many(n)
    raise ValueError(f"unknown schedule op {kind!r}")


def run_schedule(kind: str, params: dict, schedule, index_base: int = 1) -> ConvergenceReport:
    """Evaluate one average along an increasing schedule in a single pass.

    Term arrays are built once at the largest N; each scheduled prefix is
    reduced with the same pairwise tree it would get standalone, so the
    reported A_N match the one-shot operations bit-for-bit.
    """
    schedule = [int(v) for v in schedule]
    if not schedule or any(y <= x for x, y in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be nonempty and strictly increasing")
    budget = 0.0
    w = params.get("weight")
    if w is not None and getattr(w, "error_budget", 0.0):
        budget = w.error_budget
    if kind in _PREFIX_OPS:
        terms = _schedule_terms(kind, params, schedule[-1], index_base)
        values = [pairwise_sum(terms[:n]) / n for n in schedule]
        return make_report(schedule, values, error_budget=budget)
    if kind == "ww_sup":
        n = _times(index_base, schedule[-1])
        u = _orbit_values(params["system"], params["obs"], params["x0"], 1, n)
        sups = [sup_over_frequency(u[:n_], params["eps"], index_base) for n_ in schedule]
        return make_report(
            schedule,
            [s.sup_value for s in sups],
            sup_data=tuple(s.as_sup_point() for s in sups),
        )
    if kind == "dual_system":
        results = [
            dual_system_avg(
                params["system"], params["obs1"], params["obs2"], params["x0"],
                params["a"], params["b"], params["system_s"], params["g_list"],
                params["grid_size"], n_, index_base,
            )
            for n_ in schedule
        ]
        return make_report(schedule, [r.l2_norm for r in results])
    raise ValueError(f"unknown schedule op {kind!r}")
