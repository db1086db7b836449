"""Finite-scale uniformity seminorms for sequences and orbit functions, the
weighted finite van der Corput inequality, and order-3 cube averages.

Sequence seminorm: the order-k correlation of a bounded sequence is

    c_h = (1/N) sum_n prod_{eps in {0,1}^k} C^{|eps|} a_{n + eps.h}

(C = complex conjugation, applied on odd eps-weight; on real sequences this
is the plain product). The order-k seminorm estimate averages Re c_h over
the offset box h in {1..H}^k, clamps a negative average to zero (flagged),
and takes the 2^k-th root. Offsets start at 1: the degenerate zero-offset
lines contribute a Theta(k/H) positive bias that swamps vanishing seminorms
at desk scale while changing nothing in the H -> infinity limit.

Function seminorm: recursive orbit estimator with level 1 = |(1/N) sum
f(T^n x0)| and level k+1 the 2^{k+1}-th root of the h-average of the level-k
estimate of f * conj(f o T^h), h in {1..H}.

Box sums are evaluated by peeling one offset at a time (the order-k cube
product is D_n * conj(D_{n+h_k}) for the order-(k-1) product D), which turns
the innermost offset sum into a sliding-window mean: cost O(H^{k-1} N)
instead of O((2H)^k N).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InvalidExponentsError, SequenceTooShortError
from .nilseq import WeightSequence
from .numerics import pairwise_mean, pairwise_sum
from .report import ConvergenceReport, make_report
from .systems import Observable, System, eval_observable_many, orbit_coords, zk_complement

MAX_ORDER = 4  # cost grows as H^(k-1) 2^k; 4 covers every exponent used here


@dataclass(frozen=True)
class CorrelationBox:
    """One correlation value c_h at finite scale N."""

    k: int
    h: tuple[int, ...]
    N: int
    value: complex


@dataclass(frozen=True)
class SeminormEstimate:
    family: str  # "local_sequence" or "ghk_function"
    k: int
    H: int
    N: int
    value: float
    clamped: bool
    pre_root_average: float

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("seminorm estimates are nonnegative by construction")


def _as_sequence(a) -> np.ndarray:
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError("sequence must be one-dimensional")
    return arr


def _require_length(a: np.ndarray, needed: int, what: str):
    if a.size < needed:
        raise SequenceTooShortError(f"{what} needs {needed} samples, sequence has {a.size}")


def c_h_estimate(a, k: int, h, N: int) -> CorrelationBox:
    """(1/N) sum_n of the order-k conjugated cube product at offsets eps.h."""
    a = _as_sequence(a)
    h = tuple(int(v) for v in h)
    if k < 1 or k > MAX_ORDER:
        raise ValueError(f"order k must be in 1..{MAX_ORDER}")
    if len(h) != k:
        raise ValueError(f"offset vector has length {len(h)}, expected {k}")
    if any(v < 0 for v in h):
        raise ValueError("offsets must be nonnegative")
    _require_length(a, N + sum(h), "correlation")
    prod = np.ones(N, dtype=np.complex128)
    for eps in itertools.product((0, 1), repeat=k):
        off = sum(e * v for e, v in zip(eps, h))
        window = a[off : off + N]
        prod = prod * (np.conj(window) if sum(eps) % 2 else window)
    return CorrelationBox(k, h, N, complex(pairwise_mean(prod)))


def _box_average(seq: np.ndarray, k: int, H: int, N: int) -> complex:
    """Mean of c_h over h in {1..H}^k, by recursive offset peeling."""
    if k == 1:
        # (1/H) sum_{h=1..H} (1/N) sum_n s_n conj(s_{n+h})
        #   = (1/N) sum_n s_n conj(mean of s over (n, n+H])
        cs = np.concatenate(([0.0 + 0.0j], np.cumsum(seq)))
        windows = (cs[1 + H : N + H + 1] - cs[1 : N + 1]) / H
        return complex(pairwise_mean(seq[:N] * np.conj(windows)))
    acc = 0.0 + 0.0j
    for h1 in range(1, H + 1):
        keep = seq.size - h1
        derived = seq[:keep] * np.conj(seq[h1:])
        acc += _box_average(derived, k - 1, H, N)
    return acc / H


def local_seminorm(a, k: int, H: int, N: int) -> SeminormEstimate:
    """Order-k sequence seminorm estimate at box size H and inner scale N."""
    a = _as_sequence(a)
    if k < 1 or k > MAX_ORDER:
        raise ValueError(f"order k must be in 1..{MAX_ORDER}")
    if H < 1:
        raise ValueError("H must be >= 1")
    if N < H * H:
        raise ValueError(f"finite-scale coupling requires N >= H^2 (N={N}, H={H})")
    _require_length(a, N + k * H, "order-%d box" % k)
    avg = _box_average(a[: N + k * H], k, H, N).real
    clamped = avg < 0.0
    value = 0.0 if clamped else float(avg) ** (1.0 / (1 << k))
    return SeminormEstimate("local_sequence", k, H, N, value, clamped, float(avg))


def orbit_product_sequence(system: System, obs1: Observable, obs2: Observable, x0,
                           a: int, b: int, length: int, index_base: int = 0) -> np.ndarray:
    """Materialize a_n = f1(T^{an} x0) f2(T^{bn} x0) for n = index_base .. +length-1."""
    if a == b or a == 0 or b == 0:
        raise InvalidExponentsError(f"exponents must be distinct and nonzero, got a={a}, b={b}")
    n = np.arange(index_base, index_base + length, dtype=np.int64)
    va = eval_observable_many(obs1, orbit_coords(system, x0, a * n))
    vb = eval_observable_many(obs2, orbit_coords(system, x0, b * n))
    return va * vb


def _ghk_recursive(u: np.ndarray, k: int, H: int, N: int) -> float:
    if k == 1:
        return float(abs(pairwise_mean(u[:N])))
    acc = 0.0
    for h in range(1, H + 1):
        keep = u.size - h
        derived = u[:keep] * np.conj(u[h:])
        level = _ghk_recursive(derived, k - 1, H, N)
        acc += level ** (1 << (k - 1))
    avg = acc / H
    return avg ** (1.0 / (1 << k))


def ghk_seminorm(system: System, obs: Observable, x0, k: int, H: int, N: int,
                 index_base: int = 0) -> SeminormEstimate:
    """Order-k function seminorm estimated along one orbit.

    Level 1 is |(1/N) sum f(T^n x0)|; each further level averages the powered
    previous level of f * conj(f o T^h) over h in {1..H}. Pre-root averages
    are means of nonnegative numbers, so clamping never fires here; the flag
    is kept for schema compatibility.
    """
    if k < 1 or k > MAX_ORDER:
        raise ValueError(f"order k must be in 1..{MAX_ORDER}")
    if H < 1:
        raise ValueError("H must be >= 1")
    length = N + (k - 1) * H
    n = np.arange(index_base, index_base + length, dtype=np.int64)
    u = eval_observable_many(obs, orbit_coords(system, x0, n))
    value = _ghk_recursive(u, k, H, N)
    return SeminormEstimate("ghk_function", k, H, N, float(value), False, float(value) ** (1 << k))


# ---------------------------------------------------------------------------
# van der Corput and cube averages
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VdcReport:
    lhs: float
    rhs: float
    passed: bool
    N: int
    K: int


def vdc_bound(u, N: int, K: int) -> VdcReport:
    """Finite weighted van der Corput inequality with explicit constants.

        |(1/N) sum u_n|^2  <=  ((N+K)/N) (1/(K+1))
                               sum_{|k|<=K} (1 - |k|/(K+1)) |(1/N) sum u_{n+k} conj(u_n)|

    with correlations truncated at valid indices. This is a theorem for
    every finite sequence; `passed` allows 1e-12 of floating slack.
    """
    u = _as_sequence(u)
    if K < 1:
        raise ValueError("K must be >= 1")
    if (K + 1) ** 2 >= N:
        raise ValueError(f"side condition (K+1)^2 < N violated: K={K}, N={N}")
    _require_length(u, N, "van der Corput")
    u = u[:N]
    lhs = abs(pairwise_sum(u) / N) ** 2
    rhs = float(abs(pairwise_sum(u * np.conj(u))) / N)  # k = 0 term, weight 1
    for k in range(1, K + 1):
        corr = abs(pairwise_sum(u[k:] * np.conj(u[: N - k]))) / N
        rhs += 2.0 * (1.0 - k / (K + 1.0)) * float(corr)
    rhs *= (N + K) / N / (K + 1.0)
    return VdcReport(float(lhs), float(rhs), lhs <= rhs + 1e-12, N, K)


_CUBE3_EPS = tuple(itertools.product((0, 1), repeat=3))


def cube_average(s1, s2, H: int) -> complex:
    """Order-3 cube average (1/H^3) sum_h G1(h) G2(h).

    G_i(h) is the base-index mean of the plain 8-fold product of s_i at
    offsets {eps.h : eps in {0,1}^3}; the base window is whatever the
    sequences leave after reserving 3(H-1) trailing offsets.
    """
    s1 = _as_sequence(s1)
    s2 = _as_sequence(s2)
    if H < 1:
        raise ValueError("H must be >= 1")
    span = 3 * (H - 1)
    base = min(s1.size, s2.size) - span
    if base < 1:
        raise SequenceTooShortError(
            f"cube average at H={H} needs sequences longer than {span}"
        )
    acc = 0.0 + 0.0j
    length = base + H - 1  # supports correlations at every h3 in [0, H)
    for h1 in range(H):
        for h2 in range(H):
            # the 8-fold product splits on the h3 bit: it equals
            # d[n] * d[n + h3] for the order-2 product d on offsets (h1, h2),
            # so one sliding-window matvec yields all h3 at once
            d1 = s1[:length] * s1[h1 : length + h1] * s1[h2 : length + h2] * s1[h1 + h2 : length + h1 + h2]
            d2 = s2[:length] * s2[h1 : length + h1] * s2[h2 : length + h2] * s2[h1 + h2 : length + h1 + h2]
            w1 = np.lib.stride_tricks.sliding_window_view(d1, base)  # row h3 = d1[h3 : h3+base]
            w2 = np.lib.stride_tricks.sliding_window_view(d2, base)
            g1 = (w1 @ d1[:base]) / base
            g2 = (w2 @ d2[:base]) / base
            acc += complex(g1 @ g2)
    return complex(acc / H**3)


# ---------------------------------------------------------------------------
# seminorm-vs-average experiment
# ---------------------------------------------------------------------------


def coupled_box_size(N: int) -> int:
    """Largest power of two H with H^2 <= N."""
    h = 1
    while (2 * h) * (2 * h) <= N:
        h *= 2
    return h


def vanishing_experiment(system: System, obs1: Observable, obs2: Observable, x0,
                         a: int, b: int, w: WeightSequence, k: int, schedule,
                         index_base: int = 0) -> ConvergenceReport:
    """Pair the order-k seminorm of the projected orbit product with its
    weighted averages along a schedule.

    Both observables are first projected onto the complement of the
    order-(k-1) characteristic factor; if the sequence seminorm vanishes, the
    weighted averages against any lower-step weight must vanish too, and this
    report lets that implication be eyeballed and thresholded.
    """
    schedule = [int(v) for v in schedule]
    if not schedule or any(y <= x for x, y in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be nonempty and strictly increasing")
    if k < 1 or k > MAX_ORDER:
        raise ValueError(f"order k must be in 1..{MAX_ORDER}")
    g1 = zk_complement(system, obs1, k - 1) if k > 1 else obs1
    g2 = zk_complement(system, obs2, k - 1) if k > 1 else obs2
    max_n = schedule[-1]
    h_max = coupled_box_size(max_n)
    seq = orbit_product_sequence(system, g1, g2, x0, a, b, max_n + k * h_max, index_base)
    weights = w.eval_many(np.arange(index_base, index_base + max_n, dtype=np.int64))
    values = []
    semis = []
    clamps = []
    for n in schedule:
        h = coupled_box_size(n)
        est = local_seminorm(seq[: n + k * h], k, h, n)
        semis.append(est.value)
        clamps.append(est.clamped)
        values.append(pairwise_sum(seq[:n] * weights[:n]) / n)
    return make_report(
        schedule,
        values,
        seminorm_values=tuple(semis),
        seminorm_clamped=tuple(clamps),
        error_budget=getattr(w, "error_budget", 0.0),
    )
