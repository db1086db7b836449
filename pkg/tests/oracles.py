"""Independent brute-force oracles used to pin expected values.

Everything here deliberately avoids the library's evaluation paths:
phases go through exact rational arithmetic on the floats' binary
representations, orbits are iterated one step at a time, and box/cube
sums are literal nested loops.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np


def exact_phase(coefficients, n: int) -> float:
    """frac(sum c_j n^j) with exact integer arithmetic on each float."""
    total = Fraction(0)
    for j, c in enumerate(coefficients):
        total += Fraction(float(c)) * (int(n) ** j)
    return float(total % 1)


def exact_phase_seq(coefficients, length: int, start: int = 0) -> np.ndarray:
    return np.array([exact_phase(coefficients, n) for n in range(start, start + length)])


def unit(theta) -> np.ndarray:
    return np.exp(2j * np.pi * np.asarray(theta))


def iterate_rotation(alpha, x0, n: int):
    x = np.asarray(x0, dtype=np.float64).copy()
    a = np.asarray(alpha, dtype=np.float64)
    for _ in range(n):
        x = (x + a) % 1.0
    return x


def iterate_anzai(alpha: float, x0, n: int):
    x, y = float(x0[0]), float(x0[1])
    for _ in range(n):
        x, y = (x + alpha) % 1.0, (y + x) % 1.0
    return np.array([x, y])


def iterate_cat(matrix, modulus: int, v0, n: int):
    p1, p2 = int(v0[0]) % modulus, int(v0[1]) % modulus
    (a, b), (c, d) = matrix
    for _ in range(n):
        p1, p2 = (a * p1 + b * p2) % modulus, (c * p1 + d * p2) % modulus
    return p1, p2


def heisenberg_product(g, n: int):
    """n-fold iterated group multiplication of (a, b, c)."""
    a = b = c = 0.0
    for _ in range(n):
        c = c + g.c + a * g.b
        a = a + g.a
        b = b + g.b
    return a, b, c


def heisenberg_products_exact(g, count: int):
    """All iterated products g^1 .. g^count with exact rational arithmetic.

    The naive float iteration drifts by ~1e-8 in the center coordinate by
    n = 1000, which would swamp the closed form's own error; iterating the
    group law over the floats' exact rational values removes the oracle's
    contribution entirely.
    """
    ga, gb, gc = Fraction(g.a), Fraction(g.b), Fraction(g.c)
    a = b = c = Fraction(0)
    out = []
    for _ in range(count):
        c = c + gc + a * gb
        a = a + ga
        b = b + gb
        out.append((a, b, c))
    return out


def direct_mean(terms) -> complex:
    """Plain left-to-right summation, independent of the pairwise tree."""
    total = 0.0 + 0.0j
    for t in np.asarray(terms):
        total += t
    return total / len(terms)


def geometric_avg_bound(theta: float, N: int) -> float:
    """|(1/N) sum_{n=1..N} e(n theta)| <= 2 / (N |1 - e(theta)|)."""
    return 2.0 / (N * abs(1 - np.exp(2j * np.pi * theta)))


def c_h_brute(a, k: int, h, N: int) -> complex:
    """Conjugated cube correlation by literal enumeration."""
    a = np.asarray(a)
    total = 0.0 + 0.0j
    for n in range(N):
        prod = 1.0 + 0.0j
        for eps in itertools.product((0, 1), repeat=k):
            idx = n + sum(e * v for e, v in zip(eps, h))
            prod *= np.conj(a[idx]) if sum(eps) % 2 else a[idx]
        total += prod
    return total / N


def box_average_brute(a, k: int, H: int, N: int) -> complex:
    """Mean of c_h over h in {1..H}^k via c_h_brute."""
    total = 0.0 + 0.0j
    for h in itertools.product(range(1, H + 1), repeat=k):
        total += c_h_brute(a, k, h, N)
    return total / H**k


def local_seminorm_brute(a, k: int, H: int, N: int):
    avg = box_average_brute(a, k, H, N).real
    if avg < 0:
        return 0.0, True
    return avg ** (1.0 / 2**k), False


def cube_average_brute_vec(s1, s2, H: int) -> complex:
    """Triple loop over (h1, h2, h3) with the 8-fold product vectorized in n.

    Same literal offset structure as `cube_average_brute` (which checks this
    variant at small H), fast enough for the H = 16 acceptance sweep.
    """
    s1 = np.asarray(s1)
    s2 = np.asarray(s2)
    base = min(s1.size, s2.size) - 3 * (H - 1)
    assert base >= 1
    eps = list(itertools.product((0, 1), repeat=3))
    total = 0.0 + 0.0j
    for h1 in range(H):
        for h2 in range(H):
            for h3 in range(H):
                g1 = np.ones(base, dtype=complex)
                g2 = np.ones(base, dtype=complex)
                for e in eps:
                    off = e[0] * h1 + e[1] * h2 + e[2] * h3
                    g1 = g1 * s1[off : off + base]
                    g2 = g2 * s2[off : off + base]
                total += g1.mean() * g2.mean()
    return total / H**3


def cube_average_brute(s1, s2, H: int) -> complex:
    """Order-3 cube average by the literal triple loop over (h1, h2, h3)."""
    s1 = np.asarray(s1)
    s2 = np.asarray(s2)
    base = min(s1.size, s2.size) - 3 * (H - 1)
    assert base >= 1
    offsets = list(itertools.product((0, 1), repeat=3))
    total = 0.0 + 0.0j
    for h1 in range(H):
        for h2 in range(H):
            for h3 in range(H):
                g1 = 0.0 + 0.0j
                g2 = 0.0 + 0.0j
                for n in range(base):
                    p1 = 1.0 + 0.0j
                    p2 = 1.0 + 0.0j
                    for e in offsets:
                        idx = n + e[0] * h1 + e[1] * h2 + e[2] * h3
                        p1 *= s1[idx]
                        p2 *= s2[idx]
                    g1 += p1
                    g2 += p2
                total += (g1 / base) * (g2 / base)
    return total / H**3
