"""Shared independent oracles for the test suite.

Everything here is deliberately computed by a different route than the
package code: ascending power series for Bessel functions, hand-derived
closed forms for the 4-site ring, plain binary entropy.
"""

from __future__ import annotations

import math


def bessel_series(n: int, x: float, terms: int = 30) -> float:
    """Ascending power series sum_k (-1)^k (x/2)^(n+2k) / (k! (n+k)!).

    Converges fast for small x; independent of any recurrence.
    """
    total = 0.0
    for k in range(terms):
        total += (-1) ** k * (x / 2.0) ** (n + 2 * k) / (
            math.factorial(k) * math.factorial(n + k)
        )
    return total


def binary_entropy(p: float) -> float:
    out = 0.0
    for v in (p, 1.0 - p):
        if v > 0.0:
            out -= v * math.log2(v)
    return out


def square_ring_overlap(beta: float) -> float:
    """|<psi_f0|psi_f1>| for the 4-site flux protocol, site-1 start, by hand.

    Uniform-gauge propagators worked out from the two spectra:
    zero flux has levels {0, +4, 0, -4} (site amplitudes (1+cos b)/2,
    i sin(b)/2, (cos b - 1)/2, i sin(b)/2), half flux has levels
    {+2r2, +2r2, -2r2, -2r2} (site amplitudes cos t, e^{-i pi/4} i sin(t)/r2,
    0, -e^{-3i pi/4} i sin(t)/r2 with t = b/r2, r2 = sqrt(2)).  The site-2/4
    cross terms add instead of cancel, giving

        ov(b) = (1 + cos b) cos(b/r2)/2 + sin(b) sin(b/r2)/2.
    """
    theta = beta / math.sqrt(2.0)
    return abs(
        (1.0 + math.cos(beta)) * math.cos(theta) / 2.0
        + math.sin(beta) * math.sin(theta) / 2.0
    )


def square_ring_entropy(beta: float) -> float:
    """Closed-form flux-ring entanglement (ebits) for the 4-site protocol."""
    return binary_entropy((1.0 + square_ring_overlap(beta)) / 2.0)
