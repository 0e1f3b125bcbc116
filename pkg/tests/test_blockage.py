"""Half-flux diametric blocking: the theorem, its mechanism, and its limits."""

import math

import numpy as np
import pytest

from spinring.amplitude import xi, xi_profile
from spinring.blockage import (
    BLOCKED_XI,
    bessel_pair_coefficients,
    switch_contrast,
    verify_blockage,
)
from spinring.ring import RingConfig, mode_energies

ROOT2 = math.sqrt(2.0)


def test_blocked_at_fixed_samples():
    for quarter in (1, 2):
        rep = verify_blockage(quarter, [math.pi, ROOT2 * math.pi, 17.3, 4999.0])
        assert rep.analytic_zero
        assert rep.max_xi_over_samples <= BLOCKED_XI
        assert rep.n == 4 * quarter and rep.d == 2 * quarter


def test_blocked_at_random_samples_all_sizes():
    rng = np.random.default_rng(41)
    for quarter in (1, 2, 3, 4):
        rep = verify_blockage(quarter, rng.uniform(0.0, 5000.0, 200))
        assert rep.analytic_zero
        assert rep.max_xi_over_samples <= BLOCKED_XI


def test_ladder_coefficients_cancel_term_by_term():
    for quarter in (1, 2, 3, 4, 9):
        assert np.max(np.abs(bessel_pair_coefficients(quarter, 32))) <= 1e-14


def test_spectral_mechanism_degenerate_pairs():
    # at half flux the levels pair up (m with N-1-m) and the diametric DFT
    # weights of each pair sum to zero, at any time
    rng = np.random.default_rng(42)
    for quarter in (1, 2, 3):
        n, d = 4 * quarter, 2 * quarter
        cfg = RingConfig(n, f=0.5)
        energies = mode_energies(cfg)
        t = float(rng.uniform(0.0, 1000.0))
        m = np.arange(1, n + 1)
        summands = np.exp(-1j * energies * t) * np.exp(2j * np.pi * d * m / n)
        for level in np.unique(energies):
            group = summands[energies == level]
            assert len(group) == 2
            assert abs(group.sum()) <= 1e-14


def test_diametric_blocking_holds_for_every_even_ring():
    """The cancellation needs only N even, not N divisible by 4.

    For any even N at half flux, modes m and N-1-m are exactly degenerate
    while the diametric weights exp(i*pi*m) alternate sign, so the pair sums
    vanish for all times; N = 6 is as blocked as N = 4 or 8.
    """
    betas = np.arange(0.0, 50.0001, 0.01)
    assert xi_profile(RingConfig(6, f=0.5), 3, betas).max() <= 1e-12
    assert xi_profile(RingConfig(10, f=0.5), 5, betas).max() <= 1e-12


def test_off_diameter_receiver_still_hears():
    # the pairing argument needs d = N/2; two sites short of the diameter the
    # channel stays loud even at half flux
    betas = np.arange(0.0, 100.0001, 0.01)
    assert xi_profile(RingConfig(8, f=0.5), 2, betas).max() > 0.1


def test_switch_contrast_perfect_at_pi():
    xi_open, xi_closed = switch_contrast(1, math.pi)
    assert xi_open == pytest.approx(1.0, abs=1e-12)
    assert xi_closed <= BLOCKED_XI


def test_switch_contrast_trivial_at_zero():
    xi_open, xi_closed = switch_contrast(1, 0.0)
    assert xi_open <= 1e-15
    assert xi_closed <= 1e-15


def test_switch_contrast_eight_ring_best_window():
    betas = np.arange(0.0, 200.0001, 0.01)
    profile = xi_profile(RingConfig(8, f=0.0), 4, betas)
    best = float(betas[int(np.argmax(profile))])
    xi_open, xi_closed = switch_contrast(2, best)
    assert xi_open > 0.5
    assert xi_closed <= BLOCKED_XI


def test_validation():
    with pytest.raises(ValueError):
        verify_blockage(0, [1.0])
    with pytest.raises(ValueError):
        verify_blockage(2, [float("inf")])
    with pytest.raises(ValueError):
        switch_contrast(-1, 1.0)
