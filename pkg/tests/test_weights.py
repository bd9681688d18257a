"""Muckenhoupt classification and outer-function construction."""

import math

import numpy as np
import pytest

from toepnorm import (CoeffVector, GridFunction, IndexWindow,
                      ap_characteristic, evaluate_outer, khvedelidze_ap_check,
                      multiply, outer_pair, outer_pair_exact,
                      outer_pair_refined, sample_power_weight, synthesize)
from toepnorm.weights import PowerWeight


def single(lam, angle=0.0):
    return PowerWeight(((angle, lam),))


# ---------------------------------------------------------- closed-form A_p

def test_ap_check_examples():
    assert khvedelidze_ap_check(single(0.4), 2.0)
    assert not khvedelidze_ap_check(single(0.6), 2.0)
    assert khvedelidze_ap_check(PowerWeight(), 3.0)


def test_ap_check_rejects_bad_p():
    with pytest.raises(ValueError):
        khvedelidze_ap_check(single(0.1), 1.0)


def test_ap_check_agrees_with_interval_on_lattice():
    for lam in np.linspace(-0.9, 0.9, 13):
        for p in (1.2, 1.5, 2.0, 3.0, 4.0, 8.0):
            expected = -1.0 / p < lam < 1.0 - 1.0 / p
            assert khvedelidze_ap_check(single(lam), p) == expected


# -------------------------------------------------------- ap_characteristic

def test_ap_characteristic_constant_weight_is_one():
    for val in (1.0, 3.7):
        w = GridFunction(64, val * np.ones(64, dtype=complex))
        assert abs(ap_characteristic(w, 2.0) - 1.0) < 1e-13


def test_ap_characteristic_scale_invariance():
    rng = np.random.default_rng(3)
    vals = np.exp(rng.standard_normal(128))
    w1 = GridFunction(128, vals.astype(complex))
    w2 = GridFunction(128, (17.3 * vals).astype(complex))
    a1 = ap_characteristic(w1, 2.5)
    a2 = ap_characteristic(w2, 2.5)
    assert abs(a1 - a2) <= 1e-12 * a1


def test_ap_characteristic_at_least_one():
    rng = np.random.default_rng(11)
    for _ in range(5):
        vals = np.exp(rng.standard_normal(64))
        w = GridFunction(64, vals.astype(complex))
        for p in (1.5, 2.0, 4.0):
            assert ap_characteristic(w, p) >= 1.0 - 1e-12


def test_ap_characteristic_growth_signal():
    # Admissible exponent: bounded growth under refinement.  The exponent
    # just past the boundary diverges, visibly faster at every doubling.
    chars = {}
    for lam in (0.45, 0.55):
        chars[lam] = [ap_characteristic(sample_power_weight(single(lam), M),
                                        2.0, maxM=1024)
                      for M in (256, 512, 1024)]
    g45 = [chars[0.45][i + 1] / chars[0.45][i] - 1 for i in range(2)]
    g55 = [chars[0.55][i + 1] / chars[0.55][i] - 1 for i in range(2)]
    assert all(g < 0.25 for g in g45)
    assert all(b > a for a, b in zip(g45, g55))
    assert chars[0.55][2] > chars[0.55][0]


def test_ap_characteristic_rejects_nonpositive():
    w = GridFunction(8, np.array([1, 1, 1, 0, 1, 1, 1, 1], dtype=complex))
    with pytest.raises(ValueError):
        ap_characteristic(w, 2.0)


def test_ap_characteristic_endpoint_cap():
    vals = np.exp(np.sin(np.linspace(0, 2 * np.pi, 256, endpoint=False)))
    w = GridFunction(256, vals.astype(complex))
    full = ap_characteristic(w, 2.0, maxM=256)
    capped = ap_characteristic(w, 2.0, maxM=64)
    assert 1.0 <= capped <= full + 1e-12


# ---------------------------------------------------------------- outer_pair

def test_outer_pair_constant_weight():
    w = GridFunction(64, 4.0 * np.ones(64, dtype=complex))
    pair = outer_pair(w, IndexWindow(0, 15))
    assert abs(pair.w_coeffs.coeff(0) - 4.0) < 1e-13
    assert abs(pair.winv_coeffs.coeff(0) - 0.25) < 1e-13
    assert np.max(np.abs(pair.w_coeffs.coeffs[1:])) < 1e-13
    assert pair.residual <= 1e-14


def test_outer_pair_refined_absolute_value_weight():
    # w = |t - 1| has outer function 1 - z.
    pair = outer_pair_refined(single(1.0), 1024, IndexWindow(0, 255))
    target = np.zeros(256, dtype=complex)
    target[0], target[1] = 1.0, -1.0
    assert np.max(np.abs(pair.w_coeffs.coeffs - target)) < 1e-6


def test_outer_pair_exact_absolute_value_weight():
    pair = outer_pair_exact(single(1.0), IndexWindow(0, 63))
    target = np.zeros(64, dtype=complex)
    target[0], target[1] = 1.0, -1.0
    assert np.max(np.abs(pair.w_coeffs.coeffs - target)) < 1e-14


def test_outer_pair_grid_bias_on_cusped_weight_is_order_one_over_m():
    # The one-grid construction carries a known O(1/M) alias on cusped
    # weights; it must stay at that scale, no worse.
    w = sample_power_weight(single(1.0), 1024)
    pair = outer_pair(w, IndexWindow(0, 15))
    assert abs(pair.w_coeffs.coeff(0) - 1.0) < 2e-3


def test_outer_reciprocal_consistency():
    win = IndexWindow(0, 255)
    exact = outer_pair_exact(single(0.3), win)
    prod = multiply(exact.w_coeffs, exact.winv_coeffs)
    defect = prod.coeffs[:256].copy()
    defect[0] -= 1
    assert np.max(np.abs(defect)) <= 1e-8

    refined = outer_pair_refined(single(0.3), 1024, win)
    prod = multiply(refined.w_coeffs, refined.winv_coeffs)
    defect = prod.coeffs[:256].copy()
    defect[0] -= 1
    assert np.max(np.abs(defect)) <= 1e-6
    assert np.max(np.abs(defect)) <= refined.residual * (1 + 1e-9) + 1e-15


def test_outer_pair_modulus_matches_weight_on_grid():
    # Smooth trig-polynomial weight: spectrally exact reconstruction.
    M = 512
    th = 2 * np.pi * (np.arange(M) + 0.5) / M
    vals = 2.0 + np.cos(th)
    w = GridFunction(M, vals.astype(complex))
    pair = outer_pair(w, IndexWindow(0, M // 2 - 1))
    recon = np.abs(synthesize(pair.w_coeffs, M).samples)
    assert np.max(np.abs(recon - vals) / vals) < 1e-10
    # Polynomial modulus with the zero off the circle.
    vals2 = np.abs(1.0 - 0.7 * np.exp(1j * th))
    w2 = GridFunction(M, vals2.astype(complex))
    pair2 = outer_pair(w2, IndexWindow(0, M // 2 - 1))
    recon2 = np.abs(synthesize(pair2.w_coeffs, M).samples)
    assert np.max(np.abs(recon2 - vals2) / vals2) < 1e-6


def test_outer_pair_leading_coefficient_normalization():
    for pair in (outer_pair(sample_power_weight(single(0.3), 512),
                            IndexWindow(0, 63)),
                 outer_pair_refined(single(-0.3), 512, IndexWindow(0, 63)),
                 outer_pair_exact(single(0.25), IndexWindow(0, 63))):
        c0 = pair.w_coeffs.coeff(0)
        assert c0.real > 0
        assert abs(c0.imag) < 1e-12


def test_outer_pair_rejects_bad_input():
    w = GridFunction(16, np.ones(16, dtype=complex))
    with pytest.raises(ValueError):
        outer_pair(w, IndexWindow(1, 4))
    with pytest.raises(ValueError):
        outer_pair(w, IndexWindow(0, 8))
    neg = GridFunction(16, -np.ones(16, dtype=complex))
    with pytest.raises(ValueError):
        outer_pair(neg, IndexWindow(0, 3))


# ------------------------------------------------------------ evaluate_outer

def test_evaluate_outer_trivial_weight():
    w = GridFunction(64, np.ones(64, dtype=complex))
    assert abs(evaluate_outer(w, 0.3 + 0.1j) - 1.0) < 1e-13


def test_evaluate_outer_constant_e():
    w = GridFunction(64, math.e * np.ones(64, dtype=complex))
    assert abs(evaluate_outer(w, 0.0) - math.e) < 1e-13


def test_evaluate_outer_power_weight_closed_form():
    assert abs(evaluate_outer(single(1.0), 0.5) - 0.5) < 1e-12
    assert abs(evaluate_outer(single(1.0), 0.0) - 1.0) < 1e-15
    assert abs(evaluate_outer(single(1.0), 0.3j) - (1 - 0.3j)) < 1e-12


def test_evaluate_outer_grid_agrees_with_series_for_smooth_weight():
    M = 512
    th = 2 * np.pi * (np.arange(M) + 0.5) / M
    vals = 2.0 + np.cos(th)
    w = GridFunction(M, vals.astype(complex))
    pair = outer_pair(w, IndexWindow(0, 127))
    for z in (0.4, 0.25 + 0.3j, -0.5):
        series = np.polyval(pair.w_coeffs.coeffs[::-1], z)
        assert abs(evaluate_outer(w, z) - series) < 1e-6


def test_evaluate_outer_rejects_near_boundary():
    with pytest.raises(ValueError):
        evaluate_outer(single(0.3), 0.999)


# ------------------------------------------------------------------- misc

def test_power_weight_validation_and_json():
    with pytest.raises(ValueError):
        PowerWeight(((0.0, 1.0), (0.0, 2.0)))
    pw = PowerWeight(((0.0, 0.25), (math.pi, -0.25)))
    back = PowerWeight.from_json_dict(pw.to_json_dict())
    assert back.points == pw.points


def test_sample_power_weight_values():
    pw = single(1.0)
    g = sample_power_weight(pw, 16)
    th = g.thetas()
    assert np.allclose(g.samples.real, np.abs(2 * np.sin(th / 2)), atol=1e-14)
    assert np.all(g.samples.imag == 0)
