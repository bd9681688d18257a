"""Operator norms and essential-norm brackets."""

import math

import numpy as np
import pytest

from toepnorm import (BracketParams, CoeffVector, IndexWindow, NormEstimate,
                      OperatorMatrix, PowerIterationError, SymbolSpec,
                      essential_bracket, essential_lower_wavepacket,
                      essential_upper, operator_norm, outer_pair,
                      sample_power_weight, symbol_sup, theoretical_bounds,
                      toeplitz_matrix)
from toepnorm.weights import PowerWeight


def laurent(lo, coeffs):
    coeffs = np.asarray(coeffs, dtype=complex)
    return SymbolSpec.from_laurent(
        CoeffVector(IndexWindow(lo, lo + len(coeffs) - 1), coeffs))


def naive_pair(pw, N):
    return outer_pair(sample_power_weight(pw, 8 * N), IndexWindow(0, N + 15))


SYM_FLAT = laurent(-1, [1.0])
SYM_CURVED = laurent(-1, [1.0, 0.0, 0.0, 0.5])


# -------------------------------------------------------------- operator_norm

def test_operator_norm_identity():
    assert abs(operator_norm(OperatorMatrix(80, np.eye(80))) - 1.0) < 1e-9


def test_operator_norm_small_diagonal():
    M = OperatorMatrix(3, np.diag([3.0, 1.0, 0.5]).astype(complex))
    assert abs(operator_norm(M) - 3.0) < 1e-12


def test_operator_norm_tridiagonal_section():
    T = toeplitz_matrix(laurent(-1, [1.0, 0.0, 1.0]), 256)
    exact = 2.0 * math.cos(math.pi / 257)
    assert abs(operator_norm(T) - exact) < 1e-3


def test_operator_norm_reports_stall_with_estimate():
    # Two nearly degenerate top singular values force the iteration past its
    # cap; the failure must carry a usable estimate.
    d = np.full(64, 0.1)
    d[0] = 1.0
    d[1] = math.sqrt(1.0 - 5e-5)
    M = OperatorMatrix(64, np.diag(d).astype(complex))
    with pytest.raises(PowerIterationError) as info:
        operator_norm(M)
    assert abs(info.value.estimate - 1.0) < 1e-4


# ------------------------------------------------------------ essential_upper

def test_essential_upper_identity_symbol():
    assert abs(essential_upper(laurent(0, [1.0]), None, 8, 128) - 1.0) < 1e-8


def test_essential_upper_identity_symbol_weighted():
    from toepnorm import outer_pair_exact
    W = outer_pair_exact(PowerWeight(((0.0, 0.3),)), IndexWindow(0, 255))
    assert abs(essential_upper(laurent(0, [1.0]), W, 8, 128) - 1.0) < 1e-8


def test_essential_upper_pure_shift():
    assert abs(essential_upper(SYM_FLAT, None, 32, 512) - 1.0) < 1e-6


def test_essential_upper_weighted_close_to_sup():
    spec = laurent(-1, [2.0, 0.0, 0.0, 1.0])
    pw = PowerWeight(((0.0, 0.3),))
    up = essential_upper(spec, naive_pair(pw, 1024), 64, 1024)
    sup = symbol_sup(spec)
    assert abs(up - sup) <= 0.03 * sup


def test_essential_upper_monotone_in_m():
    vals = [essential_upper(SYM_CURVED, None, m, 1024)
            for m in (8, 16, 32, 64)]
    for a, b in zip(vals, vals[1:]):
        assert b <= a + 1e-9


def test_essential_upper_parameter_validation():
    with pytest.raises(ValueError):
        essential_upper(SYM_FLAT, None, 0, 128)
    with pytest.raises(ValueError):
        essential_upper(SYM_FLAT, None, 100, 128)


# ------------------------------------------------- essential_lower_wavepacket

def test_lower_identity_symbol_exact():
    val = essential_lower_wavepacket(laurent(0, [1.0]), None, 32, 16, 64, 256)
    assert abs(val - 1.0) < 1e-12


def test_lower_pure_shift():
    val = essential_lower_wavepacket(SYM_FLAT, None, 64, 64, 16, 512)
    assert val >= 0.99


def test_lower_within_three_percent_of_sup():
    spec = laurent(-1, [2.0, 0.0, 0.0, 1.0])
    sup = symbol_sup(spec)
    val = essential_lower_wavepacket(spec, None, 128, 64, 256, 512)
    assert sup * 0.97 <= val <= sup + 1e-9


def test_lower_rejects_overflowing_packet():
    with pytest.raises(ValueError):
        essential_lower_wavepacket(SYM_CURVED, None, 256, 900, 16, 1024)


# ----------------------------------------------------------- essential_bracket

def test_bracket_identity_symbol_tight():
    est = essential_bracket(laurent(0, [1.0]), None,
                            BracketParams(N=256, m=16, L=32, thetas=16))
    assert abs(est.lower - 1.0) < 1e-12
    assert abs(est.upper - 1.0) < 1e-9


def test_bracket_default_parameters_quality():
    est = essential_bracket(SYM_CURVED, None, BracketParams())
    sup = symbol_sup(SYM_CURVED)
    assert est.lower <= est.upper <= sup + 1e-12
    assert est.upper >= sup * (1 - 1e-4)
    assert (est.upper - est.lower) <= 0.04 * sup


def test_bracket_weighted_overlaps_unweighted():
    params = BracketParams(N=512, m=32, L=32, thetas=64)
    base = essential_bracket(SYM_CURVED, None, params)
    for lam in (0.3, -0.3):
        W = naive_pair(PowerWeight(((0.0, lam),)), 512)
        est = essential_bracket(SYM_CURVED, W, params)
        assert est.lower <= base.upper and base.lower <= est.upper


def test_bracket_scale_equivariance():
    from toepnorm import scale
    params = BracketParams(N=256, m=16, L=32, thetas=32)
    base = essential_bracket(SYM_CURVED, None, params)
    scaled_sym = SymbolSpec.from_laurent(scale(SYM_CURVED.laurent, 2.5))
    scaled = essential_bracket(scaled_sym, None, params)
    assert abs(scaled.lower - 2.5 * base.lower) <= 1e-12 * scaled.lower
    assert abs(scaled.upper - 2.5 * base.upper) <= 1e-12 * scaled.upper


def test_norm_estimate_validation_and_json():
    with pytest.raises(ValueError):
        NormEstimate(2.0, 1.0, 8, 1, 1, 1)
    est = NormEstimate(0.9, 1.0, 8, 1, 1, 1)
    d = est.to_json_dict()
    assert d["lower"] == 0.9 and d["thetas"] == 1


# --------------------------------------------------------- theoretical_bounds

def test_theoretical_bounds_values():
    lo, up = theoretical_bounds(2.0)
    assert abs(lo - 1.0) <= 1e-15 and abs(up - 1.0) <= 1e-15
    lo4, up4 = theoretical_bounds(4.0)
    assert abs(lo4 - 1.0) <= 1e-15 and abs(up4 - math.sqrt(2.0)) <= 1e-15


def test_theoretical_bounds_near_one_takes_power_branch():
    p = 1.0001
    lo, up = theoretical_bounds(p)
    assert up == 2.0 ** abs(1.0 - 2.0 / p)
    assert up < 1.0 / math.sin(math.pi / p)
    assert abs(up - 2.0) < 1e-2


def test_theoretical_bounds_rejects_bad_p():
    with pytest.raises(ValueError):
        theoretical_bounds(1.0)
