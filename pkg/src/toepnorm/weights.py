"""Muckenhoupt weight classification and outer (spectral) factorization.

A power weight is a finite product prod_j |t - t_j|**lambda_j over points
t_j = exp(i*alpha_j) on the circle.  Such a weight lies in the Muckenhoupt
class A_p exactly when every exponent satisfies -1/p < lambda_j < 1 - 1/p;
``khvedelidze_ap_check`` implements that closed form and
``ap_characteristic`` measures the defining arc supremum numerically.

``outer_pair`` builds the boundary Fourier coefficients of the outer
function W with |W| = w together with those of 1/W.  Multiplication by W is
an isometry between the weighted and unweighted Hardy spaces, which is what
the finite-section machinery in :mod:`toepnorm.operators` conjugates with.
Three constructions are provided, trading generality for accuracy:

* ``outer_pair``          - any positive grid function; one-grid cepstral
                            completion (log, one-sided doubling, exp).  For
                            weights with cusps the result carries an O(1/M)
                            aliasing bias; for smooth log w it is spectrally
                            accurate.
* ``outer_pair_refined``  - power weights; the same completion run on two
                            nested grids (M and 2M) with Richardson
                            extrapolation of the log spectrum, which cancels
                            the leading 1/M alias of the 1/|k| log spectrum.
* ``outer_pair_exact``    - power weights; closed-form log spectrum
                            log W(z) = -sum_j lambda_j sum_k (e^{-i k a_j}/k) z^k
                            exponentiated by the Cauchy-product recurrence.
                            Exact to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectral import (CoeffVector, GridFunction, IndexWindow, analyze,
                       grid_thetas, multiply, synthesize)

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PowerWeight:
    """Finitely many circle points with real exponents; empty means w == 1."""

    points: tuple = ()

    def __post_init__(self):
        pts = tuple((float(a) % _TWO_PI, float(lam)) for a, lam in self.points)
        angles = [a for a, _ in pts]
        if len(set(angles)) != len(angles):
            raise ValueError("weight points must have pairwise distinct angles")
        object.__setattr__(self, "points", pts)

    def to_json_dict(self) -> dict:
        return {"points": [{"angle": a, "exponent": lam} for a, lam in self.points]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "PowerWeight":
        return cls(tuple((p["angle"], p["exponent"]) for p in d["points"]))

    def label(self) -> str:
        if not self.points:
            return "1"
        return "*".join(f"|t-e^(i{a:.6g})|^{lam:.6g}" for a, lam in self.points)


@dataclass(eq=False)
class OuterPair:
    """Boundary coefficients of the outer function W and of 1/W.

    ``residual`` reports the observed construction defect: the largest
    negative-frequency coefficient left over before truncation together with
    the reciprocal defect max |(W * 1/W)(k) - delta_0(k)| on the common
    window.
    """

    w_coeffs: CoeffVector
    winv_coeffs: CoeffVector
    residual: float

    def __post_init__(self):
        for c in (self.w_coeffs, self.winv_coeffs):
            if c.lo != 0:
                raise ValueError("outer coefficient windows must start at 0")
        c0 = self.w_coeffs.coeffs[0]
        if not (c0.real > 0 and abs(c0.imag) <= 1e-12 * max(1.0, c0.real)):
            raise ValueError("leading outer coefficient must be real positive")


def sample_power_weight(w: PowerWeight, size: int) -> GridFunction:
    """Evaluate the weight on the offset grid; |t - e^{ia}| = 2|sin((theta-a)/2)|."""
    th = grid_thetas(size)
    vals = np.ones(size)
    for a, lam in w.points:
        vals = vals * np.abs(2.0 * np.sin((th - a) / 2.0)) ** lam
    return GridFunction(size, vals.astype(complex))


def khvedelidze_ap_check(w: PowerWeight, p: float) -> bool:
    """Closed-form A_p membership: every exponent strictly inside (-1/p, 1-1/p)."""
    if not p > 1:
        raise ValueError("p must exceed 1")
    return all(-1.0 / p < lam < 1.0 - 1.0 / p for _, lam in w.points)


def _positive_real_samples(w: GridFunction) -> np.ndarray:
    vals = w.samples
    if np.any(vals.imag != 0) or np.any(vals.real <= 0):
        raise ValueError("weight samples must be strictly positive reals")
    return vals.real


def ap_characteristic(w: GridFunction, p: float, maxM: int = 512) -> float:
    """Arc-supremum A_p product scanned over grid-aligned arcs.

    Returns the maximum over contiguous sample runs (wrap-around included) of

        (avg of w^p)^(1/p) * (avg of w^(-p'))^(1/p'),

    with midpoint-rule averages.  When the grid is finer than ``maxM``
    subdivisions, arc endpoints are restricted to a coarser lattice so at
    most maxM**2 arcs are scanned; the averages still use every sample.
    The value is a lower bound for the true arc supremum; for weights
    outside A_p it grows without bound under grid refinement.
    """
    vals = _positive_real_samples(w)
    if not p > 1:
        raise ValueError("p must exceed 1")
    if maxM < 2:
        raise ValueError("maxM must be at least 2")
    M = w.size
    q = p / (p - 1.0)
    stride = max(1, -(-M // maxM))
    wp = vals ** p
    wq = vals ** (-q)
    cp = np.concatenate([[0.0], np.cumsum(np.concatenate([wp, wp]))])
    cq = np.concatenate([[0.0], np.cumsum(np.concatenate([wq, wq]))])
    starts = np.arange(0, M, stride)
    lengths = range(stride, M + 1, stride) if stride > 1 else range(1, M + 1)
    best = 0.0
    for L in lengths:
        avg_p = (cp[starts + L] - cp[starts]) / L
        avg_q = (cq[starts + L] - cq[starts]) / L
        val = np.max(avg_p ** (1.0 / p) * avg_q ** (1.0 / q))
        if val > best:
            best = float(val)
    return best


def _exp_series(v: np.ndarray) -> np.ndarray:
    """Taylor coefficients of exp(sum v_k z^k) via W' = (sum k v_k z^{k-1}) W."""
    K = len(v)
    out = np.zeros(K, dtype=complex)
    out[0] = np.exp(v[0])
    jv = np.arange(K) * v
    for k in range(1, K):
        out[k] = np.dot(jv[1:k + 1], out[k - 1::-1]) / k
    return out


def _reciprocal_defect(wc: np.ndarray, wic: np.ndarray) -> float:
    K = min(len(wc), len(wic))
    conv = np.convolve(wc[:K], wic[:K])[:K]
    conv[0] -= 1.0
    return float(np.max(np.abs(conv)))


def _pair_from_log_grid(vhat_w: np.ndarray, vhat_winv: np.ndarray,
                        size: int, win: IndexWindow) -> OuterPair:
    """Exponentiate completed log spectra on a grid and analyze back."""
    defect = 0.0
    coeffs = []
    for vhat in (vhat_w, vhat_winv):
        vc = CoeffVector(IndexWindow(0, len(vhat) - 1), vhat)
        wg = GridFunction(size, np.exp(synthesize(vc, size).samples))
        neg = analyze(wg, IndexWindow(-(size // 2), -1))
        defect = max(defect, float(np.max(np.abs(neg.coeffs))))
        coeffs.append(analyze(wg, win))
    wc, wic = coeffs
    residual = max(defect, _reciprocal_defect(wc.coeffs, wic.coeffs))
    return OuterPair(wc, wic, residual)


def _completed_log_spectrum(u_coeffs: np.ndarray) -> np.ndarray:
    """One-sided (Schwarz kernel) completion: keep k=0, double k >= 1."""
    v = u_coeffs.copy()
    v[1:] *= 2.0
    return v


def outer_pair(w: GridFunction, win: IndexWindow) -> OuterPair:
    """Outer pair from grid samples by the cepstral completion.

    Takes u = log w on the grid, keeps u-hat(0), doubles u-hat(1..M/2-1),
    zeroes negative frequencies, exponentiates pointwise and analyzes back
    into the requested window (which must start at 0 and stay below the
    Nyquist frequency).
    """
    vals = _positive_real_samples(w)
    if win.lo != 0:
        raise ValueError("outer coefficient window must start at 0")
    M = w.size
    if win.hi > M // 2 - 1:
        raise ValueError("window exceeds the Nyquist range of the weight grid")
    u = GridFunction(M, np.log(vals).astype(complex))
    uh = analyze(u, IndexWindow(0, M // 2 - 1)).coeffs
    return _pair_from_log_grid(_completed_log_spectrum(uh),
                               _completed_log_spectrum(-uh), M, win)


def outer_pair_refined(w: PowerWeight, grid_size: int, win: IndexWindow) -> OuterPair:
    """Outer pair via the cepstral completion on two nested grids.

    The log spectrum of a power weight decays exactly like 1/|k|, so the
    grid-M estimate of each coefficient is off by c/M + O(k^2/M^3).
    Extrapolating 2*u_hat(2M) - u_hat(M) removes the leading alias; the
    exponentiation then runs on the finer grid.
    """
    if win.lo != 0:
        raise ValueError("outer coefficient window must start at 0")
    M = grid_size
    if M < 4 or M & (M - 1):
        raise ValueError("grid size must be a power of two >= 4")
    if win.hi > M // 2 - 1:
        raise ValueError("window exceeds the Nyquist range of the weight grid")
    spec = IndexWindow(0, M // 2 - 1)
    u_m = np.log(_positive_real_samples(sample_power_weight(w, M)))
    u_2m = np.log(_positive_real_samples(sample_power_weight(w, 2 * M)))
    uh_m = analyze(GridFunction(M, u_m.astype(complex)), spec).coeffs
    uh_2m = analyze(GridFunction(2 * M, u_2m.astype(complex)), spec).coeffs
    uh = 2.0 * uh_2m - uh_m
    return _pair_from_log_grid(_completed_log_spectrum(uh),
                               _completed_log_spectrum(-uh), 2 * M, win)


def _power_log_spectrum(w: PowerWeight, K: int) -> np.ndarray:
    """Closed-form Taylor coefficients of log W for a power weight."""
    v = np.zeros(K, dtype=complex)
    ks = np.arange(1, K)
    for a, lam in w.points:
        v[1:] += -lam * np.exp(-1j * ks * a) / ks
    return v


def outer_pair_exact(w: PowerWeight, win: IndexWindow) -> OuterPair:
    """Outer pair of a power weight from its closed-form log spectrum.

    W(z) = prod_j (1 - e^{-i a_j} z)^{lambda_j}; the Taylor coefficients of
    W and 1/W follow from the exponentiation recurrence with no grid and no
    quadrature, so the only error is floating-point rounding.
    """
    if win.lo != 0:
        raise ValueError("outer coefficient window must start at 0")
    K = win.hi + 1
    v = _power_log_spectrum(w, K)
    wc = _exp_series(v)
    wic = _exp_series(-v)
    residual = max(_reciprocal_defect(wc, wic), 4.0 * K * np.finfo(float).eps)
    return OuterPair(CoeffVector(win, wc), CoeffVector(win, wic), residual)


def evaluate_outer(w, z: complex) -> complex:
    """Evaluate the outer function W at a point of the open disk.

    For grid input this is the midpoint-rule Schwarz integral
    exp((1/2pi) int (e^{it}+z)/(e^{it}-z) log w dt); its accuracy for cusped
    weights is limited by the same O(1/M) alias as ``outer_pair``.  For a
    ``PowerWeight`` the closed form prod (1 - e^{-i a_j} z)^{lambda_j} is
    used instead.
    """
    z = complex(z)
    if abs(z) > 0.99:
        raise ValueError("evaluation point must satisfy |z| <= 0.99")
    if isinstance(w, PowerWeight):
        acc = 0.0 + 0.0j
        for a, lam in w.points:
            acc += lam * np.log(1.0 - np.exp(-1j * a) * z)
        return complex(np.exp(acc))
    vals = _positive_real_samples(w)
    t = np.exp(1j * w.thetas())
    kernel = (t + z) / (t - z)
    return complex(np.exp(np.mean(kernel * np.log(vals))))


def reciprocal_pair(pair: OuterPair) -> OuterPair:
    """Swap W and 1/W (conjugating in the opposite direction)."""
    return OuterPair(pair.winv_coeffs, pair.w_coeffs, pair.residual)


def constant_pair(value: float, length: int) -> OuterPair:
    """Outer pair of the constant weight w == value > 0."""
    if not value > 0:
        raise ValueError("constant weight must be positive")
    win = IndexWindow(0, length - 1)
    wc = np.zeros(length, dtype=complex)
    wic = np.zeros(length, dtype=complex)
    wc[0] = value
    wic[0] = 1.0 / value
    return OuterPair(CoeffVector(win, wc), CoeffVector(win, wic), 0.0)
