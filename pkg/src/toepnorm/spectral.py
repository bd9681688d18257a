"""Fourier analysis on the unit circle and the basic projection operators.

Functions on the circle are represented in two ways:

* ``CoeffVector``: a finite window of Fourier/Laurent coefficients, entry k
  holding the coefficient of z**(lo+k).  Windows with lo >= 0 represent
  analytic (Hardy-space) elements.
* ``GridFunction``: samples on the uniform *offset* grid
  theta_k = 2*pi*(k + 1/2) / M.  The half-sample offset keeps sampled power
  weights away from their singular points when those sit on the unoffset
  lattice.

All operations are pure; none of them mutates its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Above this window length, multiply() switches from direct convolution
# (bit-reproducible) to zero-padded FFT convolution.
_DIRECT_CONV_LIMIT = 512


@dataclass(frozen=True)
class IndexWindow:
    """Closed integer frequency range [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty index window [{self.lo}, {self.hi}]")

    def __len__(self):
        return self.hi - self.lo + 1

    def indices(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)


@dataclass(eq=False)
class CoeffVector:
    """Fourier coefficients on an index window.

    ``coeffs[k]`` is the coefficient of z**(window.lo + k).
    """

    window: IndexWindow
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.ndim != 1 or len(self.coeffs) != len(self.window):
            raise ValueError("coefficient array does not match the window length")
        if not np.all(np.isfinite(self.coeffs)):
            raise ValueError("coefficients must be finite")

    @property
    def lo(self) -> int:
        return self.window.lo

    @property
    def hi(self) -> int:
        return self.window.hi

    def coeff(self, n: int) -> complex:
        """Coefficient at frequency n (zero outside the window)."""
        if self.lo <= n <= self.hi:
            return complex(self.coeffs[n - self.lo])
        return 0.0 + 0.0j

    def on_window(self, window: IndexWindow) -> np.ndarray:
        """Coefficients restricted/padded to another window."""
        out = np.zeros(len(window), dtype=complex)
        lo = max(self.lo, window.lo)
        hi = min(self.hi, window.hi)
        if lo <= hi:
            out[lo - window.lo:hi - window.lo + 1] = \
                self.coeffs[lo - self.lo:hi - self.lo + 1]
        return out

    def to_json_dict(self) -> dict:
        return {"lo": int(self.lo),
                "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "CoeffVector":
        coeffs = np.array([complex(re, im) for re, im in d["coeffs"]])
        lo = int(d["lo"])
        return cls(IndexWindow(lo, lo + len(coeffs) - 1), coeffs)


@dataclass(eq=False)
class GridFunction:
    """Samples on the offset grid theta_k = 2*pi*(k + 1/2)/size."""

    size: int
    samples: np.ndarray

    def __post_init__(self):
        if self.size < 2 or self.size & (self.size - 1):
            raise ValueError("grid size must be a power of two >= 2")
        self.samples = np.asarray(self.samples, dtype=complex)
        if self.samples.shape != (self.size,):
            raise ValueError("sample array does not match the grid size")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples must be finite")

    def thetas(self) -> np.ndarray:
        return 2.0 * np.pi * (np.arange(self.size) + 0.5) / self.size

    def to_json_dict(self) -> dict:
        return {"size": int(self.size),
                "samples": [[float(s.real), float(s.imag)] for s in self.samples]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "GridFunction":
        return cls(int(d["size"]),
                   np.array([complex(re, im) for re, im in d["samples"]]))


def unit(n: int) -> CoeffVector:
    """The monomial z**n as a CoeffVector."""
    return CoeffVector(IndexWindow(n, n), np.array([1.0 + 0.0j]))


def grid_thetas(size: int) -> np.ndarray:
    return 2.0 * np.pi * (np.arange(size) + 0.5) / size


def analyze(f: GridFunction, win: IndexWindow) -> CoeffVector:
    """Fourier coefficients of f on the requested window.

    Midpoint (trapezoid on a periodic function) quadrature of the defining
    integral, which on the offset grid is a scaled DFT with a half-sample
    phase twist.  Exact for trigonometric polynomials of degree < size/2
    whose spectrum lies inside the window.
    """
    if len(win) > f.size:
        raise ValueError(
            f"window length {len(win)} exceeds grid size {f.size}")
    M = f.size
    F = np.fft.fft(f.samples) / M
    ks = win.indices()
    coeffs = np.exp(-1j * np.pi * ks / M) * F[ks % M]
    return CoeffVector(win, coeffs)


def synthesize(c: CoeffVector, size: int) -> GridFunction:
    """Evaluate the Laurent polynomial with coefficients c on the offset grid."""
    if c.lo < -(size // 2) or c.hi > size // 2 - 1:
        raise ValueError(
            f"window [{c.lo}, {c.hi}] exceeds the Nyquist range of grid size {size}")
    ks = c.window.indices()
    spec = np.zeros(size, dtype=complex)
    spec[ks % size] = c.coeffs * np.exp(1j * np.pi * ks / size)
    return GridFunction(size, np.fft.ifft(spec) * size)


def riesz_project(c: CoeffVector) -> CoeffVector:
    """Annihilate all negative-frequency coefficients."""
    win = IndexWindow(max(c.lo, 0), max(c.hi, 0))
    return CoeffVector(win, c.on_window(win))


def cauchy_singular(c: CoeffVector) -> CoeffVector:
    """Flip the sign of every negative-frequency coefficient (S = 2P - I)."""
    signs = np.where(c.window.indices() < 0, -1.0, 1.0)
    return CoeffVector(c.window, signs * c.coeffs)


def truncate_pn(c: CoeffVector, n: int) -> CoeffVector:
    """Keep coefficients at frequencies 0..n-1 only; output window is [0, n-1]."""
    if n < 1:
        raise ValueError("truncation order must be >= 1")
    win = IndexWindow(0, n - 1)
    return CoeffVector(win, c.on_window(win))


def multiply(a: CoeffVector, b: CoeffVector) -> CoeffVector:
    """Pointwise product as an exact Cauchy-product convolution.

    The output window is [a.lo + b.lo, a.hi + b.hi]; there is never any
    circular wrap-around.  Short windows use direct convolution, long ones a
    zero-padded FFT.
    """
    win = IndexWindow(a.lo + b.lo, a.hi + b.hi)
    if max(len(a.coeffs), len(b.coeffs)) <= _DIRECT_CONV_LIMIT:
        out = np.convolve(a.coeffs, b.coeffs)
    else:
        n = len(a.coeffs) + len(b.coeffs) - 1
        p = 1
        while p < n:
            p <<= 1
        out = np.fft.ifft(np.fft.fft(a.coeffs, p) * np.fft.fft(b.coeffs, p))[:n]
    return CoeffVector(win, out)


def add(a: CoeffVector, b: CoeffVector) -> CoeffVector:
    """Coefficientwise sum on the union window."""
    win = IndexWindow(min(a.lo, b.lo), max(a.hi, b.hi))
    return CoeffVector(win, a.on_window(win) + b.on_window(win))


def scale(a: CoeffVector, factor: complex) -> CoeffVector:
    return CoeffVector(a.window, factor * a.coeffs)


def fejer_mean(c: CoeffVector, d: int) -> CoeffVector:
    """Triangular (Cesaro) coefficient damping, window clipped to [-d, d].

    The coefficient at frequency n is multiplied by max(0, 1 - |n|/(d+1)),
    which makes the result a sup-norm contraction of c.
    """
    if d < 0:
        raise ValueError("order must be nonnegative")
    win = IndexWindow(-d, d)
    ks = win.indices()
    weights = np.maximum(0.0, 1.0 - np.abs(ks) / (d + 1.0))
    return CoeffVector(win, weights * c.on_window(win))


def coeffs_allclose(a: CoeffVector, b: CoeffVector,
                    rtol: float = 0.0, atol: float = 0.0) -> bool:
    """Compare two coefficient vectors as functions (on the union window)."""
    win = IndexWindow(min(a.lo, b.lo), max(a.hi, b.hi))
    return np.allclose(a.on_window(win), b.on_window(win), rtol=rtol, atol=atol)


def grid_sup(c: CoeffVector, oversample: int = 4) -> float:
    """Sup of |c| estimated by dense sampling at >= oversample * window length."""
    target = max(2, oversample * len(c.window), 2 * (abs(c.lo) + abs(c.hi) + 1))
    size = 1
    while size < target:
        size <<= 1
    return float(np.max(np.abs(synthesize(c, size).samples)))
