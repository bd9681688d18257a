"""Finite sections of Toeplitz operators and their weighted conjugations.

A Toeplitz operator with bounded symbol a acts on analytic coefficient
vectors by f -> P(a f), so its matrix in the monomial basis has entries
a-hat(i - j).  This module builds N x N compressions of:

* the operator itself (``toeplitz_matrix``),
* its conjugation M_W T(a) M_{1/W} by the outer function of a weight
  (``conjugated_toeplitz_matrix``), and
* the finite-rank correction K0 that separates the two
  (``k0_matrix``), satisfying  M_W T(e_{-n} h) M_{1/W} = T(e_{-n} h) + K0.

Symbols of the form e_{-n} h with analytic h admit the exact representation
T(e_{-n} h) f = e_{-n} (I - P_n)(h f), implemented by
``apply_special_toeplitz`` and used throughout; ``csa_decompose`` rewrites a
finite Laurent symbol in that shifted-analytic form.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz as _toeplitz

from .spectral import (CoeffVector, IndexWindow, add, multiply, riesz_project,
                       synthesize, truncate_pn, unit)
from .weights import OuterPair

_KIND_LAURENT = "laurent"
_KIND_SHIFTED = "shifted_analytic"


@dataclass(eq=False)
class SymbolSpec:
    """A finite Laurent polynomial, or e_{-n} h with analytic polynomial h."""

    kind: str
    laurent: CoeffVector | None = None
    n: int | None = None
    h: CoeffVector | None = None

    def __post_init__(self):
        if self.kind == _KIND_LAURENT:
            if self.laurent is None:
                raise ValueError("laurent symbol requires coefficients")
        elif self.kind == _KIND_SHIFTED:
            if self.n is None or self.h is None:
                raise ValueError("shifted symbol requires n and h")
            if self.n < 1:
                raise ValueError("shift order n must be >= 1")
            if self.h.lo != 0:
                raise ValueError("h must be analytic (window starting at 0)")
        else:
            raise ValueError(f"unknown symbol kind {self.kind!r}")

    @classmethod
    def from_laurent(cls, c: CoeffVector) -> "SymbolSpec":
        return cls(_KIND_LAURENT, laurent=c)

    @classmethod
    def shifted(cls, n: int, h: CoeffVector) -> "SymbolSpec":
        return cls(_KIND_SHIFTED, n=n, h=h)

    def full_coeffs(self) -> CoeffVector:
        """The full Laurent coefficient sequence of the symbol."""
        if self.kind == _KIND_LAURENT:
            return self.laurent
        win = IndexWindow(-self.n, self.h.hi - self.n)
        return CoeffVector(win, self.h.coeffs.copy())

    def to_json_dict(self) -> dict:
        if self.kind == _KIND_LAURENT:
            return {"kind": self.kind, **self.laurent.to_json_dict()}
        return {"kind": self.kind, "n": self.n, "h": self.h.to_json_dict()}

    @classmethod
    def from_json_dict(cls, d: dict) -> "SymbolSpec":
        if d["kind"] == _KIND_LAURENT:
            return cls.from_laurent(CoeffVector.from_json_dict(d))
        return cls.shifted(int(d["n"]), CoeffVector.from_json_dict(d["h"]))

    def label(self) -> str:
        c = self.full_coeffs()
        parts = []
        for k, v in zip(c.window.indices(), c.coeffs):
            if v != 0:
                parts.append(f"{v:.6g}*e_{k}" if v.imag else f"{v.real:.6g}*e_{k}")
        return " + ".join(parts) if parts else "0"


@dataclass(eq=False)
class OperatorMatrix:
    """Compression of an operator to span{e_0, ..., e_{N-1}}."""

    N: int
    entries: np.ndarray

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=complex)
        if self.entries.shape != (self.N, self.N):
            raise ValueError("entries must be a square N x N array")
        if not np.all(np.isfinite(self.entries)):
            raise ValueError("entries must be finite")

    def to_json_dict(self) -> dict:
        return {"n": int(self.N),
                "entries": [[[float(v.real), float(v.imag)] for v in row]
                            for row in self.entries]}

    @classmethod
    def from_json_dict(cls, d: dict) -> "OperatorMatrix":
        entries = np.array([[complex(re, im) for re, im in row]
                            for row in d["entries"]])
        return cls(int(d["n"]), entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("i,j,re,im\n")
        for i in range(self.N):
            for j in range(self.N):
                v = self.entries[i, j]
                buf.write(f"{i},{j},{v.real:.17g},{v.imag:.17g}\n")
        return buf.getvalue()


def toeplitz_matrix(a: SymbolSpec, N: int) -> OperatorMatrix:
    """N x N section with entries a-hat(i - j), constant along diagonals."""
    if N < 1:
        raise ValueError("section size must be >= 1")
    full = a.full_coeffs()
    col = np.array([full.coeff(i) for i in range(N)])
    row = np.array([full.coeff(-j) for j in range(N)])
    return OperatorMatrix(N, _toeplitz(col, row))


def apply_special_toeplitz(n: int, h: CoeffVector, f: CoeffVector) -> CoeffVector:
    """Apply T(e_{-n} h) to analytic f via e_{-n} (I - P_n)(h f).

    Dropping the first n coefficients of h*f and shifting down by n agrees
    exactly with projecting e_{-n} h f onto nonnegative frequencies.
    """
    if n < 1:
        raise ValueError("shift order n must be >= 1")
    if h.lo != 0:
        raise ValueError("h must be analytic (window starting at 0)")
    if f.lo < 0:
        raise ValueError("f must be analytic (no negative frequencies)")
    hf = multiply(h, f)
    if hf.hi < n:
        return CoeffVector(IndexWindow(0, 0), np.zeros(1, dtype=complex))
    win = IndexWindow(0, hf.hi - n)
    out = np.array([hf.coeff(k + n) for k in range(len(win))])
    return CoeffVector(win, out)


def _shifted_form(a: SymbolSpec) -> tuple[int, CoeffVector]:
    if a.kind == _KIND_SHIFTED:
        return a.n, a.h
    return csa_decompose(a, None)


def k0_matrix(n: int, h: CoeffVector, W: OuterPair, N: int) -> OperatorMatrix:
    """Section of the finite-rank correction

        K0 = T(e_{-n}) P_n M_h  -  T(e_{-n}) M_W P_n M_{h/W}.

    Column j is assembled by the literal composition.  Since P_n factors
    through the span of e_0..e_{n-1}, the section has rank at most n; in
    fact the first term vanishes identically because e_{-n} P_n maps into
    negative frequencies only.
    """
    if N < 1:
        raise ValueError("section size must be >= 1")
    if n < 1:
        raise ValueError("shift order n must be >= 1")
    if h.lo != 0:
        raise ValueError("h must be analytic (window starting at 0)")
    out_win = IndexWindow(0, N - 1)
    hwi = multiply(h, W.winv_coeffs)
    one = unit(0)
    entries = np.zeros((N, N), dtype=complex)
    for j in range(N):
        ej = unit(j)
        term1 = apply_special_toeplitz(n, one, truncate_pn(multiply(h, ej), n))
        t2 = truncate_pn(multiply(hwi, ej), n)
        term2 = apply_special_toeplitz(n, one, multiply(W.w_coeffs, t2))
        entries[:, j] = term1.on_window(out_win) - term2.on_window(out_win)
    return OperatorMatrix(N, entries)


def conjugated_toeplitz_matrix(a: SymbolSpec, W: OuterPair, N: int) -> OperatorMatrix:
    """Section of the conjugated operator M_W T(a) M_{1/W}.

    Column j is the window [0, N-1] of P(W . P(a . P(W^{-1} e_j))); all
    products are exact windowed convolutions, so the only truncation is the
    finite window of the supplied outer pair (use length >= 4N for residual
    studies against ``toeplitz_matrix`` + ``k0_matrix``).
    """
    if N < 1:
        raise ValueError("section size must be >= 1")
    full = a.full_coeffs()
    out_win = IndexWindow(0, N - 1)
    entries = np.zeros((N, N), dtype=complex)
    for j in range(N):
        x = riesz_project(multiply(W.winv_coeffs, unit(j)))
        y = riesz_project(multiply(full, x))
        z = riesz_project(multiply(W.w_coeffs, y))
        entries[:, j] = z.on_window(out_win)
    return OperatorMatrix(N, entries)


def csa_decompose(a: SymbolSpec, plus_tail: CoeffVector | None = None
                  ) -> tuple[int, CoeffVector]:
    """Rewrite a finite Laurent symbol (plus optional analytic tail) as e_{-n} h.

    n = max(1, -lowest frequency of a); h = e_n * (a + tail) is analytic and
    the reconstruction e_{-n} h reproduces the input coefficientwise.
    """
    if a.kind != _KIND_LAURENT:
        raise ValueError("decomposition expects a laurent symbol")
    base = a.laurent
    if plus_tail is not None:
        if plus_tail.lo < 0:
            raise ValueError("tail must be analytic")
        combined = add(base, plus_tail)
    else:
        combined = base
    n = max(1, -base.lo)
    shifted = multiply(unit(n), combined)
    win = IndexWindow(0, max(shifted.hi, 0))
    return n, CoeffVector(win, shifted.on_window(win))


def symbol_sup(a: SymbolSpec, size: int = 1 << 16) -> float:
    """Dense-grid supremum of |a| (default 2^16 sample points)."""
    full = a.full_coeffs()
    return float(np.max(np.abs(synthesize(full, size).samples)))
