#!/usr/bin/env python3
"""Convergence study for the weighted conjugation identity.

For a shifted-analytic symbol e_{-n} h with seeded random h, reports the
Frobenius-relative residual of

    M_W T(e_{-n} h) M_{1/W}  -  T(e_{-n} h)  -  K0

over a sequence of section sizes, together with the numerical rank of the
K0 section.  The residual is pure outer-construction error and should decay
with the section size (the outer grid scales with N).
"""

import argparse
import sys

import numpy as np

from toepnorm import (CoeffVector, IndexWindow, SymbolSpec,
                      conjugated_toeplitz_matrix, k0_matrix,
                      outer_pair_refined, toeplitz_matrix)
from toepnorm.weights import PowerWeight


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--exponent", type=float, default=0.3)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--degree", type=int, default=4)
    ap.add_argument("--sizes", default="64,128,256,512")
    ap.add_argument("--seed", type=int, default=20240901)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    coeffs = (rng.standard_normal(args.degree + 1)
              + 1j * rng.standard_normal(args.degree + 1)) / np.sqrt(2)
    h = CoeffVector(IndexWindow(0, args.degree), coeffs)
    spec = SymbolSpec.shifted(args.n, h)
    pw = PowerWeight(((0.0, args.exponent),))

    print("N,residual,rank_ratio")
    for N in (int(s) for s in args.sizes.split(",")):
        W = outer_pair_refined(pw, 8 * N, IndexWindow(0, 4 * N - 1))
        T = toeplitz_matrix(spec, N).entries
        C = conjugated_toeplitz_matrix(spec, W, N).entries
        K0 = k0_matrix(args.n, h, W, N).entries
        res = np.linalg.norm(C - T - K0) / np.linalg.norm(T)
        sv = np.linalg.svd(K0, compute_uv=False)
        print(f"{N},{res:.17g},{sv[args.n] / sv[0]:.17g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
