#!/usr/bin/env python3
"""Weighted versus unweighted essential-norm upper estimates.

Sweeps weight exponents for a fixed symbol and reports the column-zeroed
section norm measured through the outer-function conjugation, its deviation
from the unweighted estimate, and from the dense-grid sup of the symbol.
"""

import argparse
import sys

from toepnorm import (IndexWindow, essential_upper, outer_pair,
                      sample_power_weight, symbol_sup)
from toepnorm.cli import parse_symbol
from toepnorm.weights import PowerWeight


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--symbol", default="-1:1,2:0.5",
                    help="Laurent symbol, 'idx:coeff[,idx:coeff...]'")
    ap.add_argument("--exponents", default="-0.45,-0.3,0,0.3,0.45")
    ap.add_argument("--N", type=int, default=1024)
    ap.add_argument("--m", type=int, default=64)
    args = ap.parse_args()

    spec = parse_symbol(args.symbol)
    sup = symbol_sup(spec)
    n_neg = max(0, -spec.full_coeffs().lo)
    up0 = essential_upper(spec, None, args.m, args.N)
    print("exponent,upper,dev_from_unweighted,dev_from_gridsup")
    print(f"0 (unweighted),{up0:.17g},0,{abs(up0 - sup) / sup:.17g}")
    for lam in (float(s) for s in args.exponents.split(",")):
        pw = PowerWeight(((0.0, lam),))
        W = outer_pair(sample_power_weight(pw, 8 * args.N),
                       IndexWindow(0, args.N + n_neg + 15))
        up = essential_upper(spec, W, args.m, args.N)
        print(f"{lam:g},{up:.17g},{abs(up - up0) / sup:.17g},"
              f"{abs(up - sup) / sup:.17g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
