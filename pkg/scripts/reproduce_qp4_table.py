#!/usr/bin/env python3
"""Recompute the full dimension table of QP_4 = F2 (x) P_4 for all degrees
up to a bound, brute force, and format it by degree family.

Every degree n <= LIMIT is computed (not only the generic-family cells),
so the output also shows the Wood-vanishing degrees and the mu(n) = 4
degrees reachable by the Kameko isomorphism.

Usage: python scripts/reproduce_qp4_table.py [--limit N] [--cache-dir DIR]
"""

import argparse
import time

from hitforge.engine import HitEngine
from hitforge.invariants import mu


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--limit", type=int, default=46)
    parser.add_argument("--cache-dir", default=None)
    args = parser.parse_args()

    engine = HitEngine(cache_dir=args.cache_dir)
    print(f"{'n':>4} {'mu(n)':>6} {'decomposition':>16} {'dim (QP_4)_n':>13} {'time':>8}")
    total = time.perf_counter()
    for n in range(args.limit + 1):
        dec = mu(n)
        t = time.perf_counter()
        dim = engine.dim_qp(4, n)
        elapsed = time.perf_counter() - t
        shape = "+".join(f"2^{d}-1" for d in dec.d) if dec.d else "-"
        note = ""
        if dec.s > 4:
            note = "  (vanishes)"
        elif dec.s == 4:
            note = f"  (iso with n={n - 4 >> 1})" if n >= 4 else ""
        print(f"{n:>4} {dec.s:>6} {shape:>16} {dim:>13} {elapsed:>7.2f}s{note}")
    print(f"total {time.perf_counter() - total:.1f}s")


if __name__ == "__main__":
    main()
