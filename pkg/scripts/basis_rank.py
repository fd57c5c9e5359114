"""Rank of multicurve trace functions on random SL2 points vs the Hilbert series."""

import argparse
import time

from multicurves.charvar import DEFAULT_PRIME, dim_fil, multicurves_up_to
from multicurves.genfun import series_coeffs
from multicurves.polygraph import H_gf_m
from multicurves.surface import genus_zero


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--r", type=int, default=4)
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    args = ap.parse_args()
    for m in args.m:
        sig = genus_zero(m)
        expected = series_coeffs(H_gf_m(m), args.r)
        for r in range(args.r + 1):
            t0 = time.perf_counter()
            n = len(multicurves_up_to(sig, r))
            ranks = {dim_fil(sig, r, args.prime, n + 20, seed) for seed in range(args.seeds)}
            status = "ok" if ranks == {expected[r]} else "MISMATCH"
            print(f"m={m} r={r}  multicurves={n:5d}  rank={sorted(ranks)}  H={expected[r]}  {status}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
