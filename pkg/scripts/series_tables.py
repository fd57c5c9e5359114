"""Print multicurve counts c_{g,n}(r) from enumeration next to the closed form."""

import argparse

from multicurves.diagrams import series_nonperipheral
from multicurves.genfun import series_coeffs
from multicurves.polygraph import Zgn_gf
from multicurves.surface import make_sig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=6)
    ap.add_argument("--closed-only", type=int, default=20, help="extra degrees from the closed form alone")
    args = ap.parse_args()
    for g, n in [(0, 3), (1, 1), (0, 4), (1, 2), (0, 5), (2, 1), (1, 3), (0, 6)]:
        sig = make_sig(g, n)
        enum = series_nonperipheral(sig, args.max_len)
        closed = series_coeffs(Zgn_gf(g, n), args.closed_only)
        flag = "ok" if enum == closed[: args.max_len + 1] else "MISMATCH"
        print(f"(g,n)=({g},{n}) m={sig.m}  enumerated {enum}  [{flag}]")
        print(f"    closed form to t^{args.closed_only}: {closed}")


if __name__ == "__main__":
    main()
