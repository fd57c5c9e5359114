"""Expand trace functions of short words in the multicurve basis.

Useful for reading off the signs in the skein-type reduction by hand.
"""

import argparse
import itertools

from multicurves.charvar import express_in_basis
from multicurves.surface import canonical_class, genus_zero, is_cyclically_reduced


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--length", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sig = genus_zero(args.m)
    letters = [x for k in range(1, args.m + 1) for x in (k, -k)]
    seen = set()
    for w in itertools.product(letters, repeat=args.length):
        if not is_cyclically_reduced(w) or canonical_class(w) in seen:
            continue
        seen.add(canonical_class(w))
        print(express_in_basis(w, sig, seed=args.seed))


if __name__ == "__main__":
    main()
