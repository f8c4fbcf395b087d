"""Point counts of x^m + y^m + z^m = 0 against q + 1 + sum of Jacobi sums."""
import argparse

import sympy

from periodet.jacobi import fermat_point_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mmax", type=int, default=8)
    ap.add_argument("--qmax", type=int, default=60)
    args = ap.parse_args()
    bad = 0
    for m in range(2, args.mmax + 1):
        for q in sympy.primerange(3, args.qmax + 1):
            if (q - 1) % m:
                continue
            count, formula = fermat_point_count(m, q)
            bad += count != formula
            print(f"m={m} q={q:3d} count={count:4d} formula={formula:4d}"
                  f"{'' if count == formula else '  MISMATCH'}")
    print(f"{bad} mismatches")


if __name__ == "__main__":
    main()
