"""Product-formula residual against the transport tolerance, per connection."""
import argparse
import time
from fractions import Fraction as F

from periodet.algebra import QMatrix
from periodet.connection import LogConnection
from periodet.periods import plan_for, verify_theorem_T

CASES = {
    "beta-1/2": LogConnection.rank_one([0, 1], [F(1, 2), F(1, 2)]),
    "beta-1/3": LogConnection.rank_one([0, 1], [F(1, 3), F(1, 4)]),
    "rank1-d3": LogConnection.rank_one([0, 1, 3], [F(1, 3), F(1, 4), F(1, 5)]),
    "rank2-triangular": LogConnection((F(0), F(1)), (QMatrix.of([[F(1, 2), 1], [0, F(1, 3)]]),
                                                    QMatrix.of([[F(1, 4), 0], [0, F(1, 5)]]))),
    "rank1-d4": LogConnection.rank_one([-2, 0, F(1, 2), 3], [F(2, 7), F(1, 6), F(3, 5), F(1, 9)]),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tols", type=float, nargs="+", default=[1e-4, 1e-6, 1e-8, 1e-10, 1e-12])
    args = ap.parse_args()
    print(f"{'case':18s} {'tol':>8s} {'residual':>10s} {'seconds':>8s}")
    for name, conn in CASES.items():
        plan = plan_for(conn)
        for tol in args.tols:
            t0 = time.perf_counter()
            rep = verify_theorem_T(conn, plan, tol)
            print(f"{name:18s} {tol:8.0e} {rep.residual:10.2e} {time.perf_counter() - t0:8.3f}")


if __name__ == "__main__":
    main()
