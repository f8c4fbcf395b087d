"""Residual under changes of base point, disc scale and symbol method."""
import itertools
from fractions import Fraction as F

from periodet.connection import LogConnection
from periodet.periods import plan_for, verify_theorem_T

CONNS = {
    "beta-1/3": LogConnection.rank_one([0, 1], [F(1, 3), F(1, 4)]),
    "rank1-d3": LogConnection.rank_one([0, 1, 3], [F(1, 3), F(1, 4), F(1, 5)]),
    "shifted": LogConnection.rank_one([-2, F(1, 2), 5], [F(1, 3), F(1, 4), F(1, 5)]),
}
BASES = [None, 2 - 5j, -3 - 2j, 10 - 1j]
SCALES = [1.0, 0.5, 0.25]
METHODS = ["ledger", "quadrature", "transport"]


def main():
    for name, conn in CONNS.items():
        print(f"== {name}")
        for base, scale in itertools.product(BASES, SCALES):
            try:
                plan = plan_for(conn, base=base, disc_scale=scale)
            except ValueError as exc:
                print(f"  base={base} scale={scale}: {exc}")
                continue
            for method in METHODS:
                rep = verify_theorem_T(conn, plan, symbol_method=method)
                print(f"  base={str(base):10s} scale={scale:<5} {method:10s} "
                      f"residual={rep.residual:.2e}")


if __name__ == "__main__":
    main()
