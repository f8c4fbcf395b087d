"""Wall-clock time of every catalog entry, run serially."""
import time

from periodet.catalog import catalog
from periodet.checks import run_check


def main():
    total = 0.0
    for cfg in catalog():
        t0 = time.perf_counter()
        rep = run_check(cfg)
        dt = time.perf_counter() - t0
        total += dt
        print(f"{cfg.label:28s} {'PASS' if rep['pass'] else 'FAIL'} {dt:7.3f}s")
    print(f"total {total:.2f}s")


if __name__ == "__main__":
    main()
