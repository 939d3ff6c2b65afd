"""Exhaustive sweep of the minima ratio over all targets with n_(k+1) <= N.

Writes the per-target table as CSV and prints the maximum.

    python scripts/sweep_ratios.py --k 2 --gauge euclid --N 150 --out euclid150.csv
"""

import argparse
import csv
import sys
import time

from simdioph.bodies import parse_gauge
from simdioph.minima import sweep_ratio


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--gauge", default="euclid")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--mode", choices=["product", "first_power"], default="product")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="CSV file for the full table")
    a = p.parse_args(argv)
    start = time.perf_counter()
    res = sweep_ratio(a.k, parse_gauge(a.gauge, a.k), a.N, a.mode, a.workers)
    print(f"targets={len(res.table)} max={res.max_ratio} (~{float(res.max_ratio):.6f}) "
          f"argmax={res.argmax} time={time.perf_counter() - start:.1f}s")
    if a.out:
        with open(a.out, "w", newline="") as fh:
            csv.writer(fh).writerows(res.csv_rows())
    return 0


if __name__ == "__main__":
    sys.exit(main())
