"""Build n(t) for a target lattice and ratios, then report errors and convergence.

    python scripts/construct_ladder.py --B 1,0 0,1 --alphas 1/2 3/4
    python scripts/construct_ladder.py --honeycomb 3 --alphas 1/2 2/3 3/4
"""

import argparse
import sys

from simdioph.bodies import SupNorm, honeycomb_critical_basis
from simdioph.construct import (
    convergence_along,
    doubling_ladder,
    find_admissible,
    identity_checks,
    prepare,
    verify_asymptotics,
)
from simdioph.exact import parse_q


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--B", nargs="+", help="rows of B, entries comma-separated")
    src.add_argument("--honeycomb", type=int, metavar="K", help="use the honeycomb critical basis")
    p.add_argument("--alphas", nargs="+", required=True)
    p.add_argument("--count", type=int, default=40)
    p.add_argument("--t-limit", type=int, default=260)
    p.add_argument("--tvec-box", type=int, default=3)
    a = p.parse_args(argv)
    B = (honeycomb_critical_basis(a.honeycomb) if a.honeycomb
         else [[parse_q(x) for x in row.split(",")] for row in a.B])
    params = prepare(B, [parse_q(x) for x in a.alphas])
    ladder = doubling_ladder(find_admissible(params, a.count, a.t_limit, a.tvec_box))
    print(f"d={params.d} sign={params.sign} tvec={ladder[0].tvec}")
    table = verify_asymptotics(params, ladder)
    errs = convergence_along(params, ladder, SupNorm(params.k))
    for row, p_, e in zip(table.rows, ladder, errs):
        print(f"  t={row['t']:>4} n={p_.n} e2={float(row['e2']):.4f} e3={float(row['e3']):.4f} "
              f"e4={float(row['e4']):.4f} |dlambda1|={e}")
    print(f"bounded={table.bounded}")
    print(f"identities={identity_checks(params, ladder[0].tvec)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
