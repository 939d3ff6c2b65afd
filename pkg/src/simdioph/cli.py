"""Command-line front end.  Every run prints its resolved configuration
followed by exact results ("num/den" strings); exit status is 0 on success,
1 on invalid input and 2 when an exact identity fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import construct as cons
from . import decompose as dec
from .bodies import B1, Honeycomb, honeycomb_critical_basis, parse_gauge
from .exact import IdentityViolation, fmt_q, parse_q
from .lattice import (
    Lattice,
    congruence_member,
    lattice_equal,
    lattice_from_n,
    orthogonal_section,
    polar,
    validate_target,
    weyl_lattice,
)
from .minima import ConstrainedProblem, constrained_minima, successive_minima, sweep_ratio

THREADS_ENV = "SIMDIOPH_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class RunConfig:
    subcommand: str
    k: int | None = None
    n: list[int] | None = None
    gauge: str | None = None
    Q: str | None = None
    N: int | None = None
    params: str | None = None
    eps: str | None = None
    format: str = "json"
    threads: int = 1
    seed: int = 0
    extra: dict = field(default_factory=dict)


def _ints(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {s}") from e


def _rationals(s: str) -> list[Fraction]:
    try:
        return [parse_q(x) for x in s.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals: {s}") from e


def _gauge_json(values) -> list[dict]:
    return [v.to_json() for v in values]


def _report_json(rep) -> dict:
    return rep.to_json()


def cmd_lambda_n(a, cfg):
    L = lattice_from_n(a.n)
    return {"n": a.n, "det": fmt_q(L.det), "scalar": fmt_q(L.scalar),
            "hnf": [list(r) for r in L.hnf],
            "basis": [[fmt_q(x) for x in r] for r in L.basis]}


def cmd_polar(a, cfg):
    L = lattice_from_n(a.n)
    P = polar(L)
    S = orthogonal_section(a.n)
    return {"n": a.n, "polar": P.to_json(), "section": S.to_json(),
            "equal": lattice_equal(P, S)}


def cmd_weyl(a, cfg):
    W = weyl_lattice(a.n)
    out = {"n": a.n, "weyl": W.to_json(), "equal": lattice_equal(W, lattice_from_n(a.n))}
    if a.x is not None:
        ok, r = congruence_member(a.n, a.x)
        out["member"] = {"x": a.x, "ok": ok, "r": r}
    return out


def cmd_minima(a, cfg):
    n = validate_target(a.n)
    g = parse_gauge(a.gauge, len(n) - 1, n)
    rep = successive_minima(lattice_from_n(n), g, a.count)
    return {"n": list(n), "gauge": a.gauge, **_report_json(rep)}


def cmd_approx(a, cfg):
    g = parse_gauge(a.gauge, len(a.x))
    rep = constrained_minima(ConstrainedProblem(tuple(a.x), a.Q, g), a.count)
    return {"x": [fmt_q(c) for c in a.x], "Q": fmt_q(a.Q), "gauge": a.gauge, **_report_json(rep)}


def cmd_sweep(a, cfg):
    gauge = "mn" if a.gauge == "mn" else parse_gauge(a.gauge, a.k)
    res = sweep_ratio(a.k, gauge, a.N, a.mode, workers=cfg.threads)
    if cfg.format == "csv":
        return [",".join(f"n{i + 1}" for i in range(a.k + 1)) + ",num,den,exp",
                *res.csv_rows()]
    return {"max_ratio": res.max_ratio.to_json(), "argmax": list(res.argmax),
            "approx": f"~{float(res.max_ratio):.6f}", "targets": len(res.table)}


def _load_params(a) -> cons.SequenceParams:
    if a.params:
        with open(a.params) as fh:
            spec = json.load(fh)
        B = [[parse_q(x) for x in row] for row in spec["B"]]
        alphas = [parse_q(x) for x in spec["alphas"]]
    else:
        if a.alphas is None:
            raise ValueError("give --params FILE or --alphas (with --B or --honeycomb)")
        k = len(a.alphas)
        if a.honeycomb:
            B = honeycomb_critical_basis(k)
        elif a.B:
            B = [_rationals(row) for row in a.B.split(";")]
        else:
            B = [[int(i == j) for j in range(k)] for i in range(k)]
        alphas = a.alphas
    return cons.prepare(B, alphas)


def cmd_construct(a, cfg):
    params = _load_params(a)
    t_values = a.t_values
    points = cons.find_admissible(params, a.count, a.t_limit, a.tvec_box, t_values)
    return {"d": params.d, "sign": params.sign,
            "points": [p.to_json(cons.point_errors(params, p)) for p in points]}


def cmd_decompose(a, cfg):
    return {"brute_force": dec.brute_force_decomposition(a.n).to_json(),
            "heuristic": dec.heuristic_decomposition(a.n).to_json()}


def cmd_c0_sweep(a, cfg):
    res = dec.c0_sweep(a.k, a.N, a.min_height)
    if cfg.format == "csv":
        return [",".join(f"n{i + 1}" for i in range(a.k + 1)) + ",product,num,den,k", *res.csv_rows()]
    return {"max_pow_k": fmt_q(res.max_power), "argmax": list(res.argmax),
            "bound_pow_k": fmt_q(dec.c0_bound_power(a.k)), "vectors": len(res.table)}


def cmd_certify(a, cfg):
    cert = dec.certify_lower_bound(a.n)
    out = cert.to_json()
    if a.check:
        d = dec.brute_force_decomposition(a.n)
        out["brute_force"] = d.to_json()
        out["sound"] = cert.holds_for(d)
    return out


def cmd_worstcase(a, cfg):
    pts = dec.worstcase_sequence(a.k, a.eps, a.count, seed=cfg.seed,
                                 t_limit=a.t_limit, tvec_box=a.tvec_box,
                                 allow_k2=a.experimental_k2)
    return [p.to_json() for p in pts]


def cmd_selftest(a, cfg):
    """Quick randomized pass over the exact invariants."""
    rng = random.Random(cfg.seed)
    checks = {}
    for _ in range(a.samples):
        k = rng.randint(2, 4)
        N = rng.randint(2, 500)
        n = tuple(sorted(rng.randint(1, N) for _ in range(k))) + (N,)
        try:
            validate_target(n)
        except ValueError:
            continue
        L = lattice_from_n(n)
        checks.setdefault("det", []).append(L.det == Fraction(1, N))
        checks.setdefault("polarity", []).append(lattice_equal(polar(L), orthogonal_section(n)))
        checks.setdefault("weyl", []).append(lattice_equal(weyl_lattice(n), L))
    for k in (2, 3):
        lam = successive_minima(Lattice.from_basis(honeycomb_critical_basis(k)), Honeycomb(k), 1)
        checks.setdefault("honeycomb", []).append(lam.lambdas[0].value == 1)
    body = B1(Fraction(1, 3), Fraction(3, 5))
    for piece, (lo, hi) in body.piece_ranges().items():
        for t in (lo, (lo + hi) / 2, hi):
            checks.setdefault("b1_boundary", []).append(body.value(body.boundary_point(piece, t)) == 1)
    summary = {key: all(v) for key, v in checks.items()}
    if not all(summary.values()):
        raise IdentityViolation(f"selftest failures: {summary}")
    return {"checks": summary, "samples": {key: len(v) for key, v in checks.items()}}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="simdioph", description=__doc__)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker processes (default: ${THREADS_ENV} or 1)")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("lambda-n", cmd_lambda_n, "basis and determinant of Lambda(n)")
    sp.add_argument("--n", type=_ints, required=True)
    sp = add("polar", cmd_polar, "polar of Lambda(n) against the orthogonal section")
    sp.add_argument("--n", type=_ints, required=True)
    sp = add("weyl", cmd_weyl, "lattice of the rational Weyl orbit")
    sp.add_argument("--n", type=_ints, required=True)
    sp.add_argument("--x", type=_ints, default=None, help="integer point for the congruence test")
    sp = add("minima", cmd_minima, "successive minima of Lambda(n)")
    sp.add_argument("--n", type=_ints, required=True)
    sp.add_argument("--gauge", default="sup")
    sp.add_argument("--count", type=int, default=None)
    sp = add("approx", cmd_approx, "constrained minima lambda_i(x, Q)")
    sp.add_argument("--x", type=_rationals, required=True)
    sp.add_argument("--Q", type=parse_q, required=True)
    sp.add_argument("--gauge", default="sup")
    sp.add_argument("--count", type=int, default=1)
    sp = add("sweep", cmd_sweep, "sup of the minima ratio over targets")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--gauge", default="euclid")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--mode", choices=("product", "first_power"), default="product")
    sp = add("construct", cmd_construct, "admissible n(t) for a lattice and ratios")
    sp.add_argument("--params", default=None, help='JSON file {"B": [[...]], "alphas": [...]}')
    sp.add_argument("--B", default=None, help="rows separated by ';', entries by ','")
    sp.add_argument("--honeycomb", action="store_true", help="use the honeycomb critical basis")
    sp.add_argument("--alphas", type=_rationals, default=None)
    sp.add_argument("--count", type=int, default=4)
    sp.add_argument("--t-limit", type=int, default=200)
    sp.add_argument("--tvec-box", type=int, default=3)
    sp.add_argument("--t-values", type=_ints, default=None)
    sp = add("decompose", cmd_decompose, "optimal and heuristic decompositions of n")
    sp.add_argument("--n", type=_ints, required=True)
    sp = add("c0-sweep", cmd_c0_sweep, "brute-force decomposition ratios up to height N")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--min-height", type=int, default=1)
    sp = add("certify-decomp", cmd_certify, "lower-bound certificate for decompositions of n")
    sp.add_argument("--n", type=_ints, required=True)
    sp.add_argument("--check", action="store_true", help="compare with brute force")
    sp = add("worstcase", cmd_worstcase, "points near the honeycomb critical lattice")
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--eps", type=parse_q, required=True)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--t-limit", type=int, default=200)
    sp.add_argument("--tvec-box", type=int, default=3)
    sp.add_argument("--experimental-k2", action="store_true",
                    help="also run k = 2, where no points are guaranteed")
    sp = add("selftest", cmd_selftest, "randomized pass over the exact invariants")
    sp.add_argument("--samples", type=int, default=100)
    return p


def _resolve(a) -> RunConfig:
    threads = a.threads if a.threads is not None else int(os.environ.get(THREADS_ENV, "1"))
    if threads < 1:
        raise ValueError("thread count must be positive")
    known = {"k", "n", "gauge", "Q", "N", "params", "eps"}
    skip = known | {"fn", "subcommand", "format", "threads", "seed"}
    extra = {key: _plain(v) for key, v in vars(a).items() if key not in skip}
    return RunConfig(
        subcommand=a.subcommand, k=getattr(a, "k", None), n=getattr(a, "n", None),
        gauge=getattr(a, "gauge", None),
        Q=fmt_q(a.Q) if getattr(a, "Q", None) is not None else None,
        N=getattr(a, "N", None), params=getattr(a, "params", None),
        eps=fmt_q(a.eps) if getattr(a, "eps", None) is not None else None,
        format=a.format, threads=threads, seed=a.seed, extra=extra)


def _plain(v):
    if isinstance(v, Fraction):
        return fmt_q(v)
    if isinstance(v, list):
        return [_plain(x) for x in v]
    return v


def _emit(cfg: RunConfig, result, out) -> None:
    if isinstance(result, list) and cfg.format == "csv" and all(isinstance(r, (str, list)) for r in result):
        out.write("# config: " + json.dumps(asdict(cfg)) + "\n")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in result:
            writer.writerow(row.split(",") if isinstance(row, str) else row)
        out.write(buf.getvalue())
        return
    out.write(json.dumps({"config": asdict(cfg), "result": result}, indent=2) + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        cfg = _resolve(a)
        result = a.fn(a, cfg)
    except IdentityViolation as e:
        print(f"identity violated: {e}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, LookupError, OSError, KeyError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:     # --help
        return 0 if e.code in (0, None) else 1
    _emit(cfg, result, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
