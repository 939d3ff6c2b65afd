"""Successive minima of lattices with respect to star-body gauges.

All minima are computed by exhaustive enumeration of lattice points in a
sup-norm box that provably contains the relevant sublevel set, followed by a
greedy choice of linearly independent witnesses.  The box search walks the
triangular HNF basis, so the candidate coordinates come out as exact integer
intervals.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .bodies import BodyOfN, Euclid, Gauge, GaugeValue
from .exact import IdentityViolation, fmt_q, gcd_vector, hnf
from .lattice import Lattice


@dataclass
class MinimaReport:
    lambdas: list[GaugeValue]
    witnesses: list[tuple]
    det: Fraction | None = None
    ratio: GaugeValue | None = None
    ratio1k: GaugeValue | None = None

    def to_json(self) -> dict:
        out = {
            "lambdas": [lam.to_json() for lam in self.lambdas],
            "witnesses": [[fmt_q(c) for c in w] for w in self.witnesses],
        }
        if self.det is not None:
            out["det"] = fmt_q(self.det)
        if self.ratio is not None:
            out["ratio"] = self.ratio.to_json()
        if self.ratio1k is not None:
            out["ratio1k"] = self.ratio1k.to_json()
        return out


class _Span:
    """Incremental exact rank test for integer vectors."""

    def __init__(self):
        self.rows: list[tuple[int, list[int]]] = []

    def add(self, v) -> bool:
        v = [int(x) for x in v]
        for piv, row in self.rows:
            a = v[piv]
            if a:
                b = row[piv]
                v = [b * x - a * y for x, y in zip(v, row)]
        nz = next((i for i, x in enumerate(v) if x), None)
        if nz is None:
            return False
        g = gcd_vector(v)
        self.rows.append((nz, [x // g for x in v]))
        return True

    def __len__(self):
        return len(self.rows)


def _lll(rows: Sequence[Sequence[int]], delta=Fraction(3, 4)) -> list[list[int]]:
    """Exact LLL reduction of an integer basis (internal size reduction)."""
    b = [list(r) for r in rows]
    n = len(b)
    if n == 2:
        return _lagrange(b[0], b[1])

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gso():
        bstar, mu, B = [], [[Fraction(0)] * n for _ in range(n)], []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bstar[j])) / B[j] if B[j] else Fraction(0)
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            B.append(dot(v, v))
        return mu, B

    mu, B = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, B = gso()
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, B = gso()
            k = max(k - 1, 1)
    return b


def _lagrange(u, v) -> list[list[int]]:
    def n2(w):
        return w[0] * w[0] + w[1] * w[1]
    nu, nv = n2(u), n2(v)
    if nu > nv:
        u, v, nu, nv = v, u, nv, nu
    while True:
        d = u[0] * v[0] + u[1] * v[1]
        q = (2 * d + nu) // (2 * nu)      # round(d / nu)
        if q:
            v = [v[0] - q * u[0], v[1] - q * u[1]]
            nv = n2(v)
        if nv >= nu:
            return [u, v]
        u, v, nu, nv = v, u, nv, nu


def _box_points(H: Sequence[Sequence[int]], W: int) -> Iterator[tuple[int, ...]]:
    """All nonzero points ``c @ H`` with sup norm at most ``W`` (H upper triangular)."""
    k = len(H)
    diag = [H[i][i] for i in range(k)]

    def rec(j, partial):
        s = partial[j]
        h = diag[j]
        lo = -((W + s) // h)
        hi = (W - s) // h
        row = H[j]
        if j == k - 1:
            for c in range(lo, hi + 1):
                yield partial[:j] + [s + c * h]
            return
        for c in range(lo, hi + 1):
            if c:
                nxt = partial[:j] + [s + c * h] + [p + c * r for p, r in zip(partial[j + 1:], row[j + 1:])]
            else:
                nxt = partial
            yield from rec(j + 1, nxt)

    for w in rec(0, [0] * k):
        if any(w):
            yield tuple(w)


def _sup_radius(g: Gauge, u) -> int:
    """Integer W with g(w) <= u implying max|w_i| <= W."""
    R = Fraction(g.circumradius)
    if g.exp == 1:
        return math.floor(R * u)
    return math.isqrt(math.floor(R * R * u))


def _raw_scale(g: Gauge, s: Fraction) -> Fraction:
    return s if g.exp == 1 else s * s


def _enumerate_int(H, g: Gauge, u) -> list[tuple]:
    """Nonzero integer-lattice points with raw gauge at most ``u``, sorted."""
    W = _sup_radius(g, u)
    out = []
    value = g.value
    for w in _box_points(H, W):
        val = value(w)
        if val <= u:
            out.append((val, w))
    out.sort()
    return out


def enumerate_below(L: Lattice, g: Gauge, bound: GaugeValue) -> list[tuple[tuple, GaugeValue]]:
    """Every nonzero point of ``L`` with gauge at most ``bound``."""
    if bound.exp != g.exp:
        bound = GaugeValue(bound.squared(), 2) if g.exp == 2 else None
        if bound is None:
            raise ValueError("cannot compare squared bound against a linear gauge")
    s = L.scalar
    u = bound.value / _raw_scale(g, s)
    return [(tuple(s * c for c in w), GaugeValue(val * _raw_scale(g, s), g.exp))
            for val, w in _enumerate_int(L.hnf, g, u)]


def _int_minima(H, g: Gauge, count: int) -> tuple[list, list]:
    """Raw successive minima of the integer lattice with basis ``H`` (HNF)."""
    red = _lll(H)
    vals = sorted(g.value(b) for b in red)
    u = vals[count - 1]
    span = _Span()
    lams, wits = [], []
    for val, w in _enumerate_int(H, g, u):
        if span.add(w):
            lams.append(val)
            wits.append(w)
            if len(span) == count:
                break
    if len(lams) != count:
        raise IdentityViolation("enumeration bound failed to yield independent points")
    return lams, wits


def successive_minima(L: Lattice, g: Gauge, count: int | None = None) -> MinimaReport:
    """lambda_1..lambda_count of ``L`` under ``g`` with independent witnesses."""
    if g.dim != L.dim:
        raise ValueError("gauge and lattice dimensions differ")
    k = L.dim
    count = k if count is None else count
    if not 1 <= count <= k:
        raise ValueError("count must lie in 1..dim")
    raw, wits = _int_minima(L.hnf, g, count)
    s = L.scalar
    rs = _raw_scale(g, s)
    lambdas = [GaugeValue(v * rs, g.exp) for v in raw]
    witnesses = [tuple(s * c for c in w) for w in wits]
    det = L.det
    ratio = None
    if count == k:
        prod = GaugeValue(1, g.exp)
        for lam in lambdas:
            prod = prod * lam
        ratio = prod / det
    ratio1k = (lambdas[0] ** k) / det
    return MinimaReport(lambdas, witnesses, det, ratio, ratio1k)


def target_hnf(n: Sequence[int]) -> list[list[int]]:
    """HNF of the integer lattice n_{k+1} * Lambda(n), from its generators."""
    N = n[-1]
    k = len(n) - 1
    gens = [list(n[:-1])] + [[N if i == j else 0 for j in range(k)] for i in range(k)]
    return hnf(gens)


def target_minima(n: Sequence[int], g: Gauge, count: int | None = None) -> MinimaReport:
    """Successive minima of Lambda(n) (fast path used by the sweeps)."""
    H = target_hnf(n)
    L = Lattice(len(n) - 1, Fraction(1, n[-1]), tuple(tuple(r) for r in H))
    return successive_minima(L, g, count)


@dataclass(frozen=True)
class ConstrainedProblem:
    x: tuple[Fraction, ...]
    Q: Fraction
    gauge: Gauge

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(Fraction(c) for c in self.x))
        object.__setattr__(self, "Q", Fraction(self.Q))
        if self.Q < 1:
            raise ValueError("Q must be at least 1")
        if len(self.x) != self.gauge.dim:
            raise ValueError("x and gauge dimensions differ")


def constrained_minima(problem: ConstrainedProblem, count: int = 1) -> MinimaReport:
    """Minima of g(p_{k+1} x - (p_1..p_k)) over p in Z^{k+1} with |p_{k+1}| <= Q."""
    x, g = problem.x, problem.gauge
    k = len(x)
    if not 1 <= count <= k:
        raise ValueError("count must lie in 1..k")
    Q = math.floor(problem.Q)
    # p = (e_i, 0) gives k independent vectors
    u = sorted(g.value([int(i == j) for j in range(k)]) for i in range(k))[count - 1]
    W = Fraction(g.circumradius) * (u if g.exp == 1 else Fraction(math.isqrt(math.ceil(u)) + 1))
    cands = []
    for q in range(-Q, Q + 1):
        ranges = [range(math.ceil(q * xi - W), math.floor(q * xi + W) + 1) for xi in x]
        for pp in itertools.product(*ranges):
            if q == 0 and not any(pp):
                continue
            pt = [q * xi - pi for xi, pi in zip(x, pp)]
            val = g.value(pt)
            if val <= u:
                cands.append((val, pp + (q,)))
    cands.sort()
    span = _Span()
    lams, wits = [], []
    for val, p in cands:
        if span.add(p):
            lams.append(GaugeValue(val, g.exp))
            wits.append(p)
            if len(span) == count:
                break
    return MinimaReport(lams, wits)


def iter_targets(k: int, N: int, strict: bool = False) -> Iterator[tuple[int, ...]]:
    """U^{k+1} members with last entry at most N, ordered by last entry."""
    for top in range(1, N + 1):
        pool = range(1, top) if strict else range(1, top + 1)
        combos = itertools.combinations(pool, k) if strict else \
            itertools.combinations_with_replacement(pool, k)
        for head in combos:
            if math.gcd(top, *head) == 1:
                yield head + (top,)


@dataclass
class SweepResult:
    max_ratio: GaugeValue
    argmax: tuple[int, ...]
    table: list[tuple[tuple[int, ...], GaugeValue]]

    def csv_rows(self) -> Iterator[list[str]]:
        for n, r in self.table:
            yield [str(c) for c in n] + [str(r.value.numerator), str(r.value.denominator), str(r.exp)]


def _sweep_chunk(args):
    k, gauge, top, mode = args
    strict = gauge == "mn"
    rows = []
    for n in iter_targets(k, top, strict=strict):
        if n[-1] != top:
            continue
        rows.append((n, target_ratio(n, gauge, mode)))
    return rows


def target_ratio(n, gauge, mode: str) -> GaugeValue:
    g = BodyOfN(tuple(n)) if gauge == "mn" else gauge
    k = len(n) - 1
    H = target_hnf(n)
    N = n[-1]
    if mode == "product":
        raw, _ = _int_minima(H, g, k)
    elif mode == "first_power":
        raw, _ = _int_minima(H, g, 1)
        raw = [raw[0]] * k
    else:
        raise ValueError(f"unknown mode {mode!r}")
    # lambda_i = raw_i / N (or raw_i / N^2 squared); det = 1/N
    prod = Fraction(1)
    for v in raw:
        prod *= v
    if g.exp == 1:
        return GaugeValue(prod / Fraction(N) ** (k - 1), 1)
    return GaugeValue(prod / Fraction(N) ** (2 * k - 2), 2)


def sweep_ratio(k: int, gauge, N: int, mode: str = "product", workers: int = 1) -> SweepResult:
    """Exact sup of the minima ratio over U^{k+1} with n_{k+1} <= N.

    ``mode="product"`` uses lambda_1...lambda_k / det, ``"first_power"`` uses
    lambda_1^k / det.  ``gauge`` may be the string ``"mn"`` for the
    target-dependent body (strictly ordered targets only).
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    jobs = [(k, gauge, top, mode) for top in range(1, N + 1)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            chunks = list(ex.map(_sweep_chunk, jobs, chunksize=4))
    else:
        chunks = [_sweep_chunk(j) for j in jobs]
    table = [row for chunk in chunks for row in chunk]
    table.sort(key=lambda row: row[0][::-1])
    if not table:
        raise ValueError("no targets in range")
    # ties go to the larger height, then to the lexicographically smaller head
    best_n, best = max(table, key=lambda row: (row[1].squared(), row[0][-1], [-x for x in row[0]]))
    if mode == "product" and isinstance(gauge, Euclid) and k == 2:
        bad = [n for n, r in table if not r.value < Fraction(4, 3)]
        if bad:
            raise IdentityViolation(f"squared ratio reaches 4/3 at {bad[0]}")
    return SweepResult(best, best_n, table)


def convergence_check(seq: Iterable[Lattice], limit: Lattice, g: Gauge,
                      count: int | None = None) -> list[list[Fraction]]:
    """|lambda_i(g, L_t) - lambda_i(g, L)| per lattice (raw values for exp 2)."""
    ref = successive_minima(limit, g, count).lambdas
    table = []
    for L in seq:
        lams = successive_minima(L, g, count).lambdas
        table.append([abs(a.value - b.value) for a, b in zip(lams, ref)])
    return table
