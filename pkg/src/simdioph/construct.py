"""Integer vectors n(t) whose lattices Lambda(n(t)), rescaled by d*t, converge
to a prescribed rational lattice with prescribed limit ratios alpha_i.

The vector n(t) is the generalized cross product of the k x (k+1) integer
matrix M(t, t_1..t_k) whose first k columns are ``d t B* + diag(t_i)`` and
whose last column is ``-d t B* alpha``.
"""

from __future__ import annotations

import itertools
import logging
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bodies import Gauge
from .exact import (
    IdentityViolation,
    det,
    fmt_q,
    gcd_vector,
    inverse,
    lcm_denominators,
    minors_omit_column,
    transpose,
)
from .lattice import Lattice, lattice_equal, lattice_from_n, scale
from .minima import convergence_check

log = logging.getLogger(__name__)


class Rejected(ValueError):
    """n(t) failed primitivity or ordering; the scan moves on."""

    def __init__(self, reason: str, n):
        super().__init__(f"{reason}: n={list(n)}")
        self.reason = reason
        self.n = n


@dataclass(frozen=True)
class SequenceParams:
    B: tuple[tuple[Fraction, ...], ...]
    alphas: tuple[Fraction, ...]
    d: int
    Bstar: tuple[tuple[Fraction, ...], ...]
    last: tuple[Fraction, ...]      # sum_l alpha_l b*_{il}
    sign: int                       # orientation of the last column of M

    @property
    def k(self) -> int:
        return len(self.B)

    def direction_matrix(self) -> list[list[Fraction]]:
        """(b*_ij | s * sum_l alpha_l b*_il), the leading part of M."""
        return [list(row) + [self.sign * c] for row, c in zip(self.Bstar, self.last)]


def prepare(B: Sequence[Sequence], alphas: Sequence) -> SequenceParams:
    B = tuple(tuple(Fraction(x) for x in row) for row in B)
    alphas = tuple(Fraction(a) for a in alphas)
    k = len(B)
    if any(len(row) != k for row in B) or len(alphas) != k:
        raise ValueError("B must be k x k and there must be k alphas")
    if not (0 < alphas[0] and all(a <= b for a, b in zip(alphas, alphas[1:])) and alphas[-1] <= 1):
        raise ValueError("alphas must satisfy 0 < a_1 <= ... <= a_k <= 1")
    if det(B) == 0:
        raise ValueError("B is singular")
    Bstar = tuple(tuple(r) for r in transpose(inverse(B)))
    last = tuple(sum(a * b for a, b in zip(alphas, row)) for row in Bstar)
    entries = [x for row in B for x in row] + [x for row in Bstar for x in row] + list(last)
    entries += [a * row[j] for row in B for j, a in enumerate(alphas)]
    entries += [a * row[j] for row in Bstar for j, a in enumerate(alphas)]
    d = lcm_denominators(entries)
    sign = _orientation(Bstar, last, d)
    return SequenceParams(B, alphas, d, Bstar, last, sign)


def _orientation(Bstar, last, d) -> int:
    for s in (1, -1):
        rows = [[int(d * x) for x in row] + [int(s * d * c)] for row, c in zip(Bstar, last)]
        _, cross = minors_omit_column(rows)
        if cross[-1] < 0:
            cross = [-c for c in cross]
        if all(c > 0 for c in cross):
            return s
    raise IdentityViolation("no orientation of the last column gives a positive vector")


def build_M(params: SequenceParams, t: int, tvec: Sequence[int]) -> list[list[int]]:
    if t < 1:
        raise ValueError("t must be positive")
    k = params.k
    out = []
    for i, row in enumerate(params.direction_matrix()):
        entries = [params.d * x * t for x in row]
        entries[i] += tvec[i]
        if any(Fraction(e).denominator != 1 for e in entries):
            raise IdentityViolation(f"d={params.d} does not clear row {i} of M")
        out.append([int(e) for e in entries])
    assert len(out) == k
    return out


@dataclass
class ConstructionPoint:
    t: int
    tvec: tuple[int, ...]
    M: list[list[int]]
    n: tuple[int, ...]
    a_star_basis: list[list[int]]
    a_basis: list[list[Fraction]]
    alpha_t: list[Fraction]

    @property
    def lattice(self) -> Lattice:
        return Lattice.from_basis(self.a_basis)

    def to_json(self, errors: dict | None = None) -> dict:
        out = {"t": self.t, "tvec": list(self.tvec), "n": list(self.n),
               "ratios": [fmt_q(a) for a in self.alpha_t]}
        if errors is not None:
            out["errors"] = {key: fmt_q(v) for key, v in errors.items()}
        return out


def n_of_t(params: SequenceParams, t: int, tvec: Sequence[int]) -> ConstructionPoint:
    """Signed maximal minors of M, normalized to a positive last entry.

    Raises :class:`Rejected` unless n is primitive and 0 < n_1 <= ... <= n_{k+1}.
    """
    tvec = tuple(int(x) for x in tvec)
    M = build_M(params, t, tvec)
    _, cross = minors_omit_column(M)
    if cross[-1] < 0:
        cross = [-c for c in cross]
    n = tuple(cross)
    if any(sum(a * b for a, b in zip(row, n)) for row in M):
        raise IdentityViolation("n(t) is not orthogonal to the rows of M")
    if gcd_vector(n) != 1:
        raise Rejected(f"gcd {gcd_vector(n)}", n)
    if n[0] <= 0 or any(a > b for a, b in zip(n, n[1:])):
        raise Rejected("ordering", n)
    k = params.k
    a_star = [row[:k] for row in M]
    a_basis = transpose(inverse(a_star))
    point = ConstructionPoint(t, tvec, M, n, a_star, a_basis,
                              [Fraction(x, n[-1]) for x in n[:-1]])
    if not lattice_equal(point.lattice, lattice_from_n(n)):
        raise IdentityViolation(f"polar of the rows of M is not Lambda({n})")
    return point


def is_arithmetic_progression(ts: Sequence[int]) -> bool:
    return len(ts) < 3 or len({b - a for a, b in zip(ts, ts[1:])}) == 1


def find_admissible(params: SequenceParams, count: int, t_limit: int, tvec_box: int,
                    t_values: Iterable[int] | None = None) -> list[ConstructionPoint]:
    """First ``count`` accepted points sharing one tvec, increasing in t.

    tvec runs lexicographically over {0..tvec_box}^k; for each, t runs over
    ``t_values`` (default 1..t_limit).
    """
    if count <= 0:
        return []
    if t_limit < 1 or tvec_box < 0:
        raise ValueError("limits must be positive")
    ts = sorted(t_values) if t_values is not None else range(1, t_limit + 1)
    scanned = rejected = 0
    for tvec in itertools.product(range(tvec_box + 1), repeat=params.k):
        found = []
        for t in ts:
            scanned += 1
            try:
                found.append(n_of_t(params, t, tvec))
            except Rejected:
                rejected += 1
                continue
            if len(found) == count:
                accepted = [p.t for p in found]
                log.info("tvec=%s accepted t=%s (arithmetic progression: %s)",
                         tvec, accepted, is_arithmetic_progression(accepted))
                return found
    raise LookupError(f"no tvec in box {tvec_box} gave {count} points "
                      f"({scanned} candidates scanned, {rejected} rejected)")


def doubling_ladder(points: Sequence[ConstructionPoint]) -> list[ConstructionPoint]:
    """Greedy subsequence whose t-values at least double at each step."""
    out = []
    for p in sorted(points, key=lambda p: p.t):
        if not out or p.t >= 2 * out[-1].t:
            out.append(p)
    return out


@dataclass
class AsymptoticsTable:
    rows: list[dict]                # t, e2, e3, e4
    bounded: dict[str, bool]

    def to_json(self) -> dict:
        return {"rows": [{k: (fmt_q(v) if k != "t" else v) for k, v in r.items()} for r in self.rows],
                "bounded": self.bounded}


def point_errors(params: SequenceParams, p: ConstructionPoint) -> dict[str, Fraction]:
    """t-scaled deviations from the leading asymptotics of a_ij, n_{k+1}, alpha_i."""
    t, d, k = p.t, params.d, params.k
    e2 = max(abs(d * t * p.a_basis[i][j] - params.B[i][j]) for i in range(k) for j in range(k)) * t
    detB = abs(det(params.B))
    e3 = abs(Fraction(p.n[-1]) * detB / (d * t) ** k - 1) * t
    e4 = max(abs(a - b) for a, b in zip(p.alpha_t, params.alphas)) * t
    return {"e2": e2, "e3": e3, "e4": e4}


def verify_asymptotics(params: SequenceParams, points: Sequence[ConstructionPoint],
                       slack: int = 4) -> AsymptoticsTable:
    """Each error column counts as bounded when its max is within ``slack`` times its median."""
    if len(points) < 2:
        raise ValueError("need at least two points")
    ts = [p.t for p in points]
    if any(a >= b for a, b in zip(ts, ts[1:])):
        raise ValueError("points must have increasing t")
    rows = [{"t": p.t, **point_errors(params, p)} for p in points]
    bounded = {}
    for key in ("e2", "e3", "e4"):
        col = [r[key] for r in rows]
        bounded[key] = max(col) <= slack * statistics.median(col)
    return AsymptoticsTable(rows, bounded)


def _poly_coeffs(xs: Sequence[int], ys: Sequence) -> list[Fraction]:
    """Coefficients (constant first) of the interpolating polynomial."""
    V = [[Fraction(x) ** j for j in range(len(xs))] for x in xs]
    Vi = inverse(V)
    return [sum(Vi[i][j] * ys[j] for j in range(len(xs))) for i in range(len(xs))]


def identity_checks(params: SequenceParams, tvec: Sequence[int]) -> dict[str, bool]:
    """Exact checks of the minor identities behind the construction.

    * ``last_minor``: |B*_{k+1}| = |det(b*_ij)| != 0
    * ``ratio_minors``: |B*_i| = alpha_i |B*_{k+1}|
    * ``leading_minors``: M_i(T) has degree <= k and T^k coefficient d^k B*_i
    * ``leading_cofactors``: minors of A*(T) have T^{k-1} coefficient d^{k-1} B*_ij
    """
    k, d = params.k, params.d
    Bs, _ = minors_omit_column(params.direction_matrix())
    detBstar = det([list(r) for r in params.Bstar])
    out = {
        "last_minor": abs(Bs[-1]) == abs(detBstar) != 0,
        "ratio_minors": all(abs(Bs[i]) == params.alphas[i] * abs(Bs[-1]) for i in range(k)),
    }
    xs = list(range(1, k + 3))
    samples = [minors_omit_column(build_M(params, T, tvec))[0] for T in xs]
    ok = True
    for i in range(k + 1):
        c = _poly_coeffs(xs, [s[i] for s in samples])
        ok &= c[k + 1] == 0 and c[k] == d ** k * Bs[i]
    out["leading_minors"] = ok

    def cofactor(A, i, j):
        return det([[x for c, x in enumerate(row) if c != j] for r, row in enumerate(A) if r != i])

    if k >= 2:
        xs = list(range(1, k + 2))
        mats = [[row[:k] for row in build_M(params, T, tvec)] for T in xs]
        ok = True
        for i in range(k):
            for j in range(k):
                c = _poly_coeffs(xs, [cofactor(A, i, j) for A in mats])
                ok &= c[k] == 0 and c[k - 1] == d ** (k - 1) * cofactor(params.Bstar, i, j)
        out["leading_cofactors"] = ok
    return out


def convergence_along(params: SequenceParams, points: Sequence[ConstructionPoint], g: Gauge,
                      count: int = 1) -> list[Fraction]:
    """|lambda_1(g, d t Lambda(n(t))) - lambda_1(g, Lambda)| along the points."""
    limit = Lattice.from_basis(params.B)
    seq = [scale(p.lattice, params.d * p.t) for p in points]
    return [row[count - 1] for row in convergence_check(seq, limit, g, count)]


def count_violations(seq: Sequence) -> int:
    """Number of places where a sequence fails to decrease."""
    return sum(1 for a, b in zip(seq, seq[1:]) if b > a)
