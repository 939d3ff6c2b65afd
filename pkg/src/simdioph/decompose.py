"""Decompositions n = u p + v q of integer vectors into pairs of small height.

Height ``h`` is the sup norm.  Ratios ``h(p) h(q) / h(n)^(1 - 1/k)`` are never
formed as reals: they are compared through their k-th powers
``(h(p) h(q))^k / h(n)^(k-1)``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bodies import BodyOfN, GaugeValue, Honeycomb, SupNorm, honeycomb_critical_basis, polygon_pi
from .construct import ConstructionPoint, Rejected, n_of_t, prepare
from .exact import IdentityViolation, fmt_q, gcd_vector, rank, solve_congruences
from .lattice import Lattice, point_to_m, validate_target
from .minima import successive_minima, target_minima


def height(v: Sequence[int]) -> int:
    return max(abs(x) for x in v)


@dataclass(frozen=True)
class Decomposition:
    n: tuple[int, ...]
    p: tuple[int, ...]
    q: tuple[int, ...]
    u: int
    v: int

    def __post_init__(self):
        if tuple(self.u * a + self.v * b for a, b in zip(self.p, self.q)) != self.n:
            raise IdentityViolation(f"{self.n} != {self.u}*{self.p} + {self.v}*{self.q}")
        if rank([self.p, self.q]) != 2:
            raise IdentityViolation("p and q are dependent")

    @property
    def k(self) -> int:
        return len(self.n) - 1

    @property
    def product(self) -> int:
        return height(self.p) * height(self.q)

    def ratio_power(self) -> Fraction:
        """ratio^k = product^k / h(n)^(k-1)."""
        return Fraction(self.product ** self.k, height(self.n) ** (self.k - 1))

    def ratio_approx(self) -> float:
        return float(self.ratio_power()) ** (1 / self.k)

    def to_json(self) -> dict:
        return {"n": list(self.n), "p": list(self.p), "q": list(self.q), "u": self.u, "v": self.v,
                "product": self.product, "height": height(self.n),
                "ratio_pow_k": fmt_q(self.ratio_power()), "k": self.k,
                "ratio_approx": f"~{self.ratio_approx():.6f}"}


def trivial_decomposition(n: Sequence[int]) -> Decomposition:
    n = tuple(int(x) for x in n)
    c = gcd_vector(n)
    if c == 0:
        raise ValueError("n must be nonzero")
    p = tuple(x // c for x in n)
    j = min(range(len(n)), key=lambda i: abs(p[i]))   # a unit vector independent of p
    if len(n) < 2 or all(x == 0 for i, x in enumerate(p) if i != j):
        raise ValueError("n needs at least two coordinates")
    q = tuple(int(i == j) for i in range(len(n)))
    return Decomposition(n, p, q, c, 0)


def _best_shift(a, b) -> int:
    """Integer mu minimizing h(b - mu a); the map is convex in mu."""
    R = 2 * height(b) // height(a) + 1
    lo, hi = -R, R
    while lo < hi:
        mid = (lo + hi) // 2
        if height([y - (mid + 1) * x for x, y in zip(a, b)]) >= height([y - mid * x for x, y in zip(a, b)]):
            hi = mid
        else:
            lo = mid + 1
    return lo


def reduce_pair(a: Sequence[int], b: Sequence[int]) -> tuple[tuple, tuple]:
    """Gauss reduction of the plane lattice Za + Zb in the sup norm.

    In two dimensions the reduced pair realizes both successive minima for
    any norm, so h(a) h(b) is minimal among bases of Za + Zb.
    """
    a, b = tuple(a), tuple(b)
    if height(a) > height(b):
        a, b = b, a
    while True:
        mu = _best_shift(a, b)
        b = tuple(y - mu * x for x, y in zip(a, b))
        if height(b) >= height(a):
            return a, b
        a, b = b, a


def _express(n, p, q) -> Decomposition | None:
    """n = u p + v q with integers u, v, if possible."""
    for i, j in itertools.combinations(range(len(n)), 2):
        D = p[i] * q[j] - p[j] * q[i]
        if D:
            u = Fraction(n[i] * q[j] - n[j] * q[i], D)
            v = Fraction(p[i] * n[j] - p[j] * n[i], D)
            if u.denominator == v.denominator == 1 and \
                    all(u * a + v * b == c for a, b, c in zip(p, q, n)):
                return Decomposition(tuple(n), tuple(p), tuple(q), int(u), int(v))
            return None
    return None


def heuristic_decomposition(n: Sequence[int]) -> Decomposition:
    """Upper-bound companion: reduce the plane of n and a short point of Lambda(n).

    For each sup-norm minimum v of Lambda(n) the integer vector m mapping to v
    spans a plane with n; a reduced basis of Zm + Zn gives a candidate pair.
    Falls back to the trivial decomposition when n is not a valid target.
    """
    n = tuple(int(x) for x in n)
    best = trivial_decomposition(n)
    try:
        validate_target(n, ordered=False)
    except ValueError:
        return best
    if len(n) < 3 or sum(1 for x in n if x) < 2:
        return best
    for v in target_minima(n, SupNorm(len(n) - 1)).witnesses:
        m = point_to_m(n, v)
        if rank([m, n]) < 2:
            continue
        p, q = reduce_pair(m, n)
        d = _express(n, p, q)
        if d is not None and d.product < best.product:
            best = d
    return best


def _divisors(D: int) -> list[int]:
    small, large = [], []
    for a in range(1, math.isqrt(D) + 1):
        if D % a == 0:
            small.append(a)
            if a != D // a:
                large.append(D // a)
    return small + large[::-1]


def brute_force_decomposition(n: Sequence[int], product_cap: int | None = None) -> Decomposition:
    """Exhaustive minimum of h(p) h(q) over decompositions of n.

    Enumerates the smaller-height member p (h(p)^2 <= current best).  For fixed
    p, every q has the form (n - u p)/c where c divides the 2x2 minors of
    (n, p); for each divisor c the admissible u form a residue class and an
    interval, both exact.  Returns the trivial decomposition if nothing beats
    it (or ``product_cap``).
    """
    n = tuple(int(x) for x in n)
    if not any(n):
        raise ValueError("n must be nonzero")
    if product_cap is not None and product_cap < 1:
        raise ValueError("product cap must be at least 1")
    best = heuristic_decomposition(n)
    K = len(n)
    r = math.isqrt(best.product)
    for p in itertools.product(range(-r, r + 1), repeat=K):
        nz = next((x for x in p if x), 0)
        if nz <= 0:
            continue    # p and -p give the same candidates
        hp = height(p)
        if hp * hp > best.product:
            continue
        D = gcd_vector([n[i] * p[j] - n[j] * p[i] for i, j in itertools.combinations(range(K), 2)])
        if D == 0:
            continue
        for c in _divisors(D):
            sol = solve_congruences(p, n, c)
            if sol is None:
                continue
            u0, step = sol
            # need h(n - u p) < c * best / h(p)
            bound = Fraction(c * best.product, hp)
            lo, hi = -math.inf, math.inf
            feasible = True
            for pi, ni in zip(p, n):
                if pi == 0:
                    feasible &= abs(ni) < bound
                    continue
                a, b = (ni - bound) / pi, (ni + bound) / pi
                a, b = min(a, b), max(a, b)
                lo, hi = max(lo, math.floor(a) + 1), min(hi, math.ceil(b) - 1)
            if not feasible or lo > hi:
                continue
            u = lo + (u0 - lo) % step
            while u <= hi:
                w = [ni - u * pi for ni, pi in zip(n, p)]
                g = gcd_vector(w)
                q = tuple(x // g for x in w)
                if hp * height(q) < best.product:
                    best = Decomposition(n, p, q, u, g)
                u += step
    if product_cap is not None and best.product > product_cap:
        return trivial_decomposition(n)
    return best


def c0_bound_power(k: int) -> Fraction:
    """(2 / (k+1)^(1/k))^k."""
    return Fraction(2 ** k, k + 1)


def iter_canonical(k: int, N: int, min_height: int = 1):
    """Primitive 0 <= n_1 <= ... <= n_{k+1} with min_height <= n_{k+1} <= N.

    Height and decompositions are invariant under signed coordinate
    permutations, so these representatives cover every primitive vector.
    """
    for top in range(max(1, min_height), N + 1):
        for head in itertools.combinations_with_replacement(range(top + 1), k):
            if math.gcd(top, *head) == 1:
                yield head + (top,)


@dataclass
class C0Result:
    max_power: Fraction
    argmax: tuple[int, ...]
    table: list[Decomposition]

    def csv_rows(self):
        for d in self.table:
            r = d.ratio_power()
            yield [*map(str, d.n), str(d.product), str(r.numerator), str(r.denominator), str(d.k)]


def c0_sweep(k: int, N: int, min_height: int = 1) -> C0Result:
    """Brute-force inf-ratio for every canonical primitive n with height in range."""
    if k < 1 or N < 1:
        raise ValueError("k and N must be positive")
    limit = c0_bound_power(k)
    table = []
    for n in iter_canonical(k, N, min_height):
        d = brute_force_decomposition(n)
        if d.ratio_power() > limit:
            raise IdentityViolation(f"ratio^{k} = {d.ratio_power()} > {limit} at n={n}")
        table.append(d)
    if not table:
        raise ValueError("no vectors in range")
    top = max(table, key=lambda d: d.ratio_power())
    return C0Result(top.ratio_power(), top.n, table)


@dataclass(frozen=True)
class DecompCertificate:
    n: tuple[int, ...]
    f_min: GaugeValue
    witness: tuple
    bound_power: Fraction       # (n_{k+1}^(1/k) f_min / 2)^k

    @property
    def k(self) -> int:
        return len(self.n) - 1

    def holds_for(self, d: Decomposition) -> bool:
        return self.bound_power <= d.ratio_power()

    def exceeds_eps_threshold(self, eps) -> bool:
        """f_min^k > (1-eps)^k 2^k / ((k+1) n_{k+1})."""
        k, eps = self.k, Fraction(eps)
        return self.f_min.value ** k > (1 - eps) ** k * 2 ** k / ((k + 1) * self.n[-1])

    def to_json(self) -> dict:
        return {"n": list(self.n), "f_min": self.f_min.to_json(),
                "witness": [fmt_q(x) for x in self.witness],
                "bound_pow_k": fmt_q(self.bound_power), "k": self.k}


def certify_lower_bound(n: Sequence[int]) -> DecompCertificate:
    """Lower bound on every decomposition ratio from the minimum of f_n on Lambda(n)."""
    n = validate_target(n, strict=True)
    k = len(n) - 1
    rep = target_minima(n, BodyOfN(n), 1)
    f = rep.lambdas[0]
    return DecompCertificate(n, f, tuple(rep.witnesses[0]), n[-1] * f.value ** k / 2 ** k)


def random_strict_target(k: int, delta: Fraction, rng: random.Random, top=(200, 2000)) -> tuple[int, ...]:
    """Strictly increasing primitive n with all ratios in (1 - delta, 1)."""
    while True:
        N = rng.randint(*top)
        lo = math.floor((1 - delta) * N) + 1
        if N - lo < k:
            continue
        head = sorted(rng.sample(range(lo, N), k))
        n = tuple(head) + (N,)
        if gcd_vector(n) == 1:
            return n


def honeycomb_domination_spot_check(k: int, eps, delta, samples: int, rng: random.Random) -> bool:
    """f_n(x) > (1 - eps/2) g_k(x) on random n inside (1-delta, 1) and random x."""
    eps, delta = Fraction(eps), Fraction(delta)
    g = Honeycomb(k)
    for _ in range(samples):
        f = BodyOfN(random_strict_target(k, delta, rng))
        x = [Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(k)]
        if not any(x):
            continue
        if not f.value(x) > (1 - eps / 2) * g.value(x):
            return False
    return True


def choose_delta(k: int, eps, samples: int = 200, seed: int = 0, max_halvings: int = 8) -> Fraction:
    rng = random.Random(seed)
    delta = Fraction(1, 4)
    for _ in range(max_halvings):
        if honeycomb_domination_spot_check(k, eps, delta, samples, rng):
            return delta
        delta /= 2
    raise LookupError(f"no delta down to {delta * 2} passed the spot checks")


def worstcase_alphas(k: int, delta: Fraction) -> list[Fraction]:
    """Strictly increasing rationals inside (1 - delta, 1)."""
    return [1 - delta * (k + 1 - i) / (k + 1) for i in range(1, k + 1)]


@dataclass
class PipelinePoint:
    point: ConstructionPoint
    certificate: DecompCertificate
    delta: Fraction

    def to_json(self) -> dict:
        out = self.point.to_json()
        out["certificate"] = self.certificate.to_json()
        out["delta"] = fmt_q(self.delta)
        return out


def worstcase_sequence(k: int, eps, count: int, *, seed: int = 0, t_limit: int = 200,
                       tvec_box: int = 3, samples: int = 200,
                       allow_k2: bool = False) -> list[PipelinePoint]:
    """Points n(t) near the honeycomb critical lattice that pass the exact eps threshold check.

    k = 2 is only an experiment (``allow_k2``); nothing guarantees points exist there.
    """
    eps = Fraction(eps)
    if k < 2 or (k == 2 and not allow_k2):
        raise ValueError("the worst-case construction needs k >= 3 (k = 2 only with allow_k2)")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    delta = choose_delta(k, eps, samples, seed)
    params = prepare(honeycomb_critical_basis(k), worstcase_alphas(k, delta))
    out: list[PipelinePoint] = []
    for tvec in itertools.product(range(tvec_box + 1), repeat=k):
        for t in range(1, t_limit + 1):
            try:
                point = n_of_t(params, t, tvec)
            except Rejected:
                continue
            n = point.n
            if len(set(n)) != len(n) or not all(1 - delta < a < 1 for a in point.alpha_t):
                continue
            if height(n) != n[-1]:
                raise IdentityViolation(f"h(n) != n_(k+1) for {n}")
            cert = certify_lower_bound(n)
            if cert.exceeds_eps_threshold(eps):
                out.append(PipelinePoint(point, cert, delta))
                if len(out) == count:
                    return out
        if out:
            break
    if len(out) < count:
        raise LookupError(f"only {len(out)} of {count} points found (t <= {t_limit}, box {tvec_box})")
    return out


@dataclass
class ChainReport:
    m: tuple[int, ...]
    n: tuple[int, ...]
    lambdas: list[GaugeValue]
    area: Fraction

    @property
    def product(self) -> Fraction:
        return self.lambdas[0].value * self.lambdas[1].value

    @property
    def holds(self) -> bool:
        return self.product >= 2 / self.area

    def to_json(self) -> dict:
        return {"m": list(self.m), "n": list(self.n),
                "lambdas": [fmt_q(x.value) for x in self.lambdas],
                "area": fmt_q(self.area), "product": fmt_q(self.product), "holds": self.holds}


def minkowski_chain_check(m: Sequence[int], n: Sequence[int]) -> ChainReport:
    """lambda_1 lambda_2 of Pi(m, n) on Z^2 against 2 / area(Pi)."""
    poly = polygon_pi(m, n)
    rep = successive_minima(Lattice.from_basis([[1, 0], [0, 1]]), poly.gauge(), 2)
    report = ChainReport(poly.m, poly.n, rep.lambdas, poly.area)
    if not report.holds:
        raise IdentityViolation(f"lambda_1 lambda_2 = {report.product} < 2/{poly.area}")
    return report
