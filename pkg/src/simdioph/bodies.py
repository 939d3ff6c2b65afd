"""Distance functions (gauges) of the star bodies used throughout.

Every gauge is evaluated exactly.  The Euclidean gauge is carried squared
(``exp == 2``) so that no square roots are ever taken.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import fmt_q, gcd_vector, rank
from .lattice import validate_target


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class GaugeValue:
    """``value ** (1/exp)``; comparisons are exact via squaring."""
    value: Fraction
    exp: int = 1

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.exp not in (1, 2):
            raise ValueError("exponent must be 1 or 2")
        if self.value < 0:
            raise ValueError("gauge values are non-negative")

    def squared(self) -> Fraction:
        return self.value * self.value if self.exp == 1 else self.value

    def __eq__(self, other):
        if not isinstance(other, GaugeValue):
            return NotImplemented
        return self.squared() == other.squared()

    def __lt__(self, other):
        if not isinstance(other, GaugeValue):
            return NotImplemented
        return self.squared() < other.squared()

    def __hash__(self):
        return hash(self.squared())

    def __mul__(self, other):
        if isinstance(other, GaugeValue):
            if self.exp == other.exp:
                return GaugeValue(self.value * other.value, self.exp)
            return GaugeValue(self.squared() * other.squared(), 2)
        return self.scaled(other)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.scaled(1 / Fraction(c))

    def __pow__(self, e: int):
        return GaugeValue(self.value ** e, self.exp)

    def scaled(self, c) -> "GaugeValue":
        c = abs(Fraction(c))
        return GaugeValue(self.value * (c if self.exp == 1 else c * c), self.exp)

    def __float__(self):
        return float(self.value) ** (1 / self.exp)

    def to_json(self) -> dict:
        return {"value": fmt_q(self.value), "exp": self.exp}

    def __repr__(self):
        s = fmt_q(self.value)
        return s if self.exp == 1 else f"sqrt({s})"


class Gauge:
    """Base class: positively homogeneous, symmetric, positive off the origin.

    ``value(x)`` returns the raw number (already squared when ``exp == 2``);
    calling the gauge wraps it in a :class:`GaugeValue`.  ``circumradius``
    bounds the unit body in the sup norm.
    """
    dim: int
    exp = 1
    circumradius = Fraction(1)
    name = "gauge"

    def value(self, x: Sequence) -> Fraction:
        raise NotImplementedError

    def __call__(self, x: Sequence) -> GaugeValue:
        if len(x) != self.dim:
            raise ValueError(f"expected a vector of length {self.dim}")
        return GaugeValue(self.value(x), self.exp)

    def known_delta(self) -> GaugeValue | None:
        return None


@dataclass(frozen=True)
class SupNorm(Gauge):
    dim: int
    name = "sup"

    def value(self, x):
        return max(abs(c) for c in x)

    def known_delta(self):
        return GaugeValue(1)


@dataclass(frozen=True)
class Euclid(Gauge):
    dim: int
    exp = 2
    name = "euclid"

    def value(self, x):
        return sum(c * c for c in x)

    def known_delta(self):
        # Delta of the disc is sqrt(3)/2, stored squared
        return GaugeValue(Fraction(3, 4), 2) if self.dim == 2 else None


@dataclass(frozen=True)
class Honeycomb(Gauge):
    """Generalized honeycomb: |x_i| <= 1 and |x_i - x_j| <= 1."""
    dim: int
    name = "honeycomb"

    def value(self, x):
        return max(max(x) - min(x), max(abs(c) for c in x))

    def known_delta(self):
        return GaugeValue(Fraction(self.dim + 1, 2 ** self.dim))


@dataclass(frozen=True)
class B1(Gauge):
    """The planar convex body bounded by S_h, S_v and the arcs L_1, L_2."""
    alpha: Fraction
    beta: Fraction
    dim: int = field(default=2, init=False)
    name = "b1"

    def __post_init__(self):
        a, b = Fraction(self.alpha), Fraction(self.beta)
        if not 0 < a < b < 1:
            raise ValueError(f"B1 needs 0 < alpha < beta < 1, got {a}, {b}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "_slopes", (
            (1 + b) / (1 + a),      # top edge above this slope
            (1 - b) / (1 - a),      # right edge up to this slope
            -(1 - b) / (1 + a),     # right edge down to this slope
            -(1 + b) / (1 - a),     # bottom edge below this slope
        ))

    def arc1(self, t) -> Fraction:
        """x(t) on L_1, the arc through (x, t x)."""
        a, b = self.alpha, self.beta
        t = Fraction(t)
        num = -t * t * (1 + a) ** 2 + 2 * t * (1 - a + b + a * b) - (1 - b) ** 2
        return num / (4 * t * (b - a * t))

    def arc2(self, t) -> Fraction:
        """X(t) on L_2, the arc through (X, -t X)."""
        a, b = self.alpha, self.beta
        t = Fraction(t)
        num = -t * t * (1 - a) ** 2 + 2 * t * (1 + a + b - a * b) - (1 - b) ** 2
        return num / (4 * t * (b + a * t))

    def value(self, v):
        x, y = Fraction(v[0]), Fraction(v[1])
        if x < 0:
            x, y = -x, -y
        if x == 0:
            return abs(y)
        top, right_hi, right_lo, bottom = self._slopes
        s = y / x
        # segments win ties at shared endpoints
        if s >= top or s <= bottom:
            return abs(y)
        if right_lo <= s <= right_hi:
            return x
        if s > 0:
            return x / self.arc1(s)
        return x / self.arc2(-s)

    def boundary_point(self, piece: str, t) -> tuple[Fraction, Fraction]:
        """Point of the printed boundary parametrization (for testing)."""
        t = Fraction(t)
        if piece == "Sh":
            return t, Fraction(1)
        if piece == "Sv":
            return Fraction(1), t
        if piece == "L1":
            x = self.arc1(t)
            return x, t * x
        if piece == "L2":
            X = self.arc2(t)
            return X, -t * X
        raise ValueError(piece)

    def piece_ranges(self) -> dict[str, tuple[Fraction, Fraction]]:
        a, b = self.alpha, self.beta
        return {
            "Sh": (-(1 - a) / (1 + b), (1 + a) / (1 + b)),
            "Sv": (-(1 - b) / (1 + a), (1 - b) / (1 - a)),
            "L1": ((1 - b) / (1 - a), (1 + b) / (1 + a)),
            "L2": ((1 - b) / (1 + a), (1 + b) / (1 - a)),
        }


@dataclass(frozen=True)
class BodyOfN(Gauge):
    """Distance function f_n of M_1(n), the intersection of the sets G_pqr."""
    n: tuple[int, ...]
    name = "mn"

    def __post_init__(self):
        n = validate_target(self.n, strict=True)
        object.__setattr__(self, "n", n)
        parts = []
        K = len(n)
        for p, q, r in itertools.combinations(range(K), 3):
            ap, aq = Fraction(n[p], n[r]), Fraction(n[q], n[r])
            # the last coordinate of Z^{k+1} is not a coordinate of R^k
            shift = r if r < K - 1 else None
            parts.append((p, q, shift, ap, aq, B1(ap, aq), Fraction(n[-1], n[r])))
        object.__setattr__(self, "_parts", tuple(parts))

    @property
    def dim(self):
        return len(self.n) - 1

    def value(self, x):
        best = Fraction(0)
        for p, q, r, ap, aq, body, gamma in self._parts:
            if r is None:
                val = body.value((x[p], x[q]))
            else:
                val = body.value((x[p] - ap * x[r], x[q] - aq * x[r])) / gamma
            if val > best:
                best = val
        return best


@dataclass(frozen=True)
class PolygonGauge(Gauge):
    """Gauge of Pi(m, n): max_i |m_i y - n_i x|."""
    m: tuple[int, ...]
    n: tuple[int, ...]
    dim: int = field(default=2, init=False)
    name = "polygon"

    def value(self, v):
        x, y = v
        return max(abs(mi * y - ni * x) for mi, ni in zip(self.m, self.n))

    @property
    def circumradius(self):
        poly = polygon_pi(self.m, self.n)
        return max(max(abs(a), abs(b)) for a, b in poly.vertices)


def evaluate(g: Gauge, x: Sequence) -> GaugeValue:
    return g(x)


def known_delta(g: Gauge) -> GaugeValue | None:
    return g.known_delta()


def honeycomb_critical_basis(k: int) -> list[list[Fraction]]:
    if k < 2:
        raise ValueError("honeycomb basis needs k >= 2")
    return [[Fraction(1) if i == j else Fraction(1, 2) for j in range(k)] for i in range(k)]


def parse_gauge(spec: str, k: int, n=None) -> Gauge:
    """CLI gauge names: sup | euclid | honeycomb | b1:alpha,beta | mn."""
    spec = spec.strip().lower()
    if spec == "sup":
        return SupNorm(k)
    if spec == "euclid":
        return Euclid(k)
    if spec == "honeycomb":
        return Honeycomb(k)
    if spec.startswith("b1:"):
        a, b = spec[3:].split(",")
        return B1(Fraction(a), Fraction(b))
    if spec == "mn":
        if n is None:
            raise ValueError("gauge 'mn' needs a target n")
        return BodyOfN(tuple(n))
    raise ValueError(f"unknown gauge {spec!r}")


@dataclass(frozen=True)
class PolygonPi:
    m: tuple[int, ...]
    n: tuple[int, ...]
    halfplanes: tuple[tuple[int, int], ...]   # (a, b) meaning |a x + b y| <= 1
    vertices: tuple[tuple[Fraction, Fraction], ...]
    area: Fraction

    def gauge(self) -> PolygonGauge:
        return PolygonGauge(self.m, self.n)


def _angle_key(p):
    x, y = p
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _ccw_cmp(p, q):
    hp, hq = _angle_key(p), _angle_key(q)
    if hp != hq:
        return hp - hq
    cross = p[0] * q[1] - p[1] * q[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def polygon_pi(m: Sequence[int], n: Sequence[int]) -> PolygonPi:
    """The centrally symmetric polygon |m_i y - n_i x| <= 1 with exact area."""
    m = tuple(int(x) for x in m)
    n = tuple(int(x) for x in n)
    if len(m) != len(n):
        raise ValueError("m and n must have equal length")
    if rank([m, n]) != 2:
        raise ValueError("m and n must be linearly independent")
    planes = tuple((-ni, mi) for mi, ni in zip(m, n) if mi or ni)
    if rank(planes) < 2:
        raise ValueError("polygon is unbounded")
    pts = set()
    for (a1, b1), (a2, b2) in itertools.combinations(planes, 2):
        D = a1 * b2 - a2 * b1
        if D == 0:
            continue
        for s1, s2 in itertools.product((1, -1), repeat=2):
            x = Fraction(s1 * b2 - s2 * b1, D)
            y = Fraction(a1 * s2 - a2 * s1, D)
            if all(abs(a * x + b * y) <= 1 for a, b in planes):
                pts.add((x, y))
    verts = sorted(pts, key=functools.cmp_to_key(_ccw_cmp))
    area2 = sum(verts[i][0] * verts[i - 1][1] - verts[i - 1][0] * verts[i][1]
                for i in range(len(verts)))
    return PolygonPi(m, n, planes, tuple(verts), abs(Fraction(area2, 2)))
