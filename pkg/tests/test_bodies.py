import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from simdioph.bodies import (
    B1,
    BodyOfN,
    Euclid,
    GaugeValue,
    Honeycomb,
    PolygonGauge,
    SupNorm,
    evaluate,
    honeycomb_critical_basis,
    known_delta,
    parse_gauge,
    polygon_pi,
)
from simdioph.decompose import choose_delta, honeycomb_domination_spot_check, random_strict_target
from simdioph.exact import det
from oracles import polygon_critical_determinant
from strategies import nonzero_vectors, rationals, targets, vectors

unit_interval = st.fractions(min_value=F(1, 50), max_value=F(49, 50), max_denominator=60)
b1_params = st.tuples(unit_interval, unit_interval).filter(lambda ab: ab[0] < ab[1])


def test_gauge_examples():
    assert evaluate(Honeycomb(2), [1, -1]) == GaugeValue(2)
    assert evaluate(Honeycomb(3), [1, F(1, 2), F(1, 2)]) == GaugeValue(1)
    assert evaluate(B1(F(1, 4), F(1, 2)), [0, 1]) == GaugeValue(1)
    assert evaluate(B1(F(1, 4), F(1, 2)), [1, -1]) == GaugeValue(F(16, 13))
    assert evaluate(Euclid(2), [F(1, 2), F(1, 2)]) == GaugeValue(F(1, 2), 2)
    assert evaluate(SupNorm(3), [0, 0, 0]) == GaugeValue(0)


def test_gauge_value_ordering_crosses_exponents():
    assert GaugeValue(F(1, 2)) < GaugeValue(F(1, 2), 2)       # 1/2 < sqrt(1/2)
    assert GaugeValue(F(1, 2)) == GaugeValue(F(1, 4), 2)
    assert repr(GaugeValue(F(3, 4), 2)) == "sqrt(3/4)"


@pytest.mark.parametrize("a,b", [(F(1, 2), F(1, 2)), (F(3, 4), F(1, 2)), (0, F(1, 2)), (F(1, 2), 1)])
def test_b1_rejects_bad_parameters(a, b):
    with pytest.raises(ValueError):
        B1(a, b)


def test_body_of_n_needs_strict_order():
    with pytest.raises(ValueError):
        BodyOfN((1, 1, 2))


def test_honeycomb_basis():
    assert det(honeycomb_critical_basis(2)) == F(3, 4)
    assert det(honeycomb_critical_basis(3)) == F(1, 2)
    for k in range(2, 6):
        assert all(Honeycomb(k).value(row) == 1 for row in honeycomb_critical_basis(k))
    with pytest.raises(ValueError):
        honeycomb_critical_basis(1)


def test_known_deltas():
    assert known_delta(Honeycomb(3)) == GaugeValue(F(1, 2))
    assert known_delta(SupNorm(4)) == GaugeValue(1)
    assert known_delta(Euclid(2)) == GaugeValue(F(3, 4), 2)
    assert known_delta(B1(F(1, 3), F(1, 2))) is None


def test_polygon_examples():
    assert polygon_pi((1, 0, 0), (1, 1, 2)).area == 2
    assert polygon_pi((1, 0), (0, 1)).area == 4
    assert polygon_pi((-1, 0, 0), (-1, -1, -2)).area == 2
    with pytest.raises(ValueError):
        polygon_pi((1, 2, 3), (2, 4, 6))


def test_parse_gauge():
    assert parse_gauge("sup", 2) == SupNorm(2)
    assert parse_gauge("b1:1/4,1/2", 2) == B1(F(1, 4), F(1, 2))
    assert parse_gauge("mn", 2, (1, 2, 3)) == BodyOfN((1, 2, 3))
    with pytest.raises(ValueError):
        parse_gauge("triangle", 2)


def _gauges(draw_params):
    a, b = draw_params
    return [SupNorm(2), Euclid(2), Honeycomb(2), B1(a, b), BodyOfN((1, 2, 5)),
            PolygonGauge((1, 0, 2), (1, 3, 4))]


@given(b1_params, vectors(2), rationals)
def test_homogeneity_and_symmetry(ab, x, c):
    for g in _gauges(ab):
        assert g(x).scaled(c) == g([c * xi for xi in x])
        assert g([-xi for xi in x]) == g(x)


@given(b1_params, vectors(2))
def test_b1_inside_unit_square(ab, x):
    assert B1(*ab).value(x) >= SupNorm(2).value(x)


@given(vectors(4))
def test_honeycomb_is_max_over_pairs(x):
    pairs = max(Honeycomb(2).value([x[i], x[j]]) for i in range(4) for j in range(i + 1, 4))
    assert Honeycomb(4).value(x) == pairs


@given(targets(k=3, strict=True, max_top=200), vectors(3))
def test_body_of_n_inside_unit_cube(n, x):
    assert BodyOfN(n).value(x) >= SupNorm(3).value(x)


@given(b1_params, st.sampled_from(["Sh", "Sv", "L1", "L2"]), st.fractions(0, 1, max_denominator=40))
def test_b1_boundary_points_have_gauge_one(ab, piece, s):
    body = B1(*ab)
    lo, hi = body.piece_ranges()[piece]
    t = lo + s * (hi - lo)
    assert body.value(body.boundary_point(piece, t)) == 1


@given(b1_params, st.lists(st.tuples(st.sampled_from(["Sh", "Sv", "L1", "L2"]),
                                     st.fractions(0, 1, max_denominator=40), st.booleans()),
                           min_size=2, max_size=2))
def test_b1_midpoints_stay_inside(ab, picks):
    body = B1(*ab)
    pts = []
    for piece, s, flip in picks:
        lo, hi = body.piece_ranges()[piece]
        x, y = body.boundary_point(piece, lo + s * (hi - lo))
        pts.append((-x, -y) if flip else (x, y))
    (x1, y1), (x2, y2) = pts
    assert body.value(((x1 + x2) / 2, (y1 + y2) / 2)) <= 1


def test_body_dominates_scaled_honeycomb_on_random_targets():
    eps = F(1, 2)
    delta = choose_delta(3, eps, samples=100, seed=3)
    rng = random.Random(11)
    for _ in range(100):
        f = BodyOfN(random_strict_target(3, delta, rng))
        x = [F(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(3)]
        if any(x):
            assert f.value(x) > (1 - eps / 2) * Honeycomb(3).value(x)
    assert honeycomb_domination_spot_check(3, eps, delta, 50, rng)


# f_n(v) * n_{k+1} * Delta(Pi(m, n)) = 1 where v is the point of Lambda(n) given by m
ORACLE_CASES = [((2, 5, 9), (1, -1, 3)), ((3, 7, 11), (2, 0, -1)), ((1, 4, 6, 13), (0, 1, -2, 3)),
                ((5, 8, 21), (-1, 2, 2)), ((2, 9, 10, 17), (1, 1, 0, 4))]


@pytest.mark.parametrize("n,m", ORACLE_CASES)
def test_body_of_n_matches_polygon_critical_determinant(n, m):
    N = n[-1]
    v = [F(mi) - F(m[-1] * ni, N) for mi, ni in zip(m, n)]
    f = BodyOfN(n).value(v)
    delta = polygon_critical_determinant(m, n)
    assert math.isclose(float(f) * N * delta, 1.0, rel_tol=1e-8)
