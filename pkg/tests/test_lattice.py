import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from simdioph.exact import matmul
from simdioph.lattice import (
    ApproxTarget,
    Lattice,
    congruence_member,
    lattice_equal,
    lattice_from_n,
    orthogonal_section,
    point_to_m,
    polar,
    scale,
    section_det_identity,
    weyl_lattice,
)
from strategies import targets, unimodular

Z2 = Lattice.from_basis([[1, 0], [0, 1]])


def test_lambda_examples():
    L = lattice_from_n((1, 1, 2))
    assert L.basis == [[F(1, 2), F(1, 2)], [0, 1]]
    assert L.det == F(1, 2)
    assert lattice_from_n((1, 1, 1, 1)) == Lattice.from_basis([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


@pytest.mark.parametrize("n", [(0, 1, 2), (2, 4, 6), (3, 2, 5), (1, 1, 0)])
def test_invalid_targets(n):
    with pytest.raises(ValueError):
        lattice_from_n(n)


def test_approx_target():
    t = ApproxTarget((1, 2, 4))
    assert t.k == 2 and t.thetas == [F(1, 4), F(1, 2)]
    with pytest.raises(ValueError):
        ApproxTarget((2, 2, 4))


def test_polar_examples():
    assert polar(Z2) == Z2
    P = polar(Lattice.from_basis([[F(1, 2), F(1, 2)], [0, 1]]))
    assert P.hnf == ((1, 1), (0, 2)) and P.scalar == 1
    L = lattice_from_n((2, 3, 7))
    assert L.det * polar(L).det == 1


def test_section_examples():
    S = orthogonal_section((1, 1, 2))
    assert S.hnf == ((1, 1), (0, 2)) and S.det == 2
    assert orthogonal_section((0, 0, 1)) == Z2
    with pytest.raises(ValueError):
        orthogonal_section((1, 2, 0))


def test_lattice_equal_examples():
    assert lattice_equal(Lattice.from_basis([[2, 0], [-1, 1]]), Lattice.from_basis([[1, 1], [0, 2]]))
    assert not lattice_equal(Z2, scale(Z2, 2))


def test_weyl_examples():
    assert weyl_lattice((1, 1, 2)) == lattice_from_n((1, 1, 2))
    W = weyl_lattice((1, 2, 3))
    assert (F(1, 3), F(2, 3)) in W and W.det == F(1, 3)
    assert weyl_lattice((1, 1, 1)) == Z2


def test_congruence_examples():
    assert congruence_member((1, 1, 2), (1, 1)) == (True, 1)
    assert congruence_member((1, 1, 2), (1, 0)) == (False, None)
    assert congruence_member((2, 3, 5), (0, 0)) == (True, 0)


def test_section_det_examples():
    assert section_det_identity((1, 0, 0), (0, 1, 0)) == (1, 1)
    a, b = section_det_identity((1, 0, 0), (1, 1, 2))
    assert a == b == 5
    a, b = section_det_identity((1, 1, 0), (0, 1, 1))
    assert a == b == 3
    with pytest.raises(ValueError):
        section_det_identity((1, 0, 0), (2, 0, 0))


def test_scale_examples():
    assert scale(Z2, 2).det == 4
    S = scale(lattice_from_n((1, 1, 2)), 2)
    assert S.scalar == 1 and S.hnf == ((1, 1), (0, 2))
    with pytest.raises(ValueError):
        scale(Z2, 0)


@pytest.mark.parametrize("n", [(1, 1, 2), (2, 3, 5)])
def test_points_correspond_to_unique_m(n):
    L = lattice_from_n(n)
    N, k = n[-1], len(n) - 1
    seen = {}
    for head in itertools.product(range(-3, 4), repeat=k):
        for r in range(N):
            v = tuple(F(mi) - F(r * ni, N) for mi, ni in zip(head, n))
            if all(abs(c) <= 1 for c in v):
                assert v not in seen
                seen[v] = head + (r,)
    grid = [F(c, N) for c in range(-N, N + 1)]
    in_box = {v for v in itertools.product(grid, repeat=k) if v in L}
    assert in_box == set(seen)
    for v, m in seen.items():
        assert point_to_m(n, v) == m


@given(targets())
def test_det_is_reciprocal_height(n):
    assert lattice_from_n(n).det == F(1, n[-1])


@given(targets())
def test_polar_is_orthogonal_section(n):
    assert lattice_equal(orthogonal_section(n), polar(lattice_from_n(n)))


@given(targets())
def test_weyl_lattice_is_lambda(n):
    assert lattice_equal(weyl_lattice(n), lattice_from_n(n))


@given(targets(max_top=60), st.data())
def test_congruence_matches_scaled_membership(n, data):
    k, N = len(n) - 1, n[-1]
    x = data.draw(st.lists(st.integers(-2 * N, 2 * N), min_size=k, max_size=k))
    ok, r = congruence_member(n, x)
    rs = [r for r in range(N) if all((xi + r * ni) % N == 0 for xi, ni in zip(x, n))]
    assert ok == bool(rs) == (tuple(x) in scale(lattice_from_n(n), N))
    if ok:
        assert r == rs[0]


@given(st.lists(st.integers(-6, 6), min_size=3, max_size=4), st.data())
def test_section_det_pair_is_equal(m, data):
    n = data.draw(st.lists(st.integers(-6, 6), min_size=len(m), max_size=len(m)))
    try:
        a, b = section_det_identity(m, n)
    except ValueError:
        return
    assert a == b


@given(targets(k=2), st.data())
def test_lattice_is_basis_invariant(n, data):
    L = lattice_from_n(n)
    U = data.draw(unimodular(2))
    assert Lattice.from_basis(matmul(U, L.basis)) == L


@given(targets(), st.fractions(min_value=F(1, 10), max_value=10))
def test_scaling_roundtrip_and_det(n, c):
    L = lattice_from_n(n)
    S = scale(L, c)
    assert S.det == L.det * c ** L.dim
    assert scale(S, 1 / c) == L
