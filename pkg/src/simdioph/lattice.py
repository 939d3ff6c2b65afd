"""Rational lattices and the lattice Lambda(n) attached to an integer vector.

A :class:`Lattice` is stored canonically as ``scalar * L`` where ``L`` is an
integer lattice given by its row HNF and ``scalar = 1/D`` with ``D`` the
least positive integer such that ``D * lattice`` is integral.  Two lattices
are equal exactly when these fields agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (
    IdentityViolation,
    complete_to_unimodular,
    det,
    fmt_q,
    gcd_vector,
    hnf,
    integer_kernel,
    inverse,
    lcm_denominators,
    rank,
    solve_congruences,
    transpose,
)


@dataclass(frozen=True)
class Lattice:
    dim: int
    scalar: Fraction
    hnf: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, rows: Sequence[Sequence]) -> "Lattice":
        rows = [[Fraction(x) for x in r] for r in rows]
        if not rows:
            raise ValueError("no generators")
        dim = len(rows[0])
        D = lcm_denominators(x for r in rows for x in r)
        H = hnf([[int(x * D) for x in r] for r in rows])
        if len(H) != dim:
            raise ValueError(f"generators span rank {len(H)} < {dim}")
        return cls(dim, Fraction(1, D), tuple(tuple(r) for r in H))

    @classmethod
    def from_basis(cls, rows: Sequence[Sequence]) -> "Lattice":
        if len(rows) != len(rows[0]):
            raise ValueError("basis must be square")
        return cls.from_generators(rows)

    @property
    def basis(self) -> list[list[Fraction]]:
        return [[self.scalar * x for x in r] for r in self.hnf]

    @property
    def det(self) -> Fraction:
        d = Fraction(1)
        for i, r in enumerate(self.hnf):
            d *= r[i]
        return d * self.scalar ** self.dim

    def __contains__(self, v) -> bool:
        w = [Fraction(x) / self.scalar for x in v]
        if any(x.denominator != 1 for x in w):
            return False
        w = [int(x) for x in w]
        for i, row in enumerate(self.hnf):
            c, rem = divmod(w[i], row[i])
            if rem:
                return False
            if c:
                w = [a - c * b for a, b in zip(w, row)]
        return not any(w)

    def to_json(self) -> dict:
        return {"dim": self.dim, "scalar": fmt_q(self.scalar),
                "hnf": [list(r) for r in self.hnf]}


@dataclass(frozen=True)
class ApproxTarget:
    """A vector of U^{k+1}: positive, non-decreasing, primitive."""
    n: tuple[int, ...]

    def __init__(self, n):
        object.__setattr__(self, "n", tuple(int(x) for x in n))
        validate_target(self.n)

    @property
    def k(self) -> int:
        return len(self.n) - 1

    @property
    def thetas(self) -> list[Fraction]:
        N = self.n[-1]
        return [Fraction(x, N) for x in self.n[:-1]]


def validate_target(n, *, ordered=True, strict=False) -> tuple[int, ...]:
    n = tuple(int(x) for x in n)
    if len(n) < 2:
        raise ValueError("target needs at least two entries")
    if n[-1] <= 0:
        raise ValueError(f"last entry of {n} must be positive")
    if gcd_vector(n) != 1:
        raise ValueError(f"{n} is not primitive")
    if ordered:
        if n[0] <= 0:
            raise ValueError(f"{n} must have positive entries")
        for a, b in zip(n, n[1:]):
            if a > b or (strict and a == b):
                kind = "strictly increasing" if strict else "non-decreasing"
                raise ValueError(f"{n} must be {kind}")
    return n


def _target(n, check_order: bool) -> tuple[int, ...]:
    if isinstance(n, ApproxTarget):
        return n.n
    return validate_target(n, ordered=check_order)


def lattice_from_n(n, check_order: bool = True) -> Lattice:
    """Lambda(n) = {(m_i - m_{k+1} n_i/n_{k+1})_i : m in Z^{k+1}}.

    Built from a unimodular completion ``n, v_1..v_k`` of Z^{k+1}: the
    projected vectors ``v'_i`` form a basis.
    """
    n = _target(n, check_order)
    N = n[-1]
    vs, _ = complete_to_unimodular(n)
    basis = [[Fraction(v[j]) - Fraction(v[-1] * n[j], N) for j in range(len(n) - 1)]
             for v in vs]
    return Lattice.from_basis(basis)


def polar(L: Lattice) -> Lattice:
    return Lattice.from_basis(transpose(inverse(L.basis)))


def orthogonal_section(n: Sequence[int]) -> Lattice:
    """Integer vectors orthogonal to ``n`` with the last coordinate dropped."""
    n = [int(x) for x in n]
    if gcd_vector(n) != 1:
        raise ValueError(f"{n} is not primitive")
    if n[-1] == 0:
        raise ValueError("projection degenerates when the last entry is 0")
    K = integer_kernel([n])
    L = Lattice.from_basis([row[:-1] for row in K])
    if L.det != abs(n[-1]):
        raise IdentityViolation(f"det of section is {L.det}, expected {abs(n[-1])}")
    return L


def lattice_equal(L1: Lattice, L2: Lattice) -> bool:
    if L1.dim != L2.dim:
        raise ValueError("dimension mismatch")
    return L1 == L2


def weyl_lattice(n) -> Lattice:
    """Z^k together with the orbit of (n_1/n_{k+1}, ..., n_k/n_{k+1})."""
    n = _target(n, True)
    k = len(n) - 1
    gens = [[int(i == j) for j in range(k)] for i in range(k)]
    gens.append([Fraction(x, n[-1]) for x in n[:-1]])
    return Lattice.from_generators(gens)


def congruence_member(n, x: Sequence[int]) -> tuple[bool, int | None]:
    """Decide ``x_i + r n_i == 0 (mod n_{k+1})`` for some r; return (ok, r)."""
    n = _target(n, True)
    N = n[-1]
    sol = solve_congruences(n[:-1], [-int(v) for v in x], N)
    if sol is None:
        return False, None
    return True, sol[0]


def point_to_m(n, v: Sequence) -> tuple[int, ...]:
    """The unique m with 0 <= m_{k+1} < n_{k+1} mapping to ``v`` in Lambda(n)."""
    n = _target(n, False)
    N = n[-1]
    x = [Fraction(c) * N for c in v]
    sol = None
    if all(c.denominator == 1 for c in x):
        sol = solve_congruences(n[:-1], [-int(c) for c in x], N)
    if sol is None:
        raise ValueError(f"{v} is not a point of Lambda({n})")
    r = sol[0]
    m = [Fraction(c) + Fraction(r * a, N) for c, a in zip(v, n)]
    return tuple(int(c) for c in m) + (r,)


def gram_det(rows: Sequence[Sequence]):
    return det([[sum(a * b for a, b in zip(u, w)) for w in rows] for u in rows])


def section_det_identity(m: Sequence[int], n: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Gram determinants of Lambda(m, n) and of its integer orthogonal complement.

    The pair must span a saturated plane (gcd of the 2x2 minors equal to 1).
    """
    m = [int(x) for x in m]
    n = [int(x) for x in n]
    if len(m) != len(n) or len(m) < 3:
        raise ValueError("need two vectors of equal length >= 3")
    if rank([m, n]) != 2:
        raise ValueError("m and n are linearly dependent")
    minors = [m[i] * n[j] - m[j] * n[i] for i in range(len(m)) for j in range(i + 1, len(m))]
    if gcd_vector(minors) != 1:
        raise ValueError("m, n do not span all integer points of their plane")
    K = integer_kernel([m, n])
    return Fraction(gram_det([m, n])), Fraction(gram_det(K))


def scale(L: Lattice, c) -> Lattice:
    c = Fraction(c)
    if c == 0:
        raise ValueError("scale factor must be nonzero")
    return Lattice.from_basis([[c * x for x in r] for r in L.basis])
