"""Exact integer and rational linear algebra.

Matrices are plain sequences of rows.  Rational entries are
:class:`fractions.Fraction`; integer matrices hold Python ints.  Nothing in
this module rounds.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = Sequence[Sequence]


class IdentityViolation(AssertionError):
    """A mathematical identity that must hold exactly was found to fail."""


def fmt_q(x) -> str:
    """Serialize a rational as ``"num/den"`` (``"num"`` when integral)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_q(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    return Fraction(str(s).strip())


def gcd_vector(v: Sequence[int]) -> int:
    """gcd of the absolute values; 0 for the zero vector."""
    return math.gcd(*(int(x) for x in v)) if len(v) else 0


def lcm_denominators(entries) -> int:
    d = 1
    for e in entries:
        d = math.lcm(d, Fraction(e).denominator)
    return d


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _check_square(M: Matrix) -> int:
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    return n


def _bareiss(A: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; ``A`` is destroyed."""
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        rowk = A[k]
        for i in range(k + 1, n):
            rowi = A[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def det(M: Matrix):
    """Exact determinant.  Integer input gives an int, otherwise a Fraction."""
    n = _check_square(M)
    scale = 1
    rows = []
    for row in M:
        d = lcm_denominators(row)
        scale *= d
        rows.append([int(Fraction(x) * d) for x in row])
    value = _bareiss(rows)
    if scale == 1:
        return value
    return Fraction(value, scale)


def inverse(M: Matrix) -> list[list[Fraction]]:
    n = _check_square(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def matmul(A: Matrix, B: Matrix) -> list[list]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A: Matrix) -> list[list]:
    return [list(c) for c in zip(*A)]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def rank(M: Matrix) -> int:
    rows = [[Fraction(x) for x in r] for r in M]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def minors_omit_column(M: Matrix) -> tuple[list[int], list[int]]:
    """Maximal minors of a k x (k+1) matrix.

    Returns ``(minors, cross)`` where ``minors[i]`` is the determinant with
    column ``i`` removed and ``cross[i] = (-1)**i * minors[i]`` (0-based), the
    generalized cross product, orthogonal to every row of ``M``.
    """
    k = len(M)
    if any(len(row) != k + 1 for row in M):
        raise ValueError("expected a k x (k+1) matrix")
    minors = []
    for i in range(k + 1):
        sub = [list(row[:i]) + list(row[i + 1:]) for row in M]
        minors.append(det(sub))
    cross = [m if i % 2 == 0 else -m for i, m in enumerate(minors)]
    return minors, cross


def hnf_with_transform(M: Matrix) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form with a unimodular transform.

    Returns ``(H, U)`` with ``U @ M`` equal to ``H`` stacked over zero rows.
    ``H`` has ``rank(M)`` rows, is in echelon form with positive pivots and
    every entry above a pivot lies in ``[0, pivot)``.
    """
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    ncols = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            b = A[i][c]
            if b == 0:
                continue
            a = A[r][c]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            Ar, Ai = A[r], A[i]
            A[r] = [x * p + y * q for p, q in zip(Ar, Ai)]
            A[i] = [ag * q - bg * p for p, q in zip(Ar, Ai)]
            Ur, Ui = U[r], U[i]
            U[r] = [x * p + y * q for p, q in zip(Ur, Ui)]
            U[i] = [ag * q - bg * p for p, q in zip(Ur, Ui)]
        piv = A[r][c]
        if piv == 0:
            continue
        if piv < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
            piv = -piv
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [p - q * s for p, s in zip(A[i], A[r])]
                U[i] = [p - q * s for p, s in zip(U[i], U[r])]
        r += 1
    return A[:r], U


def hnf(M: Matrix) -> list[list[int]]:
    """Canonical row-style HNF of the lattice spanned by the rows of ``M``."""
    return hnf_with_transform(M)[0]


def integer_kernel(A: Matrix) -> list[list[int]]:
    """Basis of ``{z in Z^n : A z = 0}``; always saturated."""
    H, U = hnf_with_transform(transpose(A))
    return U[len(H):]


def complete_to_unimodular(n: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Rows ``v_1..v_k`` such that ``(n, v_1, ..., v_k)`` is unimodular.

    Also returns the transform ``U`` (``U @ n^T = e_1``) for audit.
    """
    n = [int(x) for x in n]
    if not any(n):
        raise ValueError("zero vector cannot be completed")
    if gcd_vector(n) != 1:
        raise ValueError(f"vector {n} is not primitive")
    H, U = hnf_with_transform([[x] for x in n])
    V = inverse(U)
    if any(x.denominator != 1 for row in V for x in row):
        raise IdentityViolation("transform is not unimodular")
    Vt = [[int(V[i][j]) for i in range(len(n))] for j in range(len(n))]
    if Vt[0] != n:
        raise IdentityViolation("first row of completed basis differs from n")
    return Vt[1:], U


def solve_congruences(coeffs: Sequence[int], rhs: Sequence[int], modulus: int):
    """Solve ``coeffs[i] * u == rhs[i] (mod modulus)`` simultaneously.

    Returns ``(u0, step)`` describing all solutions ``u0 + step*Z`` with
    ``0 <= u0 < step``, or ``None`` if the system is inconsistent.
    """
    r, M = 0, 1
    for a, b in zip(coeffs, rhs):
        a_eff = (a * M) % modulus
        c = (b - a * r) % modulus
        g = math.gcd(a_eff, modulus)
        if c % g:
            return None
        mg = modulus // g
        s = (c // g) * pow(a_eff // g, -1, mg) % mg if mg > 1 else 0
        r = r + M * s
        M *= mg
        r %= M
    return r, M
