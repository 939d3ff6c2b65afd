"""Independent floating-point oracles, used only by the tests."""

import math

import numpy as np
from scipy.optimize import brentq, minimize_scalar


def polygon_critical_determinant(m, n, samples=1500):
    """Delta of the polygon max_i |m_i y - n_i x| <= 1 by a boundary search.

    For a planar convex body the critical determinant is the minimum of
    det(p1, p2) over boundary points p1, p2 with p2 - p1 also on the boundary.
    """
    g = lambda x, y: max(abs(mi * y - ni * x) for mi, ni in zip(m, n))

    def boundary(phi):
        c, s = math.cos(phi), math.sin(phi)
        r = 1.0 / g(c, s)
        return r * c, r * s

    def det_at(theta):
        p1 = boundary(theta)
        gap = lambda phi: (lambda b: g(b[0] - p1[0], b[1] - p1[1]) - 1)(boundary(phi))
        phi = brentq(gap, theta + 1e-12, theta + math.pi - 1e-12, xtol=1e-15)
        p2 = boundary(phi)
        return p1[0] * p2[1] - p1[1] * p2[0]

    thetas = np.linspace(0, math.pi, samples)
    vals = [det_at(t) for t in thetas]
    i = int(np.argmin(vals))
    res = minimize_scalar(det_at, bounds=(thetas[max(i - 1, 0)], thetas[min(i + 1, samples - 1)]),
                          method="bounded", options={"xatol": 1e-13})
    return min(res.fun, min(vals))


def naive_min_product(n, limit):
    """Smallest h(p) h(q) over independent p, q in [-limit, limit]^K with n in Zp + Zq."""
    import itertools
    from fractions import Fraction

    height = lambda v: max(abs(x) for x in v)
    K = len(n)
    vecs = sorted((v for v in itertools.product(range(-limit, limit + 1), repeat=K) if any(v)), key=height)
    best = None
    for p in vecs:
        hp = height(p)
        if best is not None and hp * hp > best:
            break
        for q in vecs:
            hq = height(q)
            if hq < hp:
                continue
            if best is not None and hp * hq >= best:
                break
            for i, j in itertools.combinations(range(K), 2):
                D = p[i] * q[j] - p[j] * q[i]
                if D:
                    u = Fraction(n[i] * q[j] - n[j] * q[i], D)
                    v = Fraction(p[i] * n[j] - p[j] * n[i], D)
                    if u.denominator == v.denominator == 1 and \
                            all(u * a + v * b == c for a, b, c in zip(p, q, n)):
                        best = hp * hq
                    break
    return best
