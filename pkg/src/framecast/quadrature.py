"""Quadrature rules used by the arc-length and error-bound code."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

__all__ = ["gauss_legendre", "gauss_legendre_2d", "adaptive_simpson", "fourier_transform"]


@lru_cache(maxsize=None)
def _leggauss(k):
    x, w = np.polynomial.legendre.leggauss(k)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _composite_nodes(a, b, panels, k):
    x, w = _leggauss(k)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def gauss_legendre(f, a, b, *, nodes_per_unit=64, rtol=1e-10, atol=1e-300,
                   max_doublings=14):
    """Composite Gauss-Legendre integral of a vectorized ``f`` over ``[a, b]``.

    Starts from panels of unit length carrying ``nodes_per_unit`` nodes each
    and doubles the panel count until two successive estimates agree to
    ``rtol`` (relative) or ``atol``.
    """
    if a == b:
        return 0.0 * f(np.array([a]))[0]
    panels = max(1, math.ceil(abs(b - a)))
    nodes, weights = _composite_nodes(a, b, panels, nodes_per_unit)
    prev = np.sum(weights * f(nodes))
    for _ in range(max_doublings):
        panels *= 2
        nodes, weights = _composite_nodes(a, b, panels, nodes_per_unit)
        cur = np.sum(weights * f(nodes))
        if abs(cur - prev) <= max(rtol * abs(cur), atol):
            return cur
        prev = cur
    raise ArithmeticError(
        f"Gauss-Legendre did not reach rtol={rtol} after {max_doublings} doublings"
    )


def gauss_legendre_2d(f, box, *, nodes_per_unit=64, panels=1):
    """Tensor Gauss-Legendre over ``box = (ax, bx, ay, by)``; ``f(x, y)`` vectorized."""
    ax, bx, ay, by = box
    xs, wx = _composite_nodes(ax, bx, panels, nodes_per_unit)
    ys, wy = _composite_nodes(ay, by, panels, nodes_per_unit)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    return np.sum(np.outer(wx, wy) * f(X, Y))


def adaptive_simpson(f, a, b, tol=1e-10, max_depth=60):
    """Adaptive Simpson rule with Richardson correction."""

    def simpson(fa, fm, fb, h):
        return h * (fa + 4.0 * fm + fb) / 6.0

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, m - a)
        right = simpson(fm, frm, fb, b - m)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return (recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1))

    if a == b:
        return 0.0
    fa, fb, fm = f(a), f(b), f(0.5 * (a + b))
    return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, max_depth)


def fourier_transform(f, a, b, lam, **kwargs):
    """``int_a^b f(t) exp(-2 pi i lam t) dt`` by composite Gauss-Legendre.

    The node density is raised with ``|lam|`` so each panel sees a bounded
    number of oscillations.
    """
    per_unit = kwargs.pop("nodes_per_unit", 64)
    per_unit = min(max(per_unit, int(8 * abs(lam)) + 16), 512)
    kwargs.setdefault("atol", 1e-15)
    return gauss_legendre(
        lambda t: f(t) * np.exp(-2j * np.pi * lam * t), a, b,
        nodes_per_unit=per_unit, **kwargs,
    )
