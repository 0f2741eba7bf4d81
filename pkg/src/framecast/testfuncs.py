"""Smooth compactly supported test functions with closed-form derivatives.

The bump ``(1 - ((t - center)/R)^2)^p`` vanishes at ``center +- R`` together
with its first ``p - 1`` derivatives, which is what the Fourier decay
estimates require for ``k <= p``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .quadrature import _composite_nodes, fourier_transform, gauss_legendre_2d

__all__ = ["Bump", "SeparableBump", "harmonic_truncation_error", "polynomial_l1"]


def polynomial_l1(poly, a, b):
    """``int_a^b |poly(t)| dt`` exactly, splitting at the real roots inside ``(a, b)``."""
    roots = poly.roots() if poly.degree() > 0 else np.array([])
    cuts = sorted(r.real for r in roots if abs(r.imag) < 1e-12 and a < r.real < b)
    anti = poly.integ()
    edges = [a, *cuts, b]
    return float(sum(abs(anti(hi) - anti(lo)) for lo, hi in zip(edges[:-1], edges[1:])))


@dataclass(frozen=True)
class Bump:
    p: int
    R: float = 0.5
    center: float = 0.0

    @property
    def support(self):
        return self.center - self.R, self.center + self.R

    @property
    def poly(self):
        u = Polynomial([-self.center / self.R, 1.0 / self.R])
        return (1 - u * u) ** self.p

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        a, b = self.support
        return np.where((t >= a) & (t <= b), self.poly(t), 0.0)

    def derivative(self, k):
        return self.poly.deriv(k) if k > 0 else self.poly

    def deriv_l1(self, k):
        a, b = self.support
        return polynomial_l1(self.derivative(k), a, b)

    def l2_norm(self):
        a, b = self.support
        sq = self.poly * self.poly
        anti = sq.integ()
        return math.sqrt(anti(b) - anti(a))

    def fourier(self, lam):
        """``int f(t) exp(-2 pi i lam t) dt`` by Gauss-Legendre quadrature."""
        a, b = self.support
        return fourier_transform(self.poly, a, b, lam)

    def fourier_exact(self, lam):
        """Closed form of :meth:`fourier`, vectorized over ``lam``.

        Repeated integration by parts gives
        ``int_a^b P e^{-st} = sum_j (P^(j)(a) e^{-sa} - P^(j)(b) e^{-sb}) / s^(j+1)``
        with ``s = 2 pi i lam``; the sum is finite for a polynomial.
        """
        a, b = self.support
        lam = np.asarray(lam, dtype=float)
        c, h = 0.5 * (a + b), 0.5 * (b - a)
        # the sum cancels badly for small |s| h; use a centred Taylor series there
        small = 2 * math.pi * np.abs(lam) * h < 2.0
        s = 2j * math.pi * np.where(small, 1.0, lam)
        ea, eb = np.exp(-s * a), np.exp(-s * b)
        total = np.zeros(lam.shape, dtype=np.complex128)
        d = self.poly
        for j in range(self.poly.degree() + 1):
            total += (d(a) * ea - d(b) * eb) / s ** (j + 1)
            d = d.deriv()
        if np.any(small):
            shifted = self.poly(np.polynomial.Polynomial([c, 1.0]))
            sl = 2j * math.pi * np.where(small, lam, 0.0)
            series = np.zeros(lam.shape, dtype=np.complex128)
            term = np.ones(lam.shape, dtype=np.complex128)
            mono = np.polynomial.Polynomial([1.0])
            x = np.polynomial.Polynomial([0.0, 1.0])
            for k in range(60):
                anti = (shifted * mono).integ()
                series += term * (anti(h) - anti(-h))
                term = term * (-sl) / (k + 1)
                mono = mono * x
            total = np.where(small, np.exp(-sl * c) * series, total)
        return complex(total) if total.ndim == 0 else total


@dataclass(frozen=True)
class SeparableBump:
    """``g(x) g(y)`` with ``g`` a :class:`Bump`; supported in the square ``[-R, R]^2``."""

    g: Bump

    def __call__(self, x, y):
        return self.g(x) * self.g(y)

    def partial_l1(self, k):
        """``int |d^k f / dx^k|`` over the support (equal for both coordinates)."""
        a, b = self.g.support
        return self.g.deriv_l1(k) * polynomial_l1(self.g.poly, a, b)

    def fourier(self, lam, nodes_per_unit=None):
        """2-D transform by tensor Gauss-Legendre on the support square."""
        a, b = self.g.support
        lx, ly = lam
        if nodes_per_unit is None:
            nodes_per_unit = min(512, max(64, int(8 * max(abs(lx), abs(ly))) + 16))
        poly = self.g.poly
        width = b - a
        # nodes_per_unit counts per unit length; the support may be shorter
        n = max(16, int(math.ceil(nodes_per_unit * width)))
        return gauss_legendre_2d(
            lambda X, Y: poly(X) * poly(Y) * np.exp(-2j * np.pi * (lx * X + ly * Y)),
            (a, b, a, b), nodes_per_unit=n,
        )


def harmonic_truncation_error(bump, n_keep, *, quad_fhat=True, tail_terms=10 ** 6):
    """``||f - sum_{|n| <= n_keep} f^(n) e_n||_{L2[0,1]}`` measured two ways.

    Returns ``(quadrature, tail)``: a fixed 16 x 256-node Gauss-Legendre rule
    applied to the residual, and the Parseval tail ``sum_{|n| > n_keep} |f^(n)|^2``
    from closed-form coefficients.  A fixed rule is used because the squared
    residual sits at the roundoff floor, where successive-doubling agreement
    cannot be reached in relative terms.
    """
    a, b = bump.support
    if a < 0 or b > 1:
        raise ValueError("bump must be supported in [0, 1]")
    ns = np.arange(-n_keep, n_keep + 1)
    if quad_fhat:
        fhat = np.array([bump.fourier(n) for n in ns])
    else:
        fhat = bump.fourier_exact(ns)
    x, w = _composite_nodes(0.0, 1.0, 16, 256)
    resid = bump(x) - np.exp(2j * np.pi * np.outer(x, ns)) @ fhat
    quad = math.sqrt(float(np.sum(w * np.abs(resid) ** 2)))
    far = np.abs(bump.fourier_exact(np.arange(n_keep + 1, tail_terms))) ** 2
    tail = math.sqrt(2.0 * float(np.sum(far[::-1])))
    return quad, tail
