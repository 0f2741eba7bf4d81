"""Archimedean spiral sampling and exponential (Fourier) frames.

The spiral with pitch ``c`` is ``theta -> (c theta cos 2 pi theta, c theta sin 2 pi theta)``.
Sample points are marched along it so that consecutive points are less than
``2 delta`` apart in arc length, which together with ``R c < 1/2`` and
``(c/2 + delta) R < 1/4`` makes the exponentials a frame on ``B(0, R)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadInterval, DimensionMismatch, DuplicateLambda, InadmissibleSpec
from .frames import Frame

__all__ = [
    "SpiralSpec",
    "SamplePointSet",
    "DiskGrid",
    "CoveringReport",
    "ARC_MODES",
    "spiral_point",
    "arc_length",
    "select_spiral_points",
    "covering_radius",
    "min_separation",
    "interval_exponential_frame",
    "disk_grid_frame",
    "example_thetas",
]

ARC_MODES = ("paper", "exact")

# (1/16, 1/8, 1/4): the three-point choice worked by hand for c = 1, R = delta = 1/4
example_thetas = (1 / 16, 1 / 8, 1 / 4)


@dataclass(frozen=True)
class SpiralSpec:
    c: float
    R: float
    delta: float

    def violations(self):
        """Names of the admissibility inequalities this spec fails."""
        out = []
        for name, value in (("c > 0", self.c), ("R > 0", self.R), ("delta > 0", self.delta)):
            if not value > 0:
                out.append(name)
        if out:
            return out
        if not self.R * self.c < 0.5:
            out.append("R*c < 1/2")
        if not (self.c / 2 + self.delta) * self.R < 0.25:
            out.append("(c/2 + delta)*R < 1/4")
        return out

    @property
    def admissible(self):
        return not self.violations()

    def check(self):
        bad = self.violations()
        if bad:
            detail = (f"c={self.c}, R={self.R}, delta={self.delta}: "
                      f"R*c={self.R * self.c:.6g}, "
                      f"(c/2 + delta)*R={(self.c / 2 + self.delta) * self.R:.6g}")
            raise InadmissibleSpec(bad[0], detail)
        return self


@dataclass(frozen=True)
class SamplePointSet:
    """Frequency points, plus the spiral parameters that generated them if any."""

    points: np.ndarray
    thetas: np.ndarray | None = None
    min_separation: float = math.inf
    spec: SpiralSpec | None = None
    mode: str | None = None

    @classmethod
    def from_points(cls, points, **kwargs):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[0] == 1 and np.ndim(points) == 1 and len(points) != 2:
            pts = pts.T
        return cls(points=pts, min_separation=min_separation(pts), **kwargs)

    @property
    def ndim(self):
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def gaps(self):
        """Arc-length gaps: origin to the first point, then between neighbours."""
        if self.thetas is None or self.spec is None:
            raise ValueError("gaps need spiral-derived points")
        ts = np.concatenate([[0.0], self.thetas])
        return np.array([arc_length(self.spec.c, a, b, self.mode or "paper")
                         for a, b in zip(ts[:-1], ts[1:])])


def min_separation(points):
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if len(pts) < 2:
        return math.inf
    d = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=-1)
    d[np.diag_indices(len(pts))] = np.inf
    return float(d.min())


def spiral_point(c, theta):
    if theta < 0:
        raise ValueError("theta must be nonnegative")
    angle = 2 * math.pi * theta
    return np.array([c * theta * math.cos(angle), c * theta * math.sin(angle)])


def _speed_antiderivative(t):
    k = 2 * math.pi
    return 0.5 * (t * math.sqrt(1.0 + (k * t) ** 2) + math.asinh(k * t) / k)


def arc_length(c, theta1, theta2, mode="paper"):
    """Arc length of the spiral between two parameter values.

    ``mode="paper"`` evaluates ``c [(t2 - t1) + (4/3) pi^2 (t2^3 - t1^3)]``,
    the closed form used for the hand-worked three-point example.  It drops
    the square root of the true speed ``c sqrt(1 + 4 pi^2 theta^2)`` and so
    overestimates the length.  ``mode="exact"`` uses the antiderivative of the
    true speed, ``(t sqrt(1 + k^2 t^2) + asinh(k t) / k) / 2`` with ``k = 2 pi``.
    """
    if theta2 < theta1:
        raise BadInterval(f"theta2={theta2} < theta1={theta1}")
    if theta1 < 0:
        raise BadInterval("theta must be nonnegative")
    if mode == "paper":
        return c * ((theta2 - theta1) + (4.0 / 3.0) * math.pi ** 2 * (theta2 ** 3 - theta1 ** 3))
    if mode == "exact":
        return c * (_speed_antiderivative(theta2) - _speed_antiderivative(theta1))
    raise ValueError(f"mode must be one of {ARC_MODES}, got {mode!r}")


def _next_theta(c, start, target, mode):
    # largest-found theta with arc_length(start, theta) <= target, by bisection
    lo, hi = start, start + max(target / c, 1e-12)
    while arc_length(c, start, hi, mode) <= target:
        lo, hi = hi, start + 2 * (hi - start)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if arc_length(c, start, mid, mode) <= target:
            lo = mid
        else:
            hi = mid
    return lo


def select_spiral_points(spec, count=None, *, stop_radius=None, mode="paper", fill=0.9):
    """March along the spiral placing points ``fill * 2 delta`` apart in arc length.

    The first point sits at arc length ``fill * 2 delta`` from the origin.
    Either ``count`` points are produced, or points are added until one lies
    at radius ``c theta >= stop_radius``.

    Raises
    ------
    InadmissibleSpec
    """
    spec.check()
    if (count is None) == (stop_radius is None):
        raise ValueError("give exactly one of count or stop_radius")
    if not 0 < fill < 1:
        raise ValueError("fill must lie in (0, 1)")
    if count is not None and count < 1:
        raise ValueError("count must be at least 1")
    target = fill * 2 * spec.delta
    thetas = []
    theta = 0.0
    while True:
        theta = _next_theta(spec.c, theta, target, mode)
        thetas.append(theta)
        if count is not None and len(thetas) == count:
            break
        if stop_radius is not None and spec.c * theta >= stop_radius:
            break
    thetas = np.array(thetas)
    pts = np.array([spiral_point(spec.c, t) for t in thetas])
    return SamplePointSet(points=pts, thetas=thetas, min_separation=min_separation(pts),
                          spec=spec, mode=mode)


@dataclass(frozen=True)
class CoveringReport:
    rho: float
    region_radius: float
    ball_R: float

    @property
    def product(self):
        return self.ball_R * self.rho

    @property
    def satisfied(self):
        return self.product < 0.25


def covering_radius(points, ball_R, grid_density=200, region_radius=None):
    """Grid estimate of ``sup dist(mu, Lambda)`` over a disk (or interval) of frequencies.

    The supremum is restricted to ``|mu| <= region_radius``; by default that is
    ``max |lambda| + 2 delta`` for spiral-derived sets and ``max |lambda|``
    otherwise.  A finite set covers a bounded region at best, so a failed
    check on a short spiral segment says nothing about the infinite set.
    """
    if grid_density < 10:
        raise ValueError("grid_density must be at least 10")
    if isinstance(points, SamplePointSet):
        pset = points
    else:
        pset = SamplePointSet.from_points(points)
    pts = pset.points
    if region_radius is None:
        region_radius = float(np.max(np.linalg.norm(pts, axis=1)))
        if pset.spec is not None:
            region_radius += 2 * pset.spec.delta
    axis = np.linspace(-region_radius, region_radius, grid_density + 1)
    if pts.shape[1] == 1:
        mu = axis[:, None]
    elif pts.shape[1] == 2:
        X, Y = np.meshgrid(axis, axis, indexing="ij")
        mu = np.column_stack([X.ravel(), Y.ravel()])
        mu = mu[np.hypot(mu[:, 0], mu[:, 1]) <= region_radius * (1 + 1e-12)]
    else:
        raise DimensionMismatch("covering_radius supports 1-D and 2-D point sets")
    rho2 = 0.0
    p2 = np.sum(pts * pts, axis=1)
    for chunk in np.array_split(mu, max(1, len(mu) * len(pts) // 4_000_000)):
        d2 = np.sum(chunk * chunk, axis=1)[:, None] + p2[None, :] - 2.0 * chunk @ pts.T
        rho2 = max(rho2, float(d2.min(axis=1).max()))
    rho = math.sqrt(max(rho2, 0.0))
    return CoveringReport(rho=rho, region_radius=float(region_radius), ball_R=float(ball_R))


def interval_exponential_frame(lambdas, halfwidth=0.5):
    """Exponentials ``exp(2 pi i lambda x)`` on ``[-halfwidth, halfwidth]``.

    The functions are represented through their exact Gram matrix
    ``G[j, k] = 2 h sinc(2 h (lambda_j - lambda_k))``; the frame vectors are
    the rows of the Cholesky factor ``L`` (``G = L L^H``), i.e. coordinates in
    the orthonormal basis that Gram-Schmidt extracts from the functions in
    order.

    Returns
    -------
    frame : Frame
    gram : ndarray
    """
    lam = np.asarray(lambdas, dtype=float).ravel()
    if len(np.unique(lam)) != len(lam):
        raise DuplicateLambda(f"repeated frequency in {lam.tolist()}")
    width = 2.0 * halfwidth
    gram = width * np.sinc(width * (lam[:, None] - lam[None, :]))
    chol = np.linalg.cholesky(gram)
    note = f"Gram-Schmidt coordinates of exp(2 pi i lambda x) on [-{halfwidth}, {halfwidth}]"
    return Frame(chol.astype(np.complex128), tuple(lam.tolist()), note), gram


@dataclass(frozen=True)
class DiskGrid:
    """Sampling nodes for ``B(0, R)``: midpoints of an ``N x N`` polar partition.

    ``kind="square"`` instead places ``N x N`` nodes ``(i/N, j/N) * side`` on a
    square, where integer frequencies give exactly orthogonal vectors.
    """

    R: float
    N: int
    nodes: np.ndarray
    polar: np.ndarray | None
    weights: np.ndarray
    kind: str = "disk"

    @classmethod
    def midpoint(cls, R, N):
        if N < 1 or R <= 0:
            raise ValueError("need N >= 1 and R > 0")
        dr = R / N
        dt = 2 * math.pi / N
        r = (np.arange(N) + 0.5) * dr
        t = (np.arange(N) + 0.5) * dt
        rr, tt = np.meshgrid(r, t, indexing="ij")
        rr, tt = rr.ravel(), tt.ravel()
        nodes = np.column_stack([rr * np.cos(tt), rr * np.sin(tt)])
        return cls(R=R, N=N, nodes=nodes, polar=np.column_stack([rr, tt]),
                   weights=rr * dr * dt)

    @classmethod
    def square(cls, N, side=1.0):
        g = np.arange(N) * (side / N)
        X, Y = np.meshgrid(g, g, indexing="ij")
        nodes = np.column_stack([X.ravel(), Y.ravel()])
        return cls(R=side, N=N, nodes=nodes, polar=None,
                   weights=np.full(N * N, (side / N) ** 2), kind="square")

    def __len__(self):
        return self.nodes.shape[0]

    def spec(self):
        return {"kind": self.kind, "R": self.R, "N": self.N}


def disk_grid_frame(points, grid, weighted=False):
    """Exponentials sampled at the grid nodes, one vector of length ``N^2`` each.

    With ``weighted=True`` every entry is scaled by the square root of its
    area element, so plain dot products approximate ``L^2(B(0, R))`` inner
    products.
    """
    pset = points if isinstance(points, SamplePointSet) else SamplePointSet.from_points(points)
    lam = pset.points
    if lam.shape[1] != 2:
        raise DimensionMismatch("disk_grid_frame needs 2-D frequency points")
    vecs = np.exp(2j * np.pi * (lam @ grid.nodes.T))
    if weighted:
        vecs = vecs * np.sqrt(grid.weights)[None, :]
    labels = tuple(tuple(p) for p in lam.tolist())
    note = f"{grid.kind}-grid samples, R={grid.R}, N={grid.N}" + (", weighted" if weighted else "")
    return Frame(vecs, labels, note)
