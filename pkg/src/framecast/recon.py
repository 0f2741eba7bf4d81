"""Reconstruction from frame coefficients and truncation error bounds."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import linalg
from .errors import IllConditioned, NotAFrame, ShapeMismatch
from .frames import Frame, ParsevalResult, frame_operator, gram_matrix

__all__ = [
    "TruncationBoundInput",
    "ErrorBoundReport",
    "TruncationSplit",
    "dual_frame",
    "reconstruct",
    "truncate_split",
    "fourier_decay_bound",
    "highdim_decay_bound",
    "truncation_bound",
    "highdim_truncation_bound",
    "tail_sum",
    "ball_volume",
]

MAX_CONDITION = 1e12
# Gram/frame-operator eigenvalues below this fraction of the largest are
# linear dependencies, not small frame bounds
_NULL_TOL = 1e-14


def dual_frame(frame, *, max_condition=MAX_CONDITION, backend=None):
    """Canonical dual ``{S^+ f_n}`` on the span of the frame.

    Uses the eigendecomposition of the smaller of the frame operator and the
    Gram matrix.

    Raises
    ------
    NotAFrame
        If every vector is zero.
    IllConditioned
        If the frame bounds on the span differ by more than ``max_condition``.
    """
    x = frame.vectors if isinstance(frame, Frame) else linalg.as_matrix(frame)
    m, n = x.shape
    use_gram = m <= n
    mat = gram_matrix(x) if use_gram else frame_operator(x)
    evals, vecs = linalg.eigh(mat, backend=backend)
    top = evals[-1]
    if top <= 0:
        raise NotAFrame("frame vectors are all zero")
    keep = evals > _NULL_TOL * top
    lo = evals[keep][0]
    if top / lo > max_condition:
        raise IllConditioned(f"frame condition number {top / lo:.3e} exceeds {max_condition:.1e}")
    v = vecs[:, keep]
    pinv = (v / evals[keep]) @ v.conj().T
    if use_gram:
        # S^+ T = T G^+  =>  rows: (G^+)^T X
        return pinv.T @ x
    return x @ pinv.T


def reconstruct(frame, coefficients, *, dual=False, backend=None):
    """Rebuild a vector from frame coefficients.

    With ``dual=False`` the frame is taken to be Parseval and the result is
    ``sum_i c_i g_i`` with ``c_i = <f, g_i>``.  With ``dual=True``,
    ``c_n = <f, f_n>`` and the result is ``sum_n c_n S^+ f_n``.
    """
    if isinstance(frame, ParsevalResult):
        frame = frame.parseval
    x = frame.vectors if isinstance(frame, Frame) else linalg.as_matrix(frame)
    c = np.asarray(coefficients, dtype=np.complex128)
    if c.ndim != 1 or c.shape[0] != x.shape[0]:
        raise ShapeMismatch(f"expected {x.shape[0]} coefficients, got shape {c.shape}")
    basis = dual_frame(x, backend=backend) if dual else x
    return basis.T @ c


def analysis(frame, f):
    """Measurements ``<f, f_n>`` for every frame vector."""
    x = frame.vectors if isinstance(frame, Frame) else linalg.as_matrix(frame)
    return x.conj() @ np.asarray(f, dtype=np.complex128)


@dataclass(frozen=True)
class TruncationSplit:
    f_full: np.ndarray
    f_tilde: np.ndarray
    f_eps_norm: float


def truncate_split(frame, full_coefficients, N_tilde, *, backend=None):
    """Split ``f = f~ + f_eps`` keeping the first ``N_tilde`` dual-frame terms.

    Terms are kept in input order.
    """
    x = frame.vectors if isinstance(frame, Frame) else linalg.as_matrix(frame)
    c = np.asarray(full_coefficients, dtype=np.complex128)
    m = x.shape[0]
    if c.shape != (m,):
        raise ShapeMismatch(f"expected {m} coefficients, got shape {c.shape}")
    if not 1 <= N_tilde <= m:
        raise ValueError(f"N_tilde must lie in 1..{m}, got {N_tilde}")
    d = dual_frame(x, backend=backend)
    full = d.T @ c
    tilde = d[:N_tilde].T @ c[:N_tilde]
    return TruncationSplit(full, tilde, float(np.linalg.norm(full - tilde)))


def fourier_decay_bound(k, deriv_l1, lambda_abs):
    """``|f^(lambda)| <= ||f^(k)||_1 / (2 pi |lambda|)^k`` for ``f`` vanishing with its derivatives at the ends."""
    if k < 1 or lambda_abs <= 0:
        raise ValueError("need k >= 1 and lambda_abs > 0")
    return deriv_l1 / (2 * math.pi * lambda_abs) ** k


def highdim_decay_bound(n_dim, k, partial_l1, lambda_norm):
    """``(sqrt(n)/(2 pi))^k ||d^k f/dt_j^k||_1 / |lambda|^k``, ``j`` the dominant coordinate of ``lambda``."""
    if n_dim < 1 or k < 1 or lambda_norm <= 0:
        raise ValueError("need n_dim >= 1, k >= 1 and lambda_norm > 0")
    return (math.sqrt(n_dim) / (2 * math.pi)) ** k * partial_l1 / lambda_norm ** k


@dataclass(frozen=True)
class TruncationBoundInput:
    """Inputs of the one-dimensional truncation bound.

    ``k`` smoothness order (>= 2), ``deriv_l1 = ||f^(k)||_{L1(-R, R)}``,
    ``A`` lower frame bound, ``R`` interval half-width, ``N_tilde`` terms kept.
    """

    k: int
    deriv_l1: float
    A: float
    R: float
    N_tilde: int

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 2:
            raise ValueError(f"k must be an integer >= 2, got {self.k}")
        if int(self.N_tilde) != self.N_tilde or self.N_tilde < 1:
            raise ValueError(f"N_tilde must be a positive integer, got {self.N_tilde}")
        for name in ("A", "R"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.deriv_l1 < 0:
            raise ValueError("deriv_l1 must be nonnegative")


@dataclass(frozen=True)
class ErrorBoundReport:
    bound: float
    formula_id: str
    inputs: dict

    def as_dict(self):
        return asdict(self)


def truncation_bound(inp, formula="thm32", spacing=1.0):
    """Upper bound on ``||f - f~||_{L2(-R, R)}`` after keeping ``N_tilde`` terms.

    ``thm32``: ``sqrt(2R)/A * ||f^(k)||_1/(2 pi)^k * 2/((k-1)(N+1)^(k-1))``.
    ``eq35``: the harmonic special case ``A = 1, R = 1/2, k = 2``,
    ``||f''||_1/(2 pi)^2 * 2/(N+1)``.

    ``spacing`` is the constant ``c`` in the assumption ``|lambda_n| >= c n``
    under which the tail sum is compared with an integral; it scales the
    bound by ``c^-k``.
    """
    k, N = inp.k, inp.N_tilde
    if formula == "thm32":
        bound = (math.sqrt(2 * inp.R) / inp.A * inp.deriv_l1 / (2 * math.pi) ** k
                 * 2.0 / ((k - 1) * (N + 1) ** (k - 1)))
    elif formula == "eq35":
        if not (k == 2 and inp.A == 1 and inp.R == 0.5):
            raise ValueError("eq35 applies only to k=2, A=1, R=1/2")
        bound = inp.deriv_l1 / (2 * math.pi) ** 2 * 2.0 / (N + 1)
    else:
        raise ValueError(f"unknown formula {formula!r}")
    bound /= spacing ** k
    inputs = asdict(inp)
    inputs["spacing"] = spacing
    return ErrorBoundReport(bound=bound, formula_id=formula, inputs=inputs)


def ball_volume(n_dim, R):
    return math.pi ** (n_dim / 2) * R ** n_dim / math.gamma(n_dim / 2 + 1)


def highdim_truncation_bound(n_dim, k, partial_l1, A, R, lambda_tail):
    """``sqrt(vol B(0,R))/A * (sqrt(n)/(2 pi))^k * ||d^k f/dt_j^k||_1 * sum |lambda|^-k``.

    ``lambda_tail`` is the sum of ``|lambda|^-k`` over the discarded points.
    """
    if n_dim < 1 or k < 1 or A <= 0 or R <= 0 or lambda_tail < 0:
        raise ValueError("invalid inputs to highdim_truncation_bound")
    bound = (math.sqrt(ball_volume(n_dim, R)) / A * (math.sqrt(n_dim) / (2 * math.pi)) ** k
             * partial_l1 * lambda_tail)
    inputs = dict(n_dim=n_dim, k=k, partial_l1=partial_l1, A=A, R=R, lambda_tail=lambda_tail)
    return ErrorBoundReport(bound=bound, formula_id="highdim", inputs=inputs)


def tail_sum(frame_labels, fhat_values, N):
    """``sum |f^(lambda)|`` over the labels past position ``N`` in order of ``|lambda|``.

    Labels are sorted by magnitude (stably) before cutting, so for
    ``lambda_k = k`` with ``k`` in ``Z`` listed as ``0, 1, -1, 2, -2, ...``
    the first ``2N + 1`` entries are ``|k| <= N``.
    """
    lab = np.asarray(frame_labels, dtype=float)
    vals = np.abs(np.asarray(fhat_values, dtype=np.complex128))
    if lab.shape[0] != vals.shape[0]:
        raise ShapeMismatch("labels and values differ in length")
    if N < 0:
        raise ValueError("N must be nonnegative")
    mags = np.abs(lab) if lab.ndim == 1 else np.linalg.norm(lab, axis=1)
    order = np.argsort(mags, kind="stable")
    return float(np.sum(vals[order][N:]))
