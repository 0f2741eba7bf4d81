"""Finite frames and their conversion to Parseval frames.

A :class:`Frame` stores its vectors as the rows of an ``(m, n)`` complex
array.  Column ``j`` of the synthesis matrix is row ``j`` of that array, so
the frame operator in ambient coordinates is ``S = X^T conj(X)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .config import BASE_TOL
from .errors import (
    AllZeroInput,
    DirectSumViolated,
    NotAFrame,
    PartitionInvalid,
    ShapeMismatch,
    SpanMismatch,
)

__all__ = [
    "Frame",
    "FrameBounds",
    "ParsevalResult",
    "UnionResult",
    "synthesis_matrix",
    "frame_operator",
    "gram_matrix",
    "frame_bounds",
    "to_parseval",
    "canonical_tight_frame",
    "symmetric_distance",
    "subframe_parseval_union",
    "transfer_coefficients",
]


@dataclass(frozen=True)
class Frame:
    """An ordered list of ``m`` vectors in ``C^n``.

    ``labels`` optionally tags each vector (frequency points, names) and
    ``basis_note`` records which coordinate system the entries refer to.
    """

    vectors: np.ndarray
    labels: tuple | None = None
    basis_note: str = ""

    def __post_init__(self):
        vecs = linalg.as_matrix(self.vectors, "frame vectors")
        vecs.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != vecs.shape[0]:
                raise ShapeMismatch(
                    f"{len(labels)} labels for {vecs.shape[0]} vectors"
                )
            object.__setattr__(self, "labels", labels)

    @property
    def dim(self):
        return self.vectors.shape[1]

    def __len__(self):
        return self.vectors.shape[0]

    def __getitem__(self, i):
        return self.vectors[i]

    def subset(self, indices):
        idx = list(indices)
        labels = None if self.labels is None else tuple(self.labels[i] for i in idx)
        return Frame(self.vectors[idx], labels, self.basis_note)


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper * (1 + 1e-12) + 1e-300:
            raise ValueError(f"invalid frame bounds ({self.lower}, {self.upper})")

    def is_parseval(self, tol=1e-9):
        return abs(self.lower - 1) <= tol and abs(self.upper - 1) <= tol

    @property
    def condition(self):
        return self.upper / self.lower


@dataclass(frozen=True)
class ParsevalResult:
    """Output of :func:`to_parseval`.

    ``parseval.vectors == transfer @ frame.vectors``, so every output vector
    is an explicit combination of the input vectors.  ``w`` is the partial
    isometry from the polar decomposition and its columns are the Parseval
    vectors in the coordinates of ``onb_used``.
    """

    parseval: Frame
    transfer: np.ndarray
    onb_used: np.ndarray
    w: np.ndarray
    span_dim: int
    pivots: tuple = ()


def _vectors(frame):
    return frame.vectors if isinstance(frame, Frame) else linalg.as_matrix(frame)


def synthesis_matrix(frame, onb, tol=BASE_TOL):
    """Coefficients of the frame vectors in ``onb``, one column per vector.

    Raises
    ------
    SpanMismatch
        If a vector has a residual above ``tol`` (relative to its norm)
        outside ``span(onb)``.
    """
    x = _vectors(frame)
    e = linalg.as_matrix(onb, "onb")
    if e.shape[1] != x.shape[1]:
        raise ShapeMismatch(f"onb lives in C^{e.shape[1]}, frame in C^{x.shape[1]}")
    coeffs = x @ e.conj().T
    resid = np.linalg.norm(x - coeffs @ e, axis=1)
    norms = np.linalg.norm(x, axis=1)
    bad = resid > tol * np.maximum(norms, 1.0)
    if np.any(bad):
        j = int(np.argmax(bad))
        raise SpanMismatch(f"vector {j} leaves span(onb) by {resid[j]:.3e}")
    return np.ascontiguousarray(coeffs.T)


def frame_operator(frame):
    """``S = sum_k f_k f_k^H`` as an ``n x n`` Hermitian matrix."""
    x = _vectors(frame)
    s = x.T @ x.conj()
    return 0.5 * (s + s.conj().T)


def gram_matrix(frame):
    """``G[i, j] = <f_j, f_i>``, i.e. ``T^H T`` for the synthesis matrix ``T``."""
    x = _vectors(frame)
    g = x.conj() @ x.T
    return 0.5 * (g + g.conj().T)


def frame_bounds(frame, *, on_span=False, tol_rank=BASE_TOL, backend=None):
    """Optimal frame bounds: extreme eigenvalues of the frame operator.

    With ``on_span=True`` the bounds are taken on the span of the vectors
    (nonzero eigenvalues only), computed from whichever of ``S`` or the Gram
    matrix is smaller.  Otherwise the vectors must span ``C^n``.

    Raises
    ------
    NotAFrame
        If fewer vectors than dimensions are given (ambient mode) or the
        lower bound is not above ``tol_rank``.
    """
    x = _vectors(frame)
    m, n = x.shape
    if not on_span:
        if m < n:
            raise NotAFrame(f"{m} vectors cannot span C^{n}")
        evals, _ = linalg.eigh(frame_operator(x), backend=backend)
        if evals[0] <= tol_rank * max(evals[-1], 1.0):
            raise NotAFrame(f"lower frame bound {evals[0]:.3e} is not positive")
        return FrameBounds(float(max(evals[0], 0.0)), float(evals[-1]))
    mat = gram_matrix(x) if m <= n else frame_operator(x)
    evals, _ = linalg.eigh(mat, backend=backend)
    top = evals[-1]
    if top <= tol_rank:
        raise NotAFrame("all frame vectors are numerically zero")
    nonzero = evals[evals > tol_rank * top]
    return FrameBounds(float(nonzero[0]), float(top))


def to_parseval(frame, *, subspace=False, order=None, onb=None, tol_rank=BASE_TOL,
                backend=None):
    """Symmetric-approximation Parseval frame of ``frame``.

    Steps: Gram-Schmidt on the frame (first-come pivots) gives an ONB and the
    coefficient matrix ``M`` with ``X = M E``; the synthesis matrix is
    ``T = M^T``; its polar factor ``W`` yields the output ``G = W^T E``.

    Parameters
    ----------
    frame : Frame
    subspace : bool
        Accept frames that only span a subspace of ``C^n``; the result is then
        a Parseval frame for that span.
    order : sequence of int, optional
        Gram-Schmidt visiting order.  Any order gives the same output frame
        (only the internal ONB changes).
    onb : array_like, optional
        Use these orthonormal rows instead of Gram-Schmidt.  They must span
        exactly the span of the frame.
    """
    x = _vectors(frame)
    m, n = x.shape
    if onb is None:
        try:
            gs = linalg.gram_schmidt(x, tol_rank, order=order, backend=backend)
        except AllZeroInput as exc:
            raise NotAFrame(str(exc)) from exc
        e, coeffs, pivots = gs.onb, gs.coeffs, gs.pivot_order
        r_mat = gs.basis_in_vectors()
    else:
        e = linalg.as_matrix(onb, "onb")
        coeffs = synthesis_matrix(x, e, tol=max(tol_rank, BASE_TOL)).T
        pivots = ()
        r_mat = np.linalg.pinv(coeffs)
        if np.linalg.norm(r_mat @ x - e) > 1e-8 * np.sqrt(e.shape[0]):
            raise SpanMismatch("supplied onb is not contained in the span of the frame")
    span_dim = e.shape[0]
    if span_dim < n and not subspace:
        raise NotAFrame(
            f"vectors span a {span_dim}-dimensional subspace of C^{n}; "
            "pass subspace=True to accept a Parseval frame for the span"
        )
    t = coeffs.T
    pol = linalg.polar_decompose(t, backend=backend)
    w = pol.w
    g = w.T @ e
    transfer = w.T @ r_mat
    labels = frame.labels if isinstance(frame, Frame) else None
    note = frame.basis_note if isinstance(frame, Frame) else ""
    out = Frame(g, labels, note)
    return ParsevalResult(out, transfer, e, w, span_dim, tuple(pivots))


def canonical_tight_frame(frame, **eigh_kwargs):
    """``{S^(-1/2) f_k}`` for a frame spanning ``C^n``."""
    x = _vectors(frame)
    s_inv_half = linalg.herm_inv_sqrt(frame_operator(x), **eigh_kwargs)
    g = x @ s_inv_half.T
    labels = frame.labels if isinstance(frame, Frame) else None
    return Frame(g, labels, frame.basis_note if isinstance(frame, Frame) else "")


def symmetric_distance(a, b):
    """``sum_j ||a_j - b_j||^2``."""
    xa, xb = _vectors(a), _vectors(b)
    if xa.shape != xb.shape:
        raise ShapeMismatch(f"frames have shapes {xa.shape} and {xb.shape}")
    return float(np.sum(np.abs(xa - xb) ** 2))


def transfer_coefficients(result, measurements):
    """Turn measurements ``<f, f_j>`` into Parseval coefficients ``<f, g_i>``."""
    meas = np.asarray(measurements, dtype=np.complex128)
    c = result.transfer
    if meas.ndim != 1 or meas.shape[0] != c.shape[1]:
        raise ShapeMismatch(
            f"expected {c.shape[1]} measurements, got shape {meas.shape}"
        )
    return c.conj() @ meas


@dataclass(frozen=True)
class UnionResult:
    """Union of per-part Parseval frames.

    ``frame`` lives in *block coordinates*: the concatenation of the parts'
    orthonormal bases (``blocks``, rows in ambient coordinates).  Those
    coordinates are orthonormal only when the parts span mutually orthogonal
    subspaces; ``ambient`` is the same frame expressed in ``C^n``.
    """

    frame: Frame
    ambient: Frame
    synthesis: np.ndarray
    blocks: np.ndarray
    full: ParsevalResult
    deviation: float
    coincides: bool
    block_bounds: FrameBounds
    ambient_bounds: FrameBounds
    part_dims: tuple = field(default=())


def _check_partition(partition, m):
    parts = [list(map(int, p)) for p in partition]
    if any(len(p) == 0 for p in parts):
        raise PartitionInvalid("empty part in partition")
    flat = [i for p in parts for i in p]
    if sorted(flat) != list(range(m)):
        raise PartitionInvalid(
            f"partition must cover indices 0..{m - 1} exactly once, got {parts}"
        )
    return parts


def subframe_parseval_union(frame, partition, *, tol_rank=BASE_TOL,
                            coincide_tol=1e-8, backend=None):
    """Parseval-convert each part of ``partition`` separately and join the results.

    The union vector at index ``i`` is the Parseval vector obtained for
    ``f_i`` inside its own part.  The parts must form a direct sum: the sum of
    their span dimensions equals the dimension of the whole span.

    Raises
    ------
    PartitionInvalid
    DirectSumViolated
    """
    x = _vectors(frame)
    m, n = x.shape
    parts = _check_partition(partition, m)
    full = to_parseval(x, subspace=True, tol_rank=tol_rank, backend=backend)
    sub = [to_parseval(x[p], subspace=True, tol_rank=tol_rank, backend=backend)
           for p in parts]
    dims = tuple(s.span_dim for s in sub)
    if sum(dims) != full.span_dim:
        raise DirectSumViolated(
            f"part dimensions {dims} sum to {sum(dims)}, span has dimension {full.span_dim}"
        )
    blocks = np.vstack([s.onb_used for s in sub])
    synth = np.zeros((sum(dims), m), dtype=np.complex128)
    row = 0
    for p, s in zip(parts, sub):
        synth[row:row + s.span_dim, p] = s.w
        row += s.span_dim
    ambient = synth.T @ blocks
    deviation = float(np.max(np.linalg.norm(ambient - full.parseval.vectors, axis=1)))
    labels = frame.labels if isinstance(frame, Frame) else None
    block_frame = Frame(synth.T, labels, "concatenated sub-ONB coordinates")
    ambient_frame = Frame(ambient, labels, frame.basis_note if isinstance(frame, Frame) else "")
    return UnionResult(
        frame=block_frame,
        ambient=ambient_frame,
        synthesis=synth,
        blocks=blocks,
        full=full,
        deviation=deviation,
        coincides=deviation <= coincide_tol,
        block_bounds=frame_bounds(block_frame, on_span=True, backend=backend),
        ambient_bounds=frame_bounds(ambient_frame, on_span=True, backend=backend),
        part_dims=dims,
    )
