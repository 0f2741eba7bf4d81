"""Dense complex linear algebra: Gram-Schmidt, Jacobi SVD, polar factors.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  Vectors
handed to :func:`gram_schmidt` are the *rows* of the input.  The inner product
is conjugate-linear in its second argument, ``<x, y> = sum x_i conj(y_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._backend import get_kernels
from .config import BASE_TOL, JACOBI_TOL, MAX_SWEEPS, RANK_TOL
from .errors import AllZeroInput, NoConvergence, NotPositiveDefinite

__all__ = [
    "as_matrix",
    "GramSchmidtResult",
    "PolarDecomposition",
    "IsometryCheck",
    "gram_schmidt",
    "svd",
    "polar_decompose",
    "eigh",
    "herm_inv_sqrt",
    "is_partial_isometry",
]


def as_matrix(a, name="matrix"):
    """Validate ``a`` as a non-empty 2-D matrix and return a complex copy."""
    arr = np.array(a, dtype=np.complex128, copy=True)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and column")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return np.ascontiguousarray(arr)


@dataclass(frozen=True)
class GramSchmidtResult:
    """Orthonormal basis extracted from a list of vectors.

    Attributes
    ----------
    onb : ndarray, shape (r, n)
        Orthonormal rows.
    coeffs : ndarray, shape (m, r)
        ``vectors == coeffs @ onb``.  Rows belonging to pivots are lower
        triangular with a positive real diagonal.
    pivot_order : tuple of int
        Input rows that generated the basis, in order.
    """

    onb: np.ndarray
    coeffs: np.ndarray
    pivot_order: tuple

    @property
    def rank(self):
        return len(self.pivot_order)

    def triangular_block(self):
        """The square lower-triangular block ``coeffs[pivot_order]``."""
        return self.coeffs[list(self.pivot_order)]

    def basis_in_vectors(self):
        """Matrix ``R`` (r x m) expressing the basis through the input vectors.

        ``onb == R @ vectors``; columns of non-pivot vectors are zero.
        """
        m = self.coeffs.shape[0]
        block = self.triangular_block()
        r = len(self.pivot_order)
        inv = _lower_triangular_inverse(block)
        out = np.zeros((r, m), dtype=np.complex128)
        out[:, list(self.pivot_order)] = inv
        return out

    def monic_coeffs(self):
        """Coefficients against the orthogonal, *unnormalized* basis.

        Column ``k`` is divided by the diagonal entry of pivot ``k``, so each
        pivot vector has coefficient 1 on its own basis vector.  This is the
        bookkeeping of hand-worked Gram-Schmidt, where ``e2 = f2 - c21 f1``.
        """
        diag = np.array(
            [self.coeffs[p, k] for k, p in enumerate(self.pivot_order)]
        )
        return self.coeffs / diag[None, :]


def _lower_triangular_inverse(block):
    r = block.shape[0]
    inv = np.zeros((r, r), dtype=np.complex128)
    eye = np.eye(r, dtype=np.complex128)
    # forward substitution, one column of the identity at a time
    for col in range(r):
        b = eye[:, col]
        x = np.zeros(r, dtype=np.complex128)
        for i in range(r):
            x[i] = (b[i] - block[i, :i] @ x[:i]) / block[i, i]
        inv[:, col] = x
    return inv


def gram_schmidt(vectors, tol_rank=BASE_TOL, *, order=None, backend=None):
    """Orthonormalize the rows of ``vectors``.

    Modified Gram-Schmidt with one reorthogonalization pass.  Vectors are
    visited in input order (or ``order`` if given) and a vector whose residual
    norm is at most ``tol_rank`` times its own norm is treated as dependent:
    it is skipped as a pivot but still expressed in ``coeffs``.

    Parameters
    ----------
    vectors : array_like, shape (m, n)
    tol_rank : float
        Relative residual threshold for dependence.
    order : sequence of int, optional
        Permutation of ``range(m)`` fixing the visiting order.  ``coeffs``
        rows stay aligned with the original input rows.
    backend : {"cython", "python"}, optional

    Raises
    ------
    AllZeroInput
        If every vector has norm at most ``tol_rank``.
    """
    x = as_matrix(vectors, "vectors")
    m = x.shape[0]
    norms = np.linalg.norm(x, axis=1)
    if np.all(norms <= tol_rank):
        raise AllZeroInput("every input vector is numerically zero")
    if order is None:
        perm = np.arange(m)
    else:
        perm = np.asarray(order, dtype=int)
        if sorted(perm.tolist()) != list(range(m)):
            raise ValueError("order must be a permutation of range(m)")
    kernels = get_kernels(backend)
    onb, coeffs_perm, pivots_perm = kernels.mgs(
        np.ascontiguousarray(x[perm]), float(tol_rank)
    )
    pivots = tuple(int(perm[p]) for p in pivots_perm)
    coeffs = np.zeros((m, len(pivots)), dtype=np.complex128)
    coeffs[perm] = coeffs_perm
    dependent = [i for i in range(m) if i not in set(pivots)]
    if dependent:
        coeffs[dependent] = x[dependent] @ onb.conj().T
    return GramSchmidtResult(onb=onb, coeffs=coeffs, pivot_order=pivots)


def svd(a, *, rank_tol=RANK_TOL, jacobi_tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS,
        backend=None):
    """Compact singular value decomposition by one-sided Jacobi rotations.

    Works on the taller orientation of ``a`` (transposing when it has fewer
    rows than columns).  Singular values below ``rank_tol * sigma_max`` are
    discarded, so ``u`` is ``rows x r`` and ``v`` is ``cols x r`` with
    ``r`` the numerical rank and ``a ~= u @ diag(sigma) @ v.conj().T``.

    Raises
    ------
    NoConvergence
        If a sweep with no rotation is not reached within ``max_sweeps``.
    """
    a = as_matrix(a, "a")
    rows, cols = a.shape
    wide = rows < cols
    work = a.conj().T if wide else a
    # kernel orthogonalizes rows, i.e. the columns of ``work``
    w_rows = np.ascontiguousarray(work.T)
    scale = np.linalg.norm(work)
    floor = (np.finfo(float).eps * scale) ** 2 if scale > 0 else np.finfo(float).tiny
    kernels = get_kernels(backend)
    w_rows, v_rows, sweeps = kernels.hestenes(
        w_rows, float(jacobi_tol), int(max_sweeps), float(floor)
    )
    if sweeps < 0:
        raise NoConvergence(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")
    sigma = np.linalg.norm(w_rows, axis=1)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    keep = sigma > rank_tol * sigma[0] if sigma[0] > 0 else np.zeros_like(sigma, bool)
    order = order[keep]
    sigma = sigma[keep]
    u = (w_rows[order] / sigma[:, None]).T
    v = v_rows[order].T
    if wide:
        # work = a^H = u s v^H  =>  a = v s u^H
        u, v = v, u
    return np.ascontiguousarray(u), sigma, np.ascontiguousarray(v)


@dataclass(frozen=True)
class PolarDecomposition:
    """``t == w @ p`` with ``w`` a partial isometry and ``p = (t^H t)^(1/2)``."""

    w: np.ndarray
    p: np.ndarray


def polar_decompose(t, **svd_kwargs):
    """Right polar decomposition from the compact SVD: ``w = u v^H``, ``p = v diag(s) v^H``.

    For rank-deficient ``t`` the isometric part is fixed to ``u v^H``, which
    vanishes on the kernel of ``t``.
    """
    t = as_matrix(t, "t")
    u, sigma, v = svd(t, **svd_kwargs)
    w = u @ v.conj().T
    p = (v * sigma) @ v.conj().T
    p = 0.5 * (p + p.conj().T)
    return PolarDecomposition(w=w, p=p)


def eigh(h, *, jacobi_tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS, herm_tol=BASE_TOL,
         backend=None):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns eigenvalues in ascending order and the matching eigenvectors as
    columns.
    """
    h = as_matrix(h, "h")
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"h must be square, got {h.shape}")
    norm = np.linalg.norm(h)
    if np.linalg.norm(h - h.conj().T) > herm_tol * max(norm, 1e-300):
        raise ValueError("matrix is not Hermitian to tolerance")
    h = np.ascontiguousarray(0.5 * (h + h.conj().T))
    kernels = get_kernels(backend)
    d, v, sweeps = kernels.jacobi_eigh(h, float(jacobi_tol), int(max_sweeps))
    if sweeps < 0:
        raise NoConvergence(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")
    evals = np.real(np.diag(d)).copy()
    order = np.argsort(evals, kind="stable")
    return evals[order], np.ascontiguousarray(v[:, order])


def herm_inv_sqrt(s, tol_psd=0.0, *, refine=True, **eigh_kwargs):
    """Inverse square root of a Hermitian positive definite matrix.

    With ``refine`` one correction step is applied: the residual
    ``F = I - X s X`` is formed in extended precision and the first-order
    error ``E`` solves ``E s^(1/2) + s^(1/2) E = -F`` in the eigenbasis.
    Without it, eigenvector rounding is amplified by up to the condition
    number in ``X^2 s - I``.

    Raises
    ------
    NotPositiveDefinite
        If an eigenvalue is ``<= tol_psd``.
    """
    s = as_matrix(s, "s")
    evals, vecs = eigh(s, **eigh_kwargs)
    if evals[0] <= tol_psd:
        raise NotPositiveDefinite(
            f"smallest eigenvalue {evals[0]:.3e} is not above {tol_psd:.3e}"
        )
    root = np.sqrt(evals)
    out = (vecs / root) @ vecs.conj().T
    out = 0.5 * (out + out.conj().T)
    if refine and np.finfo(np.longdouble).eps < np.finfo(float).eps:
        xl = out.astype(np.clongdouble)
        resid = np.eye(s.shape[0], dtype=np.clongdouble) - xl @ s.astype(np.clongdouble) @ xl
        fp = vecs.conj().T @ resid.astype(np.complex128) @ vecs
        out = out + vecs @ (fp / (root[:, None] + root[None, :])) @ vecs.conj().T
        out = 0.5 * (out + out.conj().T)
    return out


class IsometryCheck(NamedTuple):
    is_partial_isometry: bool
    defect: float
    coisometry_defect: float

    def __bool__(self):
        return self.is_partial_isometry


def is_partial_isometry(w, tol=BASE_TOL):
    """Test ``w w^H w == w`` and report ``||w w^H - I||_F`` alongside.

    ``defect`` is the absolute Frobenius norm ``||w w^H w - w||_F``; the check
    passes when it is at most ``tol * ||w||_F``.
    """
    w = as_matrix(w, "w")
    wwh = w @ w.conj().T
    defect = float(np.linalg.norm(wwh @ w - w))
    co = float(np.linalg.norm(wwh - np.eye(w.shape[0])))
    ok = defect <= tol * float(np.linalg.norm(w))
    return IsometryCheck(ok, defect, co)
