"""Pure numpy implementations of the Jacobi and Gram-Schmidt kernels.

These mirror ``framecast._kernels`` (Cython) function for function and are
used when the compiled module is unavailable or ``FRAMECAST_PURE_PYTHON`` is
set.  Every kernel returns a negative sweep count instead of raising when the
sweep budget runs out; the caller turns that into ``NoConvergence``.
"""
import math

import numpy as np


def _rotation(alpha, beta, gamma):
    """Return (c, s, phase) zeroing the off-diagonal of [[alpha, gamma], [conj(gamma), beta]]."""
    g = abs(gamma)
    phase = gamma / g
    zeta = (beta - alpha) / (2.0 * g)
    t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, c * t, phase


def hestenes(rows, tol, max_sweeps, floor):
    """One-sided Jacobi on the rows of ``rows`` (the columns of the matrix being factored).

    ``rows`` is overwritten with mutually orthogonal rows.  Returns
    ``(rows, vrows, sweeps)`` where ``vrows`` holds the accumulated right
    rotation stored row-wise (``V.T``).
    """
    n = rows.shape[0]
    vrows = np.eye(n, dtype=np.complex128)
    for sweep in range(max_sweeps):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                ri = rows[i]
                rj = rows[j]
                alpha = np.vdot(ri, ri).real
                beta = np.vdot(rj, rj).real
                if alpha <= floor or beta <= floor:
                    continue
                gamma = np.vdot(ri, rj)
                if abs(gamma) <= tol * math.sqrt(alpha * beta):
                    continue
                rotated = True
                c, s, phase = _rotation(alpha, beta, gamma)
                cp = phase.conjugate()
                ri = ri.copy()
                rj = rj * cp
                rows[i] = c * ri - s * rj
                rows[j] = s * ri + c * rj
                vi = vrows[i].copy()
                vj = vrows[j] * cp
                vrows[i] = c * vi - s * vj
                vrows[j] = s * vi + c * vj
        if not rotated:
            return rows, vrows, sweep + 1
    return rows, vrows, -max_sweeps


def jacobi_eigh(h, tol, max_sweeps):
    """Cyclic two-sided Jacobi for a Hermitian matrix, in place.

    Returns ``(h, v, sweeps)``; on exit ``h`` is diagonal to working
    precision and ``v`` holds the eigenvectors as columns.
    """
    n = h.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = np.linalg.norm(h)
    floor = np.finfo(float).tiny if scale == 0 else 1e-300 * scale
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = h[p, q]
                g = abs(apq)
                if g <= floor:
                    continue
                app = h[p, p].real
                aqq = h[q, q].real
                if g <= tol * math.sqrt(abs(app * aqq)):
                    continue
                rotated = True
                c, s, phase = _rotation(app, aqq, apq)
                cp = phase.conjugate()
                # columns: J = diag(1, cp) @ [[c, s], [-s, c]]
                colp = h[:, p].copy()
                colq = h[:, q] * cp
                h[:, p] = c * colp - s * colq
                h[:, q] = s * colp + c * colq
                rowp = h[p, :].copy()
                rowq = h[q, :] * phase
                h[p, :] = c * rowp - s * rowq
                h[q, :] = s * rowp + c * rowq
                h[p, q] = 0.0
                h[q, p] = 0.0
                h[p, p] = h[p, p].real
                h[q, q] = h[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q] * cp
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        if not rotated:
            return h, v, sweep + 1
    return h, v, -max_sweeps


def mgs(x, tol_rank):
    """Modified Gram-Schmidt with one reorthogonalization pass and first-come pivoting.

    Returns ``(onb, coeffs, pivots)``.  Only the pivot rows of ``coeffs`` are
    filled; they are lower triangular with a positive real diagonal.
    """
    m, n = x.shape
    cap = min(m, n)
    onb = np.zeros((cap, n), dtype=np.complex128)
    coeffs = np.zeros((m, cap), dtype=np.complex128)
    pivots = []
    for i in range(m):
        if len(pivots) == cap:
            break
        r = x[i].copy()
        norm0 = np.linalg.norm(r)
        if norm0 <= 0.0:
            continue
        k = len(pivots)
        proj = np.zeros(k, dtype=np.complex128)
        for _ in range(2):
            for j in range(k):
                h = np.vdot(onb[j], r)
                proj[j] += h
                r -= h * onb[j]
        rn = np.linalg.norm(r)
        if rn <= tol_rank * norm0:
            continue
        onb[k] = r / rn
        coeffs[i, :k] = proj
        coeffs[i, k] = rn
        pivots.append(i)
    r = len(pivots)
    return onb[:r].copy(), coeffs[:, :r].copy(), pivots
