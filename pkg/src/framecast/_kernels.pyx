# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Jacobi and Gram-Schmidt kernels.

Same signatures and return conventions as ``framecast._kernels_py``.
"""
import numpy as np

from libc.math cimport sqrt, fabs, copysign


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double complex cdot_rows(double complex[:, ::1] a, Py_ssize_t i,
                                     Py_ssize_t j) nogil:
    # sum conj(a[i, l]) * a[j, l]
    cdef Py_ssize_t l
    cdef double re = 0.0, im = 0.0
    cdef double complex x, y
    for l in range(a.shape[1]):
        x = a[i, l]
        y = a[j, l]
        re += x.real * y.real + x.imag * y.imag
        im += x.real * y.imag - x.imag * y.real
    return re + 1j * im


cdef inline void rotate_rows(double complex[:, ::1] a, Py_ssize_t i, Py_ssize_t j,
                             double c, double s, double complex cp) nogil:
    cdef Py_ssize_t l
    cdef double complex xi, xj
    for l in range(a.shape[1]):
        xi = a[i, l]
        xj = a[j, l] * cp
        a[i, l] = c * xi - s * xj
        a[j, l] = s * xi + c * xj


cdef inline void rotation(double alpha, double beta, double complex gamma,
                          double *c, double *s, double complex *phase) nogil:
    cdef double g = sqrt(cabs2(gamma))
    cdef double zeta = (beta - alpha) / (2.0 * g)
    cdef double t = copysign(1.0, zeta) / (fabs(zeta) + sqrt(1.0 + zeta * zeta))
    c[0] = 1.0 / sqrt(1.0 + t * t)
    s[0] = c[0] * t
    phase[0] = gamma / g


def hestenes(double complex[:, ::1] rows, double tol, int max_sweeps, double floor):
    cdef Py_ssize_t n = rows.shape[0]
    vrows_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] vrows = vrows_arr
    cdef Py_ssize_t i, j
    cdef int sweep
    cdef bint rotated
    cdef double alpha, beta, c = 0.0, s = 0.0
    cdef double complex gamma, phase = 0.0, cp
    with nogil:
        for sweep in range(max_sweeps):
            rotated = False
            for i in range(n - 1):
                for j in range(i + 1, n):
                    alpha = cdot_rows(rows, i, i).real
                    beta = cdot_rows(rows, j, j).real
                    if alpha <= floor or beta <= floor:
                        continue
                    gamma = cdot_rows(rows, i, j)
                    if sqrt(cabs2(gamma)) <= tol * sqrt(alpha * beta):
                        continue
                    rotated = True
                    rotation(alpha, beta, gamma, &c, &s, &phase)
                    cp = phase.conjugate()
                    rotate_rows(rows, i, j, c, s, cp)
                    rotate_rows(vrows, i, j, c, s, cp)
            if not rotated:
                break
    if rotated:
        return np.asarray(rows), vrows_arr, -max_sweeps
    return np.asarray(rows), vrows_arr, sweep + 1


def jacobi_eigh(double complex[:, ::1] h, double tol, int max_sweeps):
    cdef Py_ssize_t n = h.shape[0]
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, l
    cdef int sweep
    cdef bint rotated = False
    cdef double app, aqq, g, c = 0.0, s = 0.0, scale = 0.0, floor
    cdef double complex apq, phase = 0.0, cp, xp, xq
    for p in range(n):
        for q in range(n):
            scale += cabs2(h[p, q])
    scale = sqrt(scale)
    floor = 2.2250738585072014e-308 if scale == 0.0 else 1e-300 * scale
    with nogil:
        for sweep in range(max_sweeps):
            rotated = False
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = h[p, q]
                    g = sqrt(cabs2(apq))
                    if g <= floor:
                        continue
                    app = h[p, p].real
                    aqq = h[q, q].real
                    if g <= tol * sqrt(fabs(app * aqq)):
                        continue
                    rotated = True
                    rotation(app, aqq, apq, &c, &s, &phase)
                    cp = phase.conjugate()
                    for l in range(n):
                        xp = h[l, p]
                        xq = h[l, q] * cp
                        h[l, p] = c * xp - s * xq
                        h[l, q] = s * xp + c * xq
                    for l in range(n):
                        xp = h[p, l]
                        xq = h[q, l] * phase
                        h[p, l] = c * xp - s * xq
                        h[q, l] = s * xp + c * xq
                    h[p, q] = 0.0
                    h[q, p] = 0.0
                    h[p, p] = h[p, p].real
                    h[q, q] = h[q, q].real
                    for l in range(n):
                        xp = v[l, p]
                        xq = v[l, q] * cp
                        v[l, p] = c * xp - s * xq
                        v[l, q] = s * xp + c * xq
            if not rotated:
                break
    if rotated:
        return np.asarray(h), v_arr, -max_sweeps
    return np.asarray(h), v_arr, sweep + 1


def mgs(double complex[:, ::1] x, double tol_rank):
    cdef Py_ssize_t m = x.shape[0], n = x.shape[1]
    cdef Py_ssize_t cap = min(m, n)
    onb_arr = np.zeros((cap, n), dtype=np.complex128)
    coeffs_arr = np.zeros((m, cap), dtype=np.complex128)
    r_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[:, ::1] onb = onb_arr
    cdef double complex[:, ::1] coeffs = coeffs_arr
    cdef double complex[::1] r = r_arr
    cdef Py_ssize_t i, j, l, k = 0, npass
    cdef double norm0, rn, re, im
    cdef double complex h, e
    pivots = []
    for i in range(m):
        if k == cap:
            break
        norm0 = 0.0
        for l in range(n):
            r[l] = x[i, l]
            norm0 += cabs2(r[l])
        norm0 = sqrt(norm0)
        if norm0 <= 0.0:
            continue
        for npass in range(2):
            for j in range(k):
                re = 0.0
                im = 0.0
                for l in range(n):
                    e = onb[j, l]
                    re += e.real * r[l].real + e.imag * r[l].imag
                    im += e.real * r[l].imag - e.imag * r[l].real
                h = re + 1j * im
                coeffs[i, j] = coeffs[i, j] + h
                for l in range(n):
                    r[l] = r[l] - h * onb[j, l]
        rn = 0.0
        for l in range(n):
            rn += cabs2(r[l])
        rn = sqrt(rn)
        if rn <= tol_rank * norm0:
            for j in range(k):
                coeffs[i, j] = 0.0
            continue
        for l in range(n):
            onb[k, l] = r[l] / rn
        coeffs[i, k] = rn
        pivots.append(i)
        k += 1
    return onb_arr[:k].copy(), coeffs_arr[:, :k].copy(), pivots
