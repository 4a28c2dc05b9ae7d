# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled backend for the hot kernels.

Same contract as ``schurmult._fallback``: a cyclic complex Jacobi
eigensolver and the projection feasibility loop.  The loop spends its time
in repeated Hermitian eigendecompositions of the block matrix, which is why
it lives in C; everything else in the package stays in Python.
"""
import numpy as np

from libc.math cimport sqrt

NAME = "compiled"


cdef double _offdiag_norm(double complex[:, ::1] a, int n) noexcept nogil:
    cdef double s = 0.0
    cdef int p, q
    for p in range(n - 1):
        for q in range(p + 1, n):
            s += 2.0 * (a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag)
    return sqrt(s)


cdef void _jacobi(double complex[:, ::1] a, double complex[:, ::1] v, int n,
                  int max_sweeps) noexcept nogil:
    """Cyclic-by-rows complex Jacobi.  ``a`` is destroyed (diagonal ends up
    holding the unsorted eigenvalues); ``v`` must start as the identity and
    accumulates the eigenvectors as columns."""
    cdef int p, q, i, sweep
    cdef double normf, off, app, aqq, ah, tau, tt, c, s
    cdef double complex h, u, su, tp, tq

    normf = 0.0
    for p in range(n):
        for q in range(n):
            normf += a[p, q].real * a[p, q].real + a[p, q].imag * a[p, q].imag
    normf = sqrt(normf)
    if normf == 0.0:
        return

    for sweep in range(max_sweeps):
        off = _offdiag_norm(a, n)
        if off <= 2e-16 * n * normf:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                h = a[p, q]
                ah = sqrt(h.real * h.real + h.imag * h.imag)
                if ah <= 1e-300:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                u = h / ah
                tau = (aqq - app) / (2.0 * ah)
                if tau >= 0:
                    tt = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    tt = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + tt * tt)
                s = tt * c
                su = s * u
                for i in range(n):
                    tp = a[i, p]
                    tq = a[i, q]
                    a[i, p] = c * tp - su.conjugate() * tq
                    a[i, q] = su * tp + c * tq
                for i in range(n):
                    tp = a[p, i]
                    tq = a[q, i]
                    a[p, i] = c * tp - su * tq
                    a[q, i] = su.conjugate() * tp + c * tq
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                a[p, q] = 0
                a[q, p] = 0
                for i in range(n):
                    tp = v[i, p]
                    tq = v[i, q]
                    v[i, p] = c * tp - su.conjugate() * tq
                    v[i, q] = su * tp + c * tq


def eigh(h):
    """Hermitian eigendecomposition, eigenvalues ascending."""
    a = np.array(h, dtype=np.complex128, order="C")
    cdef int n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] av = a
    cdef double complex[:, ::1] vv = v
    with nogil:
        _jacobi(av, vv, n, 60)
    w = np.diag(a).real.copy()
    idx = np.argsort(w, kind="stable")
    return w[idx], v[:, idx]


cdef void _set_identity(double complex[:, ::1] v, int n) noexcept nogil:
    cdef int i, j
    for i in range(n):
        for j in range(n):
            v[i, j] = 0
        v[i, i] = 1


cdef int _loop(double complex[:, ::1] z, double complex[:, ::1] x,
               double t, bint use_dr, int max_sweeps, double feas_tol,
               int stall_window, double stall_rel,
               double complex[:, ::1] a, double complex[:, ::1] work,
               double complex[:, ::1] v, double complex[:, ::1] b,
               double complex[:, ::1] best, double* out_resid,
               double* out_best_resid, int m, int n) noexcept nogil:
    """Returns the sweep count; negative when feasibility was reached
    (``-sweeps``).  ``best`` receives the PSD iterate closest to the affine
    set; ``z`` is updated in place and serves as the warm-start state."""
    cdef int size = m + n
    cdef int sweep, i, j, k
    cdef double resid, best_resid, window_best, prev_window_best, d, wk
    cdef double complex acc, tij

    best_resid = 1e308
    window_best = 1e308
    prev_window_best = 1e308
    resid = 1e308

    for sweep in range(1, max_sweeps + 1):
        # affine-plus-box projection of z into a
        for i in range(size):
            for j in range(size):
                a[i, j] = z[i, j]
        for i in range(m):
            for j in range(n):
                a[i, m + j] = x[i, j]
                a[m + j, i] = x[i, j].conjugate()
        for i in range(size):
            d = a[i, i].real
            if d > t:
                d = t
            a[i, i] = d

        # reflected (DR) or plain point, hermitized, into work
        for i in range(size):
            for j in range(i, size):
                if use_dr:
                    tij = 0.5 * ((2.0 * a[i, j] - z[i, j])
                                 + (2.0 * a[j, i] - z[j, i]).conjugate())
                else:
                    tij = 0.5 * (a[i, j] + a[j, i].conjugate())
                work[i, j] = tij
                work[j, i] = tij.conjugate()

        _set_identity(v, size)
        _jacobi(work, v, size, 60)

        # b = v * clamp(diag(work)) * v^H and residual ||b - a||_F
        resid = 0.0
        for i in range(size):
            for j in range(i, size):
                acc = 0
                for k in range(size):
                    wk = work[k, k].real
                    if wk > 0.0:
                        acc = acc + wk * v[i, k] * v[j, k].conjugate()
                b[i, j] = acc
                b[j, i] = acc.conjugate()
                d = ((acc - a[i, j]).real * (acc - a[i, j]).real
                     + (acc - a[i, j]).imag * (acc - a[i, j]).imag)
                resid += d if i == j else 2.0 * d
        resid = sqrt(resid)

        if resid < best_resid:
            best_resid = resid
            for i in range(size):
                for j in range(size):
                    best[i, j] = b[i, j]
        out_resid[0] = resid
        out_best_resid[0] = best_resid
        if resid <= feas_tol:
            return -sweep

        if use_dr:
            for i in range(size):
                for j in range(size):
                    z[i, j] = z[i, j] + b[i, j] - a[i, j]
        else:
            for i in range(size):
                for j in range(size):
                    z[i, j] = b[i, j]

        if resid < window_best:
            window_best = resid
        if sweep % stall_window == 0:
            if prev_window_best - window_best < stall_rel * prev_window_best:
                return sweep
            prev_window_best = window_best
            window_best = 1e308
    return max_sweeps


def feasibility_loop(x, double t, z0, method, int max_sweeps, double feas_tol,
                     int stall_window, double stall_rel):
    """Same contract as the fallback: returns
    ``(best_block, feasible, sweeps, final_resid, best_resid, state)``."""
    x = np.ascontiguousarray(x, dtype=np.complex128)
    cdef int m = x.shape[0]
    cdef int n = x.shape[1]
    cdef int size = m + n
    cdef bint use_dr = (method == "dr")

    if z0 is None:
        z = np.zeros((size, size), dtype=np.complex128)
        z[:m, m:] = x
        z[m:, :m] = x.conj().T
        np.fill_diagonal(z, t)
    else:
        z = np.array(z0, dtype=np.complex128, order="C")

    a = np.empty((size, size), dtype=np.complex128)
    work = np.empty((size, size), dtype=np.complex128)
    v = np.empty((size, size), dtype=np.complex128)
    b = np.empty((size, size), dtype=np.complex128)
    best = np.empty((size, size), dtype=np.complex128)

    cdef double complex[:, ::1] zv = z
    cdef double complex[:, ::1] xv = x
    cdef double complex[:, ::1] av = a
    cdef double complex[:, ::1] workv = work
    cdef double complex[:, ::1] vv = v
    cdef double complex[:, ::1] bv = b
    cdef double complex[:, ::1] bestv = best
    cdef double resid = 0.0
    cdef double best_resid = 0.0
    cdef int rc

    if max_sweeps < 1:
        raise ValueError("max_sweeps must be >= 1")
    with nogil:
        rc = _loop(zv, xv, t, use_dr, max_sweeps, feas_tol, stall_window,
                   stall_rel, av, workv, vv, bv, bestv, &resid, &best_resid,
                   m, n)
    feasible = rc < 0
    sweeps = -rc if rc < 0 else rc
    if feasible:
        # the iterate that crossed the tolerance is the current b
        best = b.copy()
        best_resid = resid
    return best, bool(feasible), int(sweeps), float(resid), float(best_resid), z
