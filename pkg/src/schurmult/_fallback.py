"""Numpy backend for the hot kernels.

Used when the compiled extension (``schurmult._core``) is not available.
Both backends expose the same two entry points:

``eigh(h)``
    Hermitian eigendecomposition, eigenvalues ascending.

``feasibility_loop(x, t, z0, method, max_sweeps, feas_tol, stall_window,
stall_rel)``
    Projection splitting for the feasibility question behind the multiplier
    norm: does a PSD block matrix ``[[A, X], [X*, B]]`` with all diagonal
    entries at most ``t`` exist?  Projections are onto the PSD cone
    (eigenvalue clamping) and onto the affine-plus-box set (off-diagonal
    blocks pinned to ``X``, diagonal capped at ``t``).  ``method`` selects
    plain alternation (``"alternating"``) or Douglas-Rachford (``"dr"``).

The loop never *certifies* anything by itself; callers re-verify feasibility
through the Gram factorization of the returned block.
"""
from __future__ import annotations

import numpy as np

NAME = "python"


def eigh(h):
    w, v = np.linalg.eigh(h)
    return w, v


def _project_affine(z, x, t, m, n):
    a = z.copy()
    a[:m, m:] = x
    a[m:, :m] = x.conj().T
    d = np.minimum(np.diag(a).real, t)
    np.fill_diagonal(a, d)
    return a


def _project_psd(s):
    h = (s + s.conj().T) * 0.5
    w, v = np.linalg.eigh(h)
    wc = np.maximum(w, 0.0)
    return (v * wc) @ v.conj().T


def feasibility_loop(x, t, z0, method, max_sweeps, feas_tol, stall_window, stall_rel):
    """Run the projection loop; returns
    ``(best_block, feasible, sweeps, final_resid, best_resid, state)``.

    ``best_block`` is the PSD iterate closest to the affine set seen so far
    (the certificate candidate), ``state`` the raw iterate for warm starts.
    """
    m, n = x.shape
    size = m + n
    use_dr = method == "dr"
    if z0 is None:
        z = np.zeros((size, size), dtype=np.complex128)
        z[:m, m:] = x
        z[m:, :m] = x.conj().T
        np.fill_diagonal(z, t)
    else:
        z = np.array(z0, dtype=np.complex128)

    best_resid = np.inf
    best_block = None
    window_best = np.inf
    prev_window_best = np.inf
    resid = np.inf
    sweeps = 0
    for sweep in range(1, max_sweeps + 1):
        sweeps = sweep
        a = _project_affine(z, x, t, m, n)
        b = _project_psd(2.0 * a - z if use_dr else a)
        resid = float(np.linalg.norm(b - a))
        if resid < best_resid:
            best_resid = resid
            best_block = b
        if resid <= feas_tol:
            return b, True, sweeps, resid, resid, z
        if use_dr:
            z = z + b - a
        else:
            z = b
        window_best = min(window_best, resid)
        if sweep % stall_window == 0:
            if prev_window_best - window_best < stall_rel * prev_window_best:
                return best_block, False, sweeps, resid, best_resid, z
            prev_window_best = window_best
            window_best = np.inf
    return best_block, False, sweeps, resid, best_resid, z
