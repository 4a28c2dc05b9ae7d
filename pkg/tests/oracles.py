"""Independent brute-force oracles used to guard the library's computations.

The fullness oracle works with the full complex quantifier (no Hermitian
reduction): a set is full iff the real-linear system <X xi_j, xi_j> = 0,
X = PXP over all complex X has a trivial null space.  It shares nothing
with the production code path beyond numpy's SVD.
"""
import numpy as np


def brute_force_fullness(vectors, rel_tol=1e-9):
    """(is_full, nullity) over complex matrices supported on the span."""
    a = np.column_stack([np.asarray(v, dtype=complex).reshape(-1) for v in vectors])
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    r = int(np.sum(s > rel_tol * s[0])) if s.size and s[0] > 0 else 0
    if r == 0:
        return True, 0
    q = u[:, :r]
    coords = q.conj().T @ a
    n = a.shape[1]
    # unknowns: Re X_ab, Im X_ab for the r x r matrix X in span coordinates
    sys = np.zeros((2 * n, 2 * r * r))
    for j in range(n):
        eta = coords[:, j]
        c = np.outer(eta.conj(), eta)  # f_j(X) = sum_ab c_ab X_ab
        for a_i in range(r):
            for b_i in range(r):
                col = a_i * r + b_i
                cre, cim = c[a_i, b_i].real, c[a_i, b_i].imag
                sys[2 * j, col] = cre
                sys[2 * j, r * r + col] = -cim
                sys[2 * j + 1, col] = cim
                sys[2 * j + 1, r * r + col] = cre
    sv = np.linalg.svd(sys, compute_uv=False)
    rank = int(np.sum(sv > rel_tol * sv[0])) if sv.size and sv[0] > 0 else 0
    nullity = 2 * r * r - rank
    return nullity == 0, nullity


def witness_bounds(b, vectors, projector):
    """The four witness checks: Hermitian, unit norm, supported on the span,
    vanishing on every vector state.  Returns the four deviations."""
    b = np.asarray(b)
    herm = np.linalg.norm(b - b.conj().T)
    norm_dev = abs(np.linalg.norm(b, 2) - 1.0)
    supp = np.linalg.norm(b - projector @ b @ projector)
    states = max(
        abs(np.vdot(v, b @ v)) for v in
        (np.asarray(vec, dtype=complex).reshape(-1) for vec in vectors)
    )
    return herm, norm_dev, supp, states
