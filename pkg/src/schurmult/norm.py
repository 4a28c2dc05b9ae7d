"""Multiplier norm to prescribed precision, as a factorization norm.

Strategy: bisection on t over the feasibility question "is there a PSD
block matrix [[A, X], [X*, B]] whose diagonal entries are all at most t?".
Feasibility at t yields, through a Gram factorization of the block, an
explicit pair (L, R) with X = L* R and column norms at most sqrt(t): a
certified upper bound.  The lower bound comes from an independent ascent
oracle over contractions Y (the norm is sup ||X o Y||) together with the
entry bound.  Certification never rests on the projection solver's internal
state: every reported upper bound is re-derived from an extracted
factorization, inflated by the Frobenius norm of its reconstruction error
(a valid multiplier-norm bound for the mismatch).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import NotPSDError, PreconditionViolatedError, ZeroMatrixError
from .linalg import DEFAULT_REL_TOL, DEFAULT_TOL, as_matrix, frob, herm_eig, psd_check, rank_of
from .schur import column_norm, entry_lower_bound, norm_bounds


@dataclass(frozen=True)
class SchurFactorization:
    """Pair (L, R) with X = L* R; ``value`` is the certified norm bound
    ``column_norm(L) * column_norm(R)``, ``residual`` = ||X - L* R||_F."""

    L: np.ndarray
    R: np.ndarray
    value: float
    residual: float

    @property
    def rows(self) -> int:
        return self.L.shape[0]

    def product(self) -> np.ndarray:
        return self.L.conj().T @ self.R


@dataclass(frozen=True)
class NormResult:
    upper: float
    lower: float
    eps_target: float
    factorization: SchurFactorization
    iterations: int
    converged: bool
    sweeps: int = 0


def extract_factorization(block, m: int, t: float | None = None,
                          tol: float = DEFAULT_TOL, x=None) -> SchurFactorization:
    """Gram-factor a PSD block matrix into (L, R).

    ``block`` is (m+n) x (m+n) PSD within ``tol``; columns 0..m-1 of its
    Gram factor become L, the rest R.  When ``x`` is given the residual is
    measured against it, otherwise against the off-diagonal block.
    """
    b = as_matrix(block)
    eig = herm_eig(b, tol=max(tol, 1e-7))
    w = eig.eigenvalues
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 0.0)
    if w.size and w[0] < -tol * scale:
        raise NotPSDError(f"block matrix has eigenvalue {w[0]:.3e}")
    if t is not None:
        diag_max = float(np.max(np.diag(b).real))
        if diag_max > t + tol * max(1.0, t):
            raise PreconditionViolatedError(
                f"block diagonal {diag_max:.6g} exceeds t={t:.6g}")
    wc = np.maximum(w, 0.0)
    c = (np.sqrt(wc)[:, None]) * eig.eigenvectors.conj().T
    l_fac = c[:, :m]
    r_fac = c[:, m:]
    x_ref = as_matrix(x) if x is not None else b[:m, m:]
    residual = frob(x_ref - l_fac.conj().T @ r_fac)
    value = column_norm(l_fac) * column_norm(r_fac)
    return SchurFactorization(L=l_fac, R=r_fac, value=value, residual=residual)


def _operator_norm(a) -> float:
    s = np.linalg.svd(a, compute_uv=False)
    return float(s[0]) if s.size else 0.0


def ascent_lower_bound(x, starts: int = 50, seed: int = 0,
                       max_iter: int = 300) -> float:
    """Certified lower bound: max ||X o Y|| over contractions Y reached by
    alternating maximization from ``starts`` deterministic-seeded starts.

    Given unit vectors (u, v), the best contraction is the polar unitary of
    the coefficient matrix of Y -> <(X o Y) v, u>; given Y, the best (u, v)
    is the top singular pair of X o Y.  Every evaluated Y is projected into
    the unit operator-norm ball first, so each objective value is a valid
    lower bound on the multiplier norm.
    """
    m = as_matrix(x)
    if starts < 1:
        raise ValueError("starts must be >= 1")
    rows, cols = m.shape
    best = 0.0
    for k in range(starts):
        if k == 0:
            y = np.eye(rows, cols, dtype=np.complex128)
        elif k == 1:
            mod = np.abs(m)
            y = np.where(mod > 0, np.conj(m) / np.where(mod > 0, mod, 1.0), 1.0)
            nrm = _operator_norm(y)
            y = y / nrm if nrm > 0 else y
        else:
            rng = np.random.default_rng(np.random.SeedSequence([seed, k]))
            y = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
            nrm = _operator_norm(y)
            y = y / nrm if nrm > 0 else y
        prev = -1.0
        for _ in range(max_iter):
            nrm = _operator_norm(y)
            if nrm > 1.0:
                y = y / nrm
            z = m * y
            u_mat, s, vh = np.linalg.svd(z)
            val = float(s[0]) if s.size else 0.0
            if val > best:
                best = val
            if val - prev <= 1e-13 * max(1.0, val):
                break
            prev = val
            u = u_mat[:, 0]
            v = vh[0, :].conj()
            coeff = (np.conj(u)[:, None]) * m * (v[None, :])
            ua, _, vah = np.linalg.svd(coeff.T, full_matrices=False)
            y = vah.conj().T @ ua.conj().T
    return best


def compress_to_rank(fact: SchurFactorization, x,
                     rel_tol: float = DEFAULT_REL_TOL) -> SchurFactorization:
    """Equivalent factorization with exactly rank(X) rows.

    Projects R onto the range of L (the product only sees that part), then
    restricts both factors to the range of the projected R, which has
    dimension rank(X).  Column norms can only shrink, so the certified value
    never grows.  Factors are rebalanced to equal column norms.
    """
    xm = as_matrix(x)
    r_target = rank_of(xm, rel_tol)
    l_fac, r_fac = fact.L, fact.R
    if r_target == 0:
        l2 = np.zeros((0, l_fac.shape[1]), dtype=np.complex128)
        r2 = np.zeros((0, r_fac.shape[1]), dtype=np.complex128)
        return SchurFactorization(L=l2, R=r2, value=0.0, residual=frob(xm))
    ul, sl, _ = np.linalg.svd(l_fac, full_matrices=False)
    rl = int(np.sum(sl > rel_tol * sl[0])) if sl.size and sl[0] > 0 else 0
    ul = ul[:, :rl]
    r_proj = ul @ (ul.conj().T @ r_fac)
    u2, s2, _ = np.linalg.svd(r_proj, full_matrices=False)
    avail = min(r_target, u2.shape[1])
    basis = u2[:, :avail]
    l2 = basis.conj().T @ l_fac
    r2 = basis.conj().T @ r_proj
    if avail < r_target:
        pad = r_target - avail
        l2 = np.vstack([l2, np.zeros((pad, l2.shape[1]), dtype=np.complex128)])
        r2 = np.vstack([r2, np.zeros((pad, r2.shape[1]), dtype=np.complex128)])
    cl = column_norm(l2)
    cr = column_norm(r2)
    if cl > 0 and cr > 0:
        a = np.sqrt(cr / cl)
        l2 = l2 * a
        r2 = r2 / a
    value = column_norm(l2) * column_norm(r2)
    residual = frob(xm - l2.conj().T @ r2)
    return SchurFactorization(L=l2, R=r2, value=value, residual=residual)


def optimal_psd_factorization(x, tol: float = DEFAULT_TOL,
                              rel_tol: float = DEFAULT_REL_TOL) -> SchurFactorization:
    """Exact optimal factorization X = L* L for PSD X, built from the
    square root: value equals the largest diagonal entry."""
    m = as_matrix(x)
    ok, min_eig = psd_check(m, tol)
    if not ok:
        raise NotPSDError(f"matrix is not PSD (min eigenvalue {min_eig:.3e})")
    eig = herm_eig(m, tol=tol)
    w = eig.eigenvalues[::-1]
    v = eig.eigenvectors[:, ::-1]
    wmax = float(w[0]) if w.size else 0.0
    keep = w > rel_tol * max(wmax, 0.0)
    w = w[keep]
    v = v[:, keep]
    l_fac = (np.sqrt(w)[:, None]) * v.conj().T
    residual = frob(m - l_fac.conj().T @ l_fac)
    value = column_norm(l_fac) ** 2
    return SchurFactorization(L=l_fac, R=l_fac.copy(), value=value, residual=residual)


def multiplier_norm(x, eps: float = 1e-6, *, starts: int = 50, seed: int = 0,
                    tol: float = DEFAULT_TOL, rel_tol: float = DEFAULT_REL_TOL,
                    max_bisect: int = 200, max_sweeps: int = 5000,
                    method: str = "dr") -> NormResult:
    """Certified bracket on the multiplier norm, with a near-optimal
    factorization.

    Bisects on the feasibility threshold t.  Each feasibility run (Douglas-
    Rachford by default over the PSD-cone and affine-box projections)
    contributes a certified upper bound through its best extracted
    factorization whether or not it formally converged; the final
    factorization is compressed to rank(X) rows.  ``converged`` is False
    when the bracket did not close to ``eps`` within the iteration caps.
    """
    xm = as_matrix(x)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if frob(xm) == 0.0:
        raise ZeroMatrixError("the zero matrix has no positive-rank factorization")
    m_rows, n_cols = xm.shape

    lower = max(ascent_lower_bound(xm, starts=starts, seed=seed), entry_lower_bound(xm))
    bounds = norm_bounds(xm)
    col = column_norm(xm)
    row = column_norm(xm.conj().T)
    if col <= row:
        best_fact = SchurFactorization(
            L=np.eye(m_rows, dtype=np.complex128), R=xm.copy(), value=col, residual=0.0)
    else:
        best_fact = SchurFactorization(
            L=xm.conj().T.copy(), R=np.eye(n_cols, dtype=np.complex128),
            value=row, residual=0.0)
    upper = bounds.upper

    feas_tol = 1e-10 * max(1.0, frob(xm))
    t_lo, t_hi = lower, upper
    z_warm = None
    iterations = 0
    sweeps_total = 0
    aimed = False
    while upper - lower > eps and iterations < max_bisect:
        iterations += 1
        budget = max_sweeps
        if not aimed and t_hi - lower <= 2.0 * eps and t_lo < lower + 0.9 * eps:
            t = lower + 0.9 * eps
            if not t_lo < t < t_hi:
                t = 0.5 * (t_lo + t_hi)
            else:
                budget = 4 * max_sweeps
            aimed = True
        else:
            t = 0.5 * (t_lo + t_hi)
        block, feasible, sweeps, _, _, z_state = _backend.feasibility_loop(
            xm, t, z_warm, method, budget, feas_tol, 200, 1e-12)
        sweeps_total += sweeps
        if block is not None:
            cand = extract_factorization(block, m_rows, tol=max(tol, 1e-7), x=xm)
            cand_upper = cand.value + cand.residual
            if cand_upper < upper:
                upper = cand_upper
                best_fact = cand
        if feasible:
            t_hi = t
            z_warm = z_state
        else:
            t_lo = t
        if t_hi - t_lo < min(eps, 1e-9) * 1e-2:
            break

    fact = compress_to_rank(best_fact, xm, rel_tol)
    cand_upper = fact.value + fact.residual
    if cand_upper < upper:
        upper = cand_upper
    converged = upper - lower <= eps
    return NormResult(upper=float(upper), lower=float(lower), eps_target=eps,
                      factorization=fact, iterations=iterations,
                      converged=converged, sweeps=sweeps_total)
