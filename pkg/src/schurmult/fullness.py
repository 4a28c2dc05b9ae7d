"""Fullness of a finite vector family, with Hermitian witnesses.

A set {xi_1, ..., xi_n} in C^k is *full* when the only matrix supported on
its span (X = PXP, P the span projection) with <X xi_j, xi_j> = 0 for all j
is zero.  Splitting X into Hermitian and anti-Hermitian parts reduces the
complex quantifier to a real one: the set is full iff the Hermitian outer
products xi_j xi_j* span the full r^2-dimensional real space of Hermitian
matrices on the span (r = span dimension).  That is the computed criterion;
the brute-force complex formulation lives in the test suite as an oracle.

When the set is not full, a *witness* is returned: a norm-1 Hermitian B with
B = PBP and <B xi_j, xi_j> = 0 for all j, the raw material for the convex
splits built in :mod:`schurmult.extremality`.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NotInjectiveOnSpanError
from .linalg import DEFAULT_REL_TOL, _stack_columns, as_matrix, rank_of, span_basis


@dataclass(frozen=True)
class FullnessResult:
    """Verdict and audit data for one fullness test.

    ``margin`` is the smallest retained singular value of the constraint
    map, relative to the largest: small margins mean the rank decision (and
    hence the verdict) is fragile.  ``next_singular_ratio`` is the largest
    *discarded* singular value relative to the cutoff (0.0 when nothing real
    was discarded); values near 1 flag a near-full set.
    """

    is_full: bool
    span_rank: int
    required_rank: int
    achieved_rank: int
    margin: float
    witness: np.ndarray | None
    next_singular_ratio: float = 0.0


def hermitian_vectorize(h: np.ndarray) -> np.ndarray:
    """Isometric real coordinates of an r x r Hermitian matrix: diagonal
    first, then sqrt(2) * (Re, Im) of each strict upper entry, row-major."""
    r = h.shape[0]
    out = np.empty(r * r, dtype=float)
    out[:r] = np.diag(h).real
    pos = r
    sq2 = np.sqrt(2.0)
    for i in range(r):
        for j in range(i + 1, r):
            out[pos] = sq2 * h[i, j].real
            out[pos + 1] = sq2 * h[i, j].imag
            pos += 2
    return out


def hermitian_devectorize(w: np.ndarray, r: int) -> np.ndarray:
    """Inverse of :func:`hermitian_vectorize`."""
    h = np.zeros((r, r), dtype=np.complex128)
    np.fill_diagonal(h, w[:r])
    pos = r
    inv_sq2 = 1.0 / np.sqrt(2.0)
    for i in range(r):
        for j in range(i + 1, r):
            val = (w[pos] + 1j * w[pos + 1]) * inv_sq2
            h[i, j] = val
            h[j, i] = np.conj(val)
            pos += 2
    return h


def _constraint_svd(vectors, rel_tol: float):
    """Span basis, the n x r^2 real constraint matrix of vectorized outer
    products, and its full SVD."""
    a = _stack_columns(vectors)
    sb = span_basis(a, rel_tol)
    r = sb.rank
    n = a.shape[1]
    if r == 0:
        return sb, a, None, None, None
    coords = sb.basis.conj().T @ a
    m = np.empty((n, r * r), dtype=float)
    for j in range(n):
        eta = coords[:, j]
        m[j] = hermitian_vectorize(np.outer(eta, eta.conj()))
    _, s, vh = np.linalg.svd(m, full_matrices=True)
    return sb, a, m, s, vh


def _operator_norm(b) -> float:
    s = np.linalg.svd(b, compute_uv=False)
    return float(s[0]) if s.size else 0.0


def witness_candidates(vectors, rel_tol: float = DEFAULT_REL_TOL,
                       limit: int | None = None) -> list[np.ndarray]:
    """Norm-1 Hermitian witnesses for a non-full set, ordered by increasing
    singular value of the violated constraint direction (ties by index).
    Empty when the set is full."""
    sb, a, m, s, vh = _constraint_svd(vectors, rel_tol)
    r = sb.rank
    if r == 0:
        return []
    required = r * r
    smax = float(s[0])
    cut = rel_tol * smax
    achieved = int(np.sum(s > cut))
    if achieved == required:
        return []
    order = sorted(range(achieved, required),
                   key=lambda i: (float(s[i]) if i < s.size else 0.0, i))
    if limit is not None:
        order = order[:limit]
    out = []
    for idx in order:
        small = hermitian_devectorize(vh[idx], r)
        b = sb.basis @ small @ sb.basis.conj().T
        b = (b + b.conj().T) * 0.5
        nrm = _operator_norm(b)
        if nrm > 0:
            out.append(b / nrm)
    return out


def fullness_test(vectors, rel_tol: float = DEFAULT_REL_TOL) -> FullnessResult:
    """Decide fullness; attach the first witness when the set is not full."""
    sb, a, m, s, vh = _constraint_svd(vectors, rel_tol)
    r = sb.rank
    required = r * r
    if r == 0:
        # only zero vectors: vacuously full
        return FullnessResult(is_full=True, span_rank=0, required_rank=0,
                              achieved_rank=0, margin=1.0, witness=None)
    smax = float(s[0])
    cut = rel_tol * smax
    achieved = int(np.sum(s > cut))
    margin = float(s[achieved - 1] / smax) if achieved else 0.0
    is_full = achieved == required
    next_ratio = 0.0
    if not is_full and achieved < s.size and cut > 0:
        next_ratio = float(s[achieved] / cut)
    witness = None
    if not is_full:
        cands = witness_candidates(vectors, rel_tol, limit=1)
        witness = cands[0] if cands else None
    return FullnessResult(is_full=is_full, span_rank=r, required_rank=required,
                          achieved_rank=achieved, margin=margin, witness=witness,
                          next_singular_ratio=next_ratio)


def square_dim_bound_check(result: FullnessResult, n: int) -> bool:
    """A full n-vector set spans at most sqrt(n) dimensions; always True for
    a correct implementation, exposed as an assertable consistency check."""
    if not result.is_full:
        return True
    return result.span_rank * result.span_rank <= n


def transport_fullness(vectors, t_map,
                       rel_tol: float = DEFAULT_REL_TOL) -> tuple[FullnessResult, FullnessResult]:
    """Fullness of a set and of its image under a linear map injective on
    the span.  The two verdicts must agree; both are returned so the
    agreement can be asserted by callers."""
    a = _stack_columns(vectors)
    t = as_matrix(t_map)
    if t.shape[1] != a.shape[0]:
        raise DimensionMismatchError(
            f"map takes vectors of dimension {t.shape[1]}, set lives in C^{a.shape[0]}")
    sb = span_basis(a, rel_tol)
    if rank_of(t @ sb.basis, rel_tol) != sb.rank:
        raise NotInjectiveOnSpanError("map is not injective on the span of the set")
    base = fullness_test(a, rel_tol)
    mapped = fullness_test(t @ a, rel_tol)
    return base, mapped
