"""Entrywise (Schur) products, column norms, and the closed-form multiplier
norm bounds: the cheap certificates everything else leans on.

The multiplier norm of ``X`` is the operator norm of ``Y -> X o Y`` on
matrices with the operator norm.  Two facts are used throughout:

* any factorization ``X = L* R`` certifies an upper bound
  ``column_norm(L) * column_norm(R)``;
* for PSD ``X`` the norm equals the largest diagonal entry.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPSDError, RowCountMismatchError, ShapeMismatchError
from .linalg import DEFAULT_REL_TOL, DEFAULT_TOL, as_matrix, psd_check, rank_of


@dataclass(frozen=True)
class NormBounds:
    """A certified bracket ``lower <= multiplier norm <= upper``."""

    lower: float
    upper: float
    method_notes: str


def schur_product(x, y) -> np.ndarray:
    a = as_matrix(x)
    b = as_matrix(y)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shapes {a.shape} and {b.shape} differ")
    return a * b


def column_norm(x) -> float:
    """Largest Euclidean norm of a column."""
    m = as_matrix(x)
    if m.shape[1] == 0:
        return 0.0
    return float(np.max(np.linalg.norm(m, axis=0)))


def factorization_upper_bound(l, r) -> float:
    """Certified upper bound on the multiplier norm of ``l* r``."""
    lm = as_matrix(l)
    rm = as_matrix(r)
    if lm.shape[0] != rm.shape[0]:
        raise RowCountMismatchError(
            f"factors have {lm.shape[0]} and {rm.shape[0]} rows"
        )
    return column_norm(lm) * column_norm(rm)


def positive_multiplier_norm(x, tol: float = DEFAULT_TOL) -> float:
    """Multiplier norm of a PSD matrix: its largest diagonal entry."""
    m = as_matrix(x)
    ok, min_eig = psd_check(m, tol)
    if not ok:
        raise NotPSDError(f"matrix is not PSD (min eigenvalue {min_eig:.3e})")
    return float(np.max(np.diag(m).real))


def entry_lower_bound(x) -> float:
    """max |X_ij|: the norm of the multiplier applied to a matrix unit."""
    m = as_matrix(x)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m)))


def norm_bounds(x) -> NormBounds:
    """Closed-form bracket: entry bound below, the better of the trivial
    factorizations ``X = I* X`` and ``X = X* I`` above."""
    m = as_matrix(x)
    lower = entry_lower_bound(m)
    col = column_norm(m)
    row = column_norm(m.conj().T)
    upper = min(col, row)
    return NormBounds(lower=lower, upper=upper,
                      method_notes="entry modulus vs best trivial factorization")


def rank_one_extremal_check(x, tol: float = DEFAULT_TOL,
                            rel_tol: float = DEFAULT_REL_TOL) -> bool:
    """True iff ``x`` has rank 1 and every entry has modulus 1 within
    ``tol``: the known form of rank-1 extremal multipliers of norm 1."""
    m = as_matrix(x)
    if rank_of(m, rel_tol) != 1:
        return False
    return bool(np.max(np.abs(np.abs(m) - 1.0)) <= tol)
