"""Dense complex matrix primitives: Hermitian eigendecomposition, SVD-based
rank and span bases, PSD square roots, polar decompositions.

All functions are pure, operate on (and return) ``numpy.ndarray`` with dtype
``complex128``, and use a relative singular-value cutoff (default ``1e-9``)
wherever a numerical rank decision is made.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    NotHermitianError,
    NotPSDError,
    NotSquareError,
)

DEFAULT_TOL = 1e-9
DEFAULT_REL_TOL = 1e-9


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array and reject non-finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def frob(a) -> float:
    return float(np.linalg.norm(a, "fro"))


@dataclass(frozen=True)
class HermEig:
    """Eigenvalues ascending, eigenvectors as orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class SpanBasis:
    """Orthonormal basis of the span of a vector family.

    ``basis`` is k x rank with orthonormal columns; ``basis @ basis.conj().T``
    is the orthogonal projection onto the span.  ``tol_used`` is the absolute
    singular-value cutoff that determined ``rank``.
    """

    basis: np.ndarray
    rank: int
    singular_values: np.ndarray
    tol_used: float


def herm_eig(h, tol: float = DEFAULT_TOL) -> HermEig:
    """Eigendecomposition of a Hermitian matrix.

    Raises ``NotSquareError`` / ``NotHermitianError``; the input only needs
    to be Hermitian within ``tol`` relative to its norm, and is symmetrized
    before decomposing.
    """
    m = as_matrix(h)
    if m.shape[0] != m.shape[1]:
        raise NotSquareError(f"expected a square matrix, got {m.shape}")
    asym = frob(m - m.conj().T)
    if asym > tol * max(1.0, frob(m)):
        raise NotHermitianError(f"asymmetry {asym:.3e} exceeds tolerance")
    w, v = _backend.eigh((m + m.conj().T) * 0.5)
    return HermEig(eigenvalues=np.asarray(w, dtype=float), eigenvectors=np.asarray(v))


def span_basis(vectors, rel_tol: float = DEFAULT_REL_TOL) -> SpanBasis:
    """Orthonormal basis (left singular vectors) of the span of the given
    vectors, with rank decided at ``rel_tol`` times the largest singular
    value."""
    a = _stack_columns(vectors)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    cut = rel_tol * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cut))
    return SpanBasis(basis=u[:, :rank], rank=rank, singular_values=s, tol_used=float(cut))


def _stack_columns(vectors) -> np.ndarray:
    """Vectors given as a sequence of 1-D arrays or as the columns of a
    matrix; returns the k x n column stack."""
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        if vectors.shape[1] == 0:
            raise EmptyInputError("no vectors given")
        return np.asarray(vectors, dtype=np.complex128)
    vecs = list(vectors)
    if not vecs:
        raise EmptyInputError("no vectors given")
    cols = []
    dim = None
    for i, vec in enumerate(vecs):
        v = np.asarray(vec, dtype=np.complex128).reshape(-1)
        if dim is None:
            dim = v.size
        elif v.size != dim:
            raise DimensionMismatchError(
                f"vector {i} has dimension {v.size}, expected {dim}"
            )
        cols.append(v)
    return np.column_stack(cols)


def rank_of(x, rel_tol: float = DEFAULT_REL_TOL) -> int:
    """Number of singular values above ``rel_tol`` times the largest."""
    m = as_matrix(x)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


def psd_check(x, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """(is_psd, min_eigenvalue).  PSD means Hermitian within ``tol`` and no
    eigenvalue below ``-tol`` (both scaled by max(1, spectral norm))."""
    m = as_matrix(x)
    if m.shape[0] != m.shape[1]:
        raise NotSquareError(f"expected a square matrix, got {m.shape}")
    herm = (m + m.conj().T) * 0.5
    w, _ = _backend.eigh(herm)
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 0.0)
    asym = frob(m - m.conj().T)
    min_eig = float(w[0]) if w.size else 0.0
    ok = asym <= tol * scale and min_eig >= -tol * scale
    return ok, min_eig


def psd_sqrt(x, tol: float = DEFAULT_TOL, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """Hermitian PSD square root.

    Eigenvalues below ``rel_tol`` times the largest are treated as zero, so
    the result has the same numerical rank as the input.  Raises
    ``NotPSDError`` when an eigenvalue is genuinely negative.
    """
    m = as_matrix(x)
    ok, min_eig = psd_check(m, tol)
    if not ok:
        raise NotPSDError(f"matrix is not PSD (min eigenvalue {min_eig:.3e})")
    w, v = _backend.eigh((m + m.conj().T) * 0.5)
    wmax = float(w[-1]) if w.size else 0.0
    wc = np.where(w > rel_tol * max(wmax, 0.0), w, 0.0) if wmax > 0 else np.zeros_like(w)
    f = (v * np.sqrt(wc)) @ v.conj().T
    return (f + f.conj().T) * 0.5


def polar(a, rel_tol: float = DEFAULT_REL_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Polar decomposition ``a = w @ f`` with ``f`` the PSD square root of
    ``a* a`` and ``w`` a partial isometry whose initial space is the range
    of ``f``."""
    m = as_matrix(a)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    cut = rel_tol * (s[0] if s.size else 0.0)
    r = int(np.sum(s > cut))
    w = u[:, :r] @ vh[:r, :]
    f = (vh.conj().T[:, :r] * s[:r]) @ vh[:r, :]
    f = (f + f.conj().T) * 0.5
    return w, f
