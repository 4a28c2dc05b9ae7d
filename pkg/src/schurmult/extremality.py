"""Extremality certificates for correlation matrices and Schur multipliers.

Three layers of certification:

* ``q_extremality``: exact characterization inside Q_n (PSD, unit diagonal).
  A member is extremal iff its columns form a full set; non-extremal members
  get an explicit convex split built from a fullness witness through the
  square root.
* ``positive_extremality_necessary``: necessary conditions for extremality
  among positive multipliers of norm 1 (fullness of the unit-length square
  root columns); failures are again refuted constructively.
* ``general_necessary_conditions``: necessary conditions for extremality in
  the unit ball of all multipliers, checked on a computed near-optimal
  factorization (unit columns, fullness of the combined column set, rank
  bound); refutations come with certified splits, passes are relative to
  the factorization found.

NotExtremal verdicts are absolute: they carry a split whose reconstruction,
membership, and distinctness are numerically verifiable.  Extremal verdicts
are downgraded to Inconclusive when the underlying rank decision is fragile
(margin below the audit threshold).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ActuallyExtremalError,
    BaseNotFullError,
    ColumnsNotUnitError,
    ExtraNotUnitError,
    NormBracketExcludesOneError,
    NormNotOneError,
    NotInQnError,
    NotSquareError,
    PrecisionNotReachedError,
    PreconditionViolatedError,
    WitnessDegenerateError,
    WitnessInvalidError,
)
from .fullness import FullnessResult, fullness_test, witness_candidates
from .linalg import (
    DEFAULT_REL_TOL,
    DEFAULT_TOL,
    _stack_columns,
    as_matrix,
    frob,
    polar,
    psd_check,
    psd_sqrt,
    rank_of,
)
from .norm import (
    SchurFactorization,
    compress_to_rank,
    multiplier_norm,
    optimal_psd_factorization,
)
from .schur import column_norm, positive_multiplier_norm

AUDIT_MARGIN = 1e-7
DISTINCTNESS_FLOOR = 1e-6


class Verdict(str, Enum):
    EXTREMAL = "Extremal"
    NOT_EXTREMAL = "NotExtremal"
    NECESSARY_PASS = "NecessaryConditionsPass"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ConvexSplit:
    """X = (1-alpha) Y + alpha Z with Y != X: a non-extremality certificate.

    ``context`` records which membership the pieces satisfy: "q" (both in
    Q_n), "positive" (PSD with diagonal at most 1), or "general" (multiplier
    norm at most 1, certified by the stored factorization bounds)."""

    alpha: float
    Y: np.ndarray
    Z: np.ndarray
    reconstruction_residual: float
    distinctness: float
    context: str
    y_norm_bound: float | None = None
    z_norm_bound: float | None = None


@dataclass(frozen=True)
class ExtremalityReport:
    verdict: Verdict
    fullness: FullnessResult | None
    rank: int
    rank_bound: float
    split: ConvexSplit | None
    margin: float
    notes: str = ""


def q_membership(x, tol: float = DEFAULT_TOL) -> bool:
    """PSD with every diagonal entry equal to 1 within ``tol``."""
    m = as_matrix(x)
    if m.shape[0] != m.shape[1]:
        raise NotSquareError(f"expected a square matrix, got {m.shape}")
    ok, _ = psd_check(m, tol)
    if not ok:
        return False
    d = np.diag(m)
    return bool(np.max(np.abs(d - 1.0)) <= tol)


def q_extremality(x, tol: float = DEFAULT_TOL, rel_tol: float = DEFAULT_REL_TOL,
                  audit_margin: float = AUDIT_MARGIN) -> ExtremalityReport:
    """Exact extremality test in Q_n: extremal iff the columns are full.

    Non-extremal members receive a convex split via :func:`q_decompose`.
    The verdict downgrades to Inconclusive when the fullness decision is
    numerically fragile.
    """
    m = as_matrix(x)
    if not q_membership(m, tol):
        raise NotInQnError("matrix is not PSD with unit diagonal")
    n = m.shape[0]
    res = fullness_test(m, rel_tol)
    rank = rank_of(m, rel_tol)
    bound = math.sqrt(n)
    if res.is_full:
        if res.margin < audit_margin:
            return ExtremalityReport(Verdict.INCONCLUSIVE, res, rank, bound, None,
                                     res.margin, notes="fullness margin below audit threshold")
        return ExtremalityReport(Verdict.EXTREMAL, res, rank, bound, None, res.margin)
    if res.next_singular_ratio > 0.1:
        return ExtremalityReport(Verdict.INCONCLUSIVE, res, rank, bound, None, res.margin,
                                 notes="discarded singular value too close to the rank cutoff")
    split = q_decompose(m, tol=tol, rel_tol=rel_tol)
    return ExtremalityReport(Verdict.NOT_EXTREMAL, res, rank, bound, split, res.margin)


def q_decompose(x, tol: float = DEFAULT_TOL, rel_tol: float = DEFAULT_REL_TOL,
                distinctness_floor: float = DISTINCTNESS_FLOOR) -> ConvexSplit:
    """Convex split of a non-extremal member of Q_n.

    With F the PSD square root and B a fullness witness for the columns of
    F, the midpoint pair is Y = F(I+B)F and Z = F(I-B)F: both stay in Q_n
    because ||B|| = 1 and <B F_j, F_j> = 0 pins their diagonals.
    """
    m = as_matrix(x)
    if not q_membership(m, tol):
        raise NotInQnError("matrix is not PSD with unit diagonal")
    f = psd_sqrt(m, tol, rel_tol)
    cands = witness_candidates(f, rel_tol)
    if not cands:
        raise ActuallyExtremalError("columns of the square root form a full set")
    for b in cands:
        fbf = f @ b @ f
        y = m + fbf
        z = m - fbf
        y = (y + y.conj().T) * 0.5
        z = (z + z.conj().T) * 0.5
        distinct = frob(fbf)
        if distinct < distinctness_floor:
            continue
        residual = frob(m - 0.5 * (y + z))
        return ConvexSplit(alpha=0.5, Y=y, Z=z, reconstruction_residual=residual,
                           distinctness=distinct, context="q",
                           y_norm_bound=1.0, z_norm_bound=1.0)
    raise WitnessDegenerateError("every witness produced a negligible perturbation")


def positive_extremality_necessary(x, tol: float = DEFAULT_TOL,
                                   rel_tol: float = DEFAULT_REL_TOL,
                                   col_tol: float = 1e-7,
                                   norm_tol: float = 1e-7,
                                   distinctness_floor: float = DISTINCTNESS_FLOOR) -> ExtremalityReport:
    """Necessary conditions for extremality among positive multipliers of
    norm 1: the unit-length columns of the square root must form a full set.

    When they do not, the witness is rescaled so the perturbed diagonals stay
    at most 1 and an explicit PSD split is returned (NotExtremal).  When they
    do, the verdict is NecessaryConditionsPass: the condition is necessary
    but not sufficient, so extremality is never claimed here.
    """
    m = as_matrix(x)
    pmn = positive_multiplier_norm(m, tol)
    if abs(pmn - 1.0) > norm_tol:
        raise NormNotOneError(f"positive multiplier norm is {pmn:.6g}, expected 1")
    n = m.shape[0]
    f = psd_sqrt(m, tol, rel_tol)
    col_norms = np.linalg.norm(f, axis=0)
    members = np.abs(col_norms - 1.0) <= col_tol
    unit_cols = f[:, members]
    res = fullness_test(unit_cols, rel_tol)
    rank = rank_of(m, rel_tol)
    bound = math.sqrt(n)
    if res.is_full:
        return ExtremalityReport(Verdict.NECESSARY_PASS, res, rank, bound, None,
                                 res.margin,
                                 notes=f"{int(np.sum(members))} unit column(s) form a full set")
    cap = 1.0
    for i in range(n):
        if not members[i]:
            cap = min(cap, 1.0 - float(col_norms[i]) ** 2)
    if cap <= 0:
        raise WitnessDegenerateError("no room to scale the witness below the diagonal cap")
    for b in witness_candidates(unit_cols, rel_tol):
        fbf = f @ (cap * b) @ f
        y = (m + fbf + (m + fbf).conj().T) * 0.5
        z = (m - fbf + (m - fbf).conj().T) * 0.5
        distinct = frob(fbf)
        if distinct < distinctness_floor:
            continue
        residual = frob(m - 0.5 * (y + z))
        split = ConvexSplit(alpha=0.5, Y=y, Z=z, reconstruction_residual=residual,
                            distinctness=distinct, context="positive",
                            y_norm_bound=float(np.max(np.diag(y).real)),
                            z_norm_bound=float(np.max(np.diag(z).real)))
        return ExtremalityReport(Verdict.NOT_EXTREMAL, res, rank, bound, split, res.margin)
    raise WitnessDegenerateError("every witness produced a negligible perturbation")


def _certified_norm_upper(m, tol: float, eps: float, starts: int, seed: int) -> float:
    """Cheap certified upper bound on the multiplier norm: the closed form
    for PSD inputs, the bisection upper bound otherwise."""
    ok, _ = psd_check(m, tol)
    if ok:
        return positive_multiplier_norm(m, tol)
    return multiplier_norm(m, eps, starts=starts, seed=seed).upper


def q_face_check(x, alpha: float, y, z, tol: float = 1e-6, eps: float = 1e-6,
                 starts: int = 20, seed: int = 0) -> bool:
    """Face property of Q_n: if X in Q_n equals (1-alpha) Y + alpha Z with
    both pieces of multiplier norm at most 1, then Y and Z lie in Q_n.

    Preconditions are enforced (certified norm bounds, reconstruction);
    the return value must be True for any valid instance, so False signals
    an implementation or certification error somewhere upstream.
    """
    xm = as_matrix(x)
    ym = as_matrix(y)
    zm = as_matrix(z)
    if not q_membership(xm, max(tol, DEFAULT_TOL)):
        raise NotInQnError("x is not in Q_n")
    if not 0.0 < alpha < 1.0:
        raise PreconditionViolatedError(f"alpha={alpha} is not in (0, 1)")
    recon = frob(xm - ((1.0 - alpha) * ym + alpha * zm))
    if recon > tol * max(1.0, frob(xm)):
        raise PreconditionViolatedError(
            f"decomposition does not reconstruct x (residual {recon:.3e})")
    for piece, name in ((ym, "y"), (zm, "z")):
        up = _certified_norm_upper(piece, DEFAULT_TOL, eps, starts, seed)
        if up > 1.0 + tol:
            raise PreconditionViolatedError(
                f"certified multiplier norm of {name} is {up:.8f} > 1")
    return q_membership(ym, tol) and q_membership(zm, tol)


def _column_split(l_fac: np.ndarray, r_fac: np.ndarray, side: str, j: int,
                  x_ref: np.ndarray) -> ConvexSplit:
    """Refutation from a short column: replace column j (of norm rho < 1) by
    the midpoint of two norm-<=1 vectors rho_dir*(rho +/- (1-rho))."""
    base = l_fac if side == "L" else r_fac
    col = base[:, j]
    rho = float(np.linalg.norm(col))
    if rho > 0:
        direction = col / rho
    else:
        direction = np.zeros(base.shape[0], dtype=np.complex128)
        direction[0] = 1.0
    d = 1.0 - rho
    plus = base.copy()
    minus = base.copy()
    plus[:, j] = direction * (rho + d)
    minus[:, j] = direction * (rho - d)
    if side == "L":
        y = plus.conj().T @ r_fac
        z = minus.conj().T @ r_fac
        bound_y = column_norm(plus) * column_norm(r_fac)
        bound_z = column_norm(minus) * column_norm(r_fac)
    else:
        y = l_fac.conj().T @ plus
        z = l_fac.conj().T @ minus
        bound_y = column_norm(l_fac) * column_norm(plus)
        bound_z = column_norm(l_fac) * column_norm(minus)
    # absorb the factorization's reconstruction error so the midpoint is exact
    err = x_ref - 0.5 * (y + z)
    y = y + err
    z = z + err
    shift = frob(err)
    residual = frob(x_ref - 0.5 * (y + z))
    distinct = frob(y - x_ref)
    return ConvexSplit(alpha=0.5, Y=y, Z=z, reconstruction_residual=residual,
                       distinctness=distinct, context="general",
                       y_norm_bound=bound_y + shift, z_norm_bound=bound_z + shift)


def general_decompose_from_witness(l_fac, r_fac, witness,
                                   tol: float = 1e-6,
                                   distinctness_floor: float = DISTINCTNESS_FLOOR) -> ConvexSplit:
    """Convex split of X = L* R from a fullness witness B of the combined
    column set: Y = A* G and Z = C* H with A = (I+B)^(1/2) L,
    C = (I-B)^(1/2) L, G = (I+B)^(1/2) R, H = (I-B)^(1/2) R.

    The orthogonality <B L_i, L_i> = <B R_j, R_j> = 0 pins every column of
    A, C, G, H to unit length, so both pieces have multiplier norm at most 1.
    """
    lm = as_matrix(l_fac)
    rm = as_matrix(r_fac)
    b = as_matrix(witness)
    r = lm.shape[0]
    if rm.shape[0] != r or b.shape != (r, r):
        raise WitnessInvalidError("factor row counts and witness shape must agree")
    if frob(b - b.conj().T) > tol * max(1.0, frob(b)):
        raise WitnessInvalidError("witness is not Hermitian within tolerance")
    nrm = float(np.linalg.norm(b, 2))
    if abs(nrm - 1.0) > tol:
        raise WitnessInvalidError(f"witness operator norm is {nrm:.8f}, expected 1")
    for mat, name in ((lm, "L"), (rm, "R")):
        cols = np.linalg.norm(mat, axis=0)
        if cols.size and np.max(np.abs(cols - 1.0)) > tol:
            raise WitnessInvalidError(f"columns of {name} are not unit vectors")
        vals = np.einsum("ri,rs,si->i", mat.conj(), b, mat)
        if vals.size and np.max(np.abs(vals)) > tol:
            raise WitnessInvalidError(f"witness does not annihilate the columns of {name}")
    b = (b + b.conj().T) * 0.5
    b = b / nrm
    eye = np.eye(r)
    sqrt_plus = psd_sqrt(eye + b, tol=max(tol, DEFAULT_TOL))
    sqrt_minus = psd_sqrt(eye - b, tol=max(tol, DEFAULT_TOL))
    a_mat = sqrt_plus @ lm
    c_mat = sqrt_minus @ lm
    g_mat = sqrt_plus @ rm
    h_mat = sqrt_minus @ rm
    y = a_mat.conj().T @ g_mat
    z = c_mat.conj().T @ h_mat
    x_ref = lm.conj().T @ rm
    residual = frob(x_ref - 0.5 * (y + z))
    distinct = frob(y - x_ref)
    if distinct < distinctness_floor:
        raise WitnessDegenerateError("witness perturbation is below the distinctness floor")
    return ConvexSplit(alpha=0.5, Y=y, Z=z, reconstruction_residual=residual,
                       distinctness=distinct, context="general",
                       y_norm_bound=column_norm(a_mat) * column_norm(g_mat),
                       z_norm_bound=column_norm(c_mat) * column_norm(h_mat))


def general_necessary_conditions(x, eps: float = 1e-6, *, starts: int = 50,
                                 seed: int = 0, tol: float = DEFAULT_TOL,
                                 rel_tol: float = DEFAULT_REL_TOL,
                                 col_tol: float = 1e-3, scale: bool = True,
                                 max_sweeps: int = 5000,
                                 method: str = "dr") -> ExtremalityReport:
    """Necessary conditions for extremality in the unit ball of multipliers.

    Computes a near-optimal rank-r factorization (after scaling the input to
    norm 1), then checks: (a) all columns of both factors are unit vectors,
    (b) the combined column set is full in C^r, (c) r^2 <= m + n.  A failure
    of (a) or (b) yields a certified split (NotExtremal, an absolute
    verdict); passing yields NecessaryConditionsPass, a verdict relative to
    the factorization found.
    """
    xm = as_matrix(x)
    nr = multiplier_norm(xm, eps, starts=starts, seed=seed, tol=tol,
                         rel_tol=rel_tol, max_sweeps=max_sweeps, method=method)
    if not nr.converged:
        raise PrecisionNotReachedError(
            f"norm bracket [{nr.lower:.8g}, {nr.upper:.8g}] wider than eps")
    mid = 0.5 * (nr.upper + nr.lower)
    if scale:
        xs = xm / mid
        fact = SchurFactorization(L=nr.factorization.L / math.sqrt(mid),
                                  R=nr.factorization.R / math.sqrt(mid),
                                  value=nr.factorization.value / mid,
                                  residual=nr.factorization.residual / mid)
    else:
        if not (nr.lower - 2 * eps <= 1.0 <= nr.upper + 2 * eps):
            raise NormBracketExcludesOneError(
                f"norm bracket [{nr.lower:.8g}, {nr.upper:.8g}] does not contain 1")
        xs = xm
        fact = nr.factorization
    fact = compress_to_rank(fact, xs, rel_tol)
    r = fact.rows
    m_rows, n_cols = xs.shape
    bound = math.sqrt(m_rows + n_cols)

    l_norms = np.linalg.norm(fact.L, axis=0)
    r_norms = np.linalg.norm(fact.R, axis=0)
    combined = np.hstack([fact.L, fact.R])
    full_res = fullness_test(combined, rel_tol)

    short = []
    for side, norms in (("L", l_norms), ("R", r_norms)):
        for j, val in enumerate(norms):
            if val < 1.0 - col_tol:
                short.append((side, j, float(val)))
    if short:
        side, j, val = min(short, key=lambda item: item[2])
        split = _column_split(fact.L, fact.R, side, j, xs)
        notes = f"column {j} of {side} has norm {val:.6f} < 1"
        return ExtremalityReport(Verdict.NOT_EXTREMAL, full_res, r, bound, split,
                                 full_res.margin, notes=notes)
    if not full_res.is_full:
        last_err: Exception | None = None
        for b in witness_candidates(combined, rel_tol):
            try:
                split = general_decompose_from_witness(
                    fact.L, fact.R, b, tol=max(2 * col_tol, 1e-6))
            except (WitnessDegenerateError, WitnessInvalidError) as exc:
                last_err = exc
                continue
            notes = "combined column set is not full"
            return ExtremalityReport(Verdict.NOT_EXTREMAL, full_res, r, bound, split,
                                     full_res.margin, notes=notes)
        raise WitnessDegenerateError(
            f"no usable witness for the non-full combined set: {last_err}")
    notes = "unit columns and full combined set, relative to the computed factorization"
    if r * r > m_rows + n_cols:
        # impossible when the combined set is genuinely full
        return ExtremalityReport(Verdict.INCONCLUSIVE, full_res, r, bound, None,
                                 full_res.margin,
                                 notes="rank bound violated despite fullness; audit required")
    return ExtremalityReport(Verdict.NECESSARY_PASS, full_res, r, bound, None,
                             full_res.margin, notes=notes)


def fvg_factorization(x, eps: float = 1e-6, *, starts: int = 50, seed: int = 0,
                      tol: float = DEFAULT_TOL, rel_tol: float = DEFAULT_REL_TOL,
                      col_tol: float = 1e-3):
    """Factorization X = F V G with F, G positive of rank r whose squares
    have unit diagonal, and V a partial isometry from range(G) to range(F).

    Requires a factorization with all-unit columns to exist (multiplier norm
    1 up to tolerance).  PSD inputs use the exact square-root construction;
    everything else goes through the bisection solver.
    """
    xm = as_matrix(x)
    ok, _ = psd_check(xm, tol)
    if ok:
        fact = optimal_psd_factorization(xm, tol, rel_tol)
    else:
        nr = multiplier_norm(xm, eps, starts=starts, seed=seed, tol=tol,
                             rel_tol=rel_tol)
        if not nr.converged:
            raise PrecisionNotReachedError("norm bracket did not close")
        fact = compress_to_rank(nr.factorization, xm, rel_tol)
    for mat, name in ((fact.L, "L"), (fact.R, "R")):
        cols = np.linalg.norm(mat, axis=0)
        if cols.size and np.max(np.abs(cols - 1.0)) > col_tol:
            raise ColumnsNotUnitError(
                f"columns of {name} deviate from unit length by "
                f"{float(np.max(np.abs(cols - 1.0))):.3e}")
    w_l, f_mat = polar(fact.L, rel_tol)
    u_r, g_mat = polar(fact.R, rel_tol)
    v_mat = w_l.conj().T @ u_r
    return f_mat, v_mat, g_mat


def corollary_decomposition_bound(x, tol: float = DEFAULT_TOL,
                                  rel_tol: float = DEFAULT_REL_TOL) -> float:
    """Lower bound rank(X)/sqrt(n) on the number of extremal points in any
    convex decomposition of X in Q_n."""
    m = as_matrix(x)
    if not q_membership(m, tol):
        raise NotInQnError("matrix is not PSD with unit diagonal")
    return rank_of(m, rel_tol) / math.sqrt(m.shape[0])


def generate_extremal_q(n: int, r: int, trials: int, seed: int = 0,
                        rel_tol: float = DEFAULT_REL_TOL,
                        audit_margin: float = AUDIT_MARGIN) -> list[tuple[np.ndarray, ExtremalityReport]]:
    """Sample r x n matrices with random unit columns, keep those whose
    columns form a full set, and return the resulting extremal Gram matrices
    with their reports.  Deterministic for a fixed seed; empty whenever
    r^2 > n (no full set of n vectors can span more than sqrt(n) dimensions).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n < 1 or r < 1:
        raise ValueError("n and r must be >= 1")
    if r * r > n:
        return []
    out = []
    for trial in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence([seed, trial]))
        l_fac = rng.standard_normal((r, n)) + 1j * rng.standard_normal((r, n))
        l_fac /= np.linalg.norm(l_fac, axis=0)
        res = fullness_test(l_fac, rel_tol)
        if not res.is_full or res.margin < audit_margin:
            continue
        gram = l_fac.conj().T @ l_fac
        gram = (gram + gram.conj().T) * 0.5
        np.fill_diagonal(gram, 1.0)
        report = q_extremality(gram, rel_tol=rel_tol, audit_margin=audit_margin)
        out.append((gram, report))
    return out


def extend_columns(l_fac, extras, tol: float = DEFAULT_TOL,
                   rel_tol: float = DEFAULT_REL_TOL) -> tuple[np.ndarray, ExtremalityReport]:
    """Append extra unit columns to a matrix whose columns form a full set
    spanning all of C^r; the extended Gram matrix stays extremal because a
    superset with unchanged span inherits fullness."""
    lm = as_matrix(l_fac)
    r = lm.shape[0]
    base = fullness_test(lm, rel_tol)
    if not base.is_full:
        raise BaseNotFullError("columns of the base matrix do not form a full set")
    if base.span_rank != r:
        raise BaseNotFullError(
            f"base columns span {base.span_rank} dimensions, need all {r}")
    extra = _stack_columns(extras)
    if extra.shape[0] != r:
        raise ExtraNotUnitError(
            f"extra vectors live in C^{extra.shape[0]}, expected C^{r}")
    norms = np.linalg.norm(extra, axis=0)
    if norms.size and np.max(np.abs(norms - 1.0)) > max(tol, 1e-9):
        raise ExtraNotUnitError("extra columns must be unit vectors")
    lhat = np.hstack([lm, extra])
    gram = lhat.conj().T @ lhat
    gram = (gram + gram.conj().T) * 0.5
    np.fill_diagonal(gram, 1.0)
    report = q_extremality(gram, tol=tol, rel_tol=rel_tol)
    return gram, report
