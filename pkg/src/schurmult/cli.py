"""Command-line frontend.

Every subcommand maps 1:1 to a library operation, reads matrices from JSON
or CSV files (``--input golden:NAME`` loads a bundled example), writes a
single JSON report to stdout and a short human summary to stderr.

Exit codes: 0 success; 1 mathematical refutation of a yes/no question
(non-extremal input, non-full set, failed face check); 2 input or
precondition errors; 3 precision not reached / inconclusive.

The environment variable ``SCHURMULT_TOL`` overrides the default rank/PSD
tolerance (the ``--tol`` flag still wins).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import extremality as ext
from . import fullness as ful
from . import matio
from . import norm as nrm
from . import schur
from ._backend import NAME as BACKEND_NAME
from .errors import ParseError, PrecisionNotReachedError, SchurmultError

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INPUT = 2
EXIT_PRECISION = 3


def _default_tol() -> float:
    env = os.environ.get("SCHURMULT_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            pass
    return 1e-9


def _load(spec_path: str, fmt: str) -> np.ndarray:
    if spec_path.startswith("golden:"):
        return matio.load_golden(spec_path.split(":", 1)[1])
    return matio.parse_matrix(spec_path, fmt)


def _fact_payload(f: nrm.SchurFactorization) -> dict:
    return {
        "rows": int(f.rows),
        "value": float(f.value),
        "residual": float(f.residual),
        "L": matio.matrix_payload(f.L),
        "R": matio.matrix_payload(f.R),
    }


def _norm_payload(res: nrm.NormResult) -> dict:
    return {
        "upper": res.upper,
        "lower": res.lower,
        "eps_target": res.eps_target,
        "iterations": res.iterations,
        "sweeps": res.sweeps,
        "converged": res.converged,
        "factorization": _fact_payload(res.factorization),
    }


def _fullness_payload(res: ful.FullnessResult) -> dict:
    return {
        "is_full": res.is_full,
        "span_rank": res.span_rank,
        "required_rank": res.required_rank,
        "achieved_rank": res.achieved_rank,
        "margin": res.margin,
        "next_singular_ratio": res.next_singular_ratio,
        "witness": matio.matrix_payload(res.witness) if res.witness is not None else None,
    }


def _split_payload(split: ext.ConvexSplit) -> dict:
    return {
        "alpha": split.alpha,
        "Y": matio.matrix_payload(split.Y),
        "Z": matio.matrix_payload(split.Z),
        "reconstruction_residual": split.reconstruction_residual,
        "distinctness": split.distinctness,
        "context": split.context,
        "y_norm_bound": split.y_norm_bound,
        "z_norm_bound": split.z_norm_bound,
    }


def _report_payload(rep: ext.ExtremalityReport) -> dict:
    return {
        "verdict": rep.verdict.value,
        "rank": rep.rank,
        "rank_bound": rep.rank_bound,
        "margin": rep.margin,
        "notes": rep.notes,
        "fullness": _fullness_payload(rep.fullness) if rep.fullness is not None else None,
        "split": _split_payload(rep.split) if rep.split is not None else None,
    }


def _verdict_exit(rep: ext.ExtremalityReport, good: ext.Verdict) -> int:
    if rep.verdict == good:
        return EXIT_OK
    if rep.verdict == ext.Verdict.INCONCLUSIVE:
        return EXIT_PRECISION
    return EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schurmult",
        description="Schur multiplier norms, fullness tests, extremality certificates",
    )
    parser.add_argument("--version", action="store_true", help="print version and backend")
    sub = parser.add_subparsers(dest="command")

    def add(name: str, needs_input: bool = True, **kwargs):
        p = sub.add_parser(name, **kwargs)
        if needs_input:
            p.add_argument("--input", required=True,
                           help="matrix file (json/csv) or golden:NAME")
        p.add_argument("--tol", type=float, default=_default_tol(),
                       help="rank/PSD tolerance (default 1e-9, env SCHURMULT_TOL)")
        p.add_argument("--eps", type=float, default=1e-6,
                       help="norm precision target (default 1e-6)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=None,
                       help="random starts / sample trials where applicable")
        p.add_argument("--format", default="auto", choices=("auto", "json", "csv"))
        p.add_argument("--output", default=None, help="also write the JSON report here")
        return p

    add("norm", help="certified multiplier-norm bracket")
    add("factorize", help="near-optimal factorization X = L* R")
    add("fullness", help="fullness of the columns of the input")
    add("extremal-q", help="extremality in Q_n (exact characterization)")
    add("extremal-positive", help="necessary conditions for positive multipliers")
    add("extremal-general", help="necessary conditions for general multipliers")
    add("decompose", help="convex split of a non-extremal member of Q_n")
    p = add("face-check", help="face property of Q_n for a given decomposition")
    p.add_argument("--y", required=True, help="first piece")
    p.add_argument("--z", required=True, help="second piece")
    p.add_argument("--alpha", type=float, default=0.5)
    add("bound", help="rank(X)/sqrt(n): decomposition length lower bound")
    p = add("generate", needs_input=False, help="sample extremal members of Q_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p = add("extend", help="extend a full unit-column matrix by extra columns")
    p.add_argument("--extras", default=None, help="matrix file whose columns are appended")
    p.add_argument("--random-extras", type=int, default=None,
                   help="append this many random unit columns instead")
    p = add("schur-product", help="entrywise product of two matrices")
    p.add_argument("--other", required=True, help="second matrix file")
    return parser


def _run_command(args) -> tuple[dict, int, str, str]:
    """Returns (result_payload, exit_code, summary, input_digest)."""
    tol = args.tol
    eps = args.eps
    seed = args.seed
    digest = ""

    if args.command == "generate":
        trials = args.trials if args.trials is not None else 100
        samples = ext.generate_extremal_q(args.n, args.r, trials, seed=seed)
        payload = {
            "n": args.n,
            "r": args.r,
            "trials": trials,
            "accepted": len(samples),
            "samples": [
                {"matrix": matio.matrix_payload(x), "report": _report_payload(rep)}
                for x, rep in samples
            ],
        }
        return payload, EXIT_OK, f"accepted {len(samples)} of {trials} trials", digest

    x = _load(args.input, args.format)
    digest = matio.matrix_digest(x)

    if args.command == "norm":
        starts = args.trials if args.trials is not None else 50
        res = nrm.multiplier_norm(x, eps, starts=starts, seed=seed, tol=tol)
        code = EXIT_OK if res.converged else EXIT_PRECISION
        return (_norm_payload(res), code,
                f"norm in [{res.lower:.10g}, {res.upper:.10g}]", digest)

    if args.command == "factorize":
        starts = args.trials if args.trials is not None else 50
        res = nrm.multiplier_norm(x, eps, starts=starts, seed=seed, tol=tol)
        code = EXIT_OK if res.converged else EXIT_PRECISION
        return (_norm_payload(res), code,
                f"rank-{res.factorization.rows} factorization, value {res.factorization.value:.10g}",
                digest)

    if args.command == "fullness":
        res = ful.fullness_test(x, rel_tol=tol)
        code = EXIT_OK if res.is_full else EXIT_REFUTED
        return (_fullness_payload(res), code,
                f"full={res.is_full} (achieved {res.achieved_rank} of {res.required_rank}, "
                f"margin {res.margin:.3g})", digest)

    if args.command == "extremal-q":
        rep = ext.q_extremality(x, tol=tol)
        return (_report_payload(rep), _verdict_exit(rep, ext.Verdict.EXTREMAL),
                f"verdict {rep.verdict.value}, rank {rep.rank}", digest)

    if args.command == "extremal-positive":
        rep = ext.positive_extremality_necessary(x, tol=tol)
        return (_report_payload(rep), _verdict_exit(rep, ext.Verdict.NECESSARY_PASS),
                f"verdict {rep.verdict.value}", digest)

    if args.command == "extremal-general":
        starts = args.trials if args.trials is not None else 50
        rep = ext.general_necessary_conditions(x, eps, starts=starts, seed=seed, tol=tol)
        return (_report_payload(rep), _verdict_exit(rep, ext.Verdict.NECESSARY_PASS),
                f"verdict {rep.verdict.value}, rank {rep.rank}", digest)

    if args.command == "decompose":
        split = ext.q_decompose(x, tol=tol)
        return (_split_payload(split), EXIT_OK,
                f"split with distinctness {split.distinctness:.3g}", digest)

    if args.command == "face-check":
        y = _load(args.y, args.format)
        z = _load(args.z, args.format)
        ok = ext.q_face_check(x, args.alpha, y, z, eps=eps, seed=seed)
        return ({"face_property_holds": bool(ok)},
                EXIT_OK if ok else EXIT_REFUTED, f"face property holds: {ok}", digest)

    if args.command == "bound":
        val = ext.corollary_decomposition_bound(x, tol=tol)
        return ({"bound": val}, EXIT_OK,
                f"any convex decomposition needs at least {val:.6g} extremal points", digest)

    if args.command == "extend":
        if (args.extras is None) == (args.random_extras is None):
            raise ParseError("provide exactly one of --extras / --random-extras")
        if args.extras is not None:
            extras = _load(args.extras, args.format)
        else:
            rng = np.random.default_rng(np.random.SeedSequence([seed, 0xE7]))
            k = args.random_extras
            extras = rng.standard_normal((x.shape[0], k)) + 1j * rng.standard_normal((x.shape[0], k))
            extras /= np.linalg.norm(extras, axis=0)
        gram, rep = ext.extend_columns(x, extras, tol=tol)
        payload = {"gram": matio.matrix_payload(gram), "report": _report_payload(rep)}
        return (payload, _verdict_exit(rep, ext.Verdict.EXTREMAL),
                f"extended Gram is {rep.verdict.value} in Q_{gram.shape[0]}", digest)

    if args.command == "schur-product":
        other = _load(args.other, args.format)
        prod = schur.schur_product(x, other)
        return ({"product": matio.matrix_payload(prod)}, EXIT_OK,
                f"{prod.shape[0]}x{prod.shape[1]} entrywise product", digest)

    raise ParseError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "version", False) and args.command is None:
        from . import __version__

        print(f"schurmult {__version__} (backend: {BACKEND_NAME})")
        return EXIT_OK
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_INPUT

    started = time.perf_counter()
    error = None
    payload: dict = {}
    code = EXIT_OK
    summary = ""
    digest = ""
    try:
        payload, code, summary, digest = _run_command(args)
    except PrecisionNotReachedError as exc:
        error = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_PRECISION
        summary = f"precision not reached: {exc}"
    except SchurmultError as exc:
        error = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_INPUT
        summary = f"error: {exc}"
    except OSError as exc:
        error = {"type": type(exc).__name__, "message": str(exc)}
        code = EXIT_INPUT
        summary = f"error: {exc}"

    report = {
        "command": args.command,
        "input_digest": digest,
        "tolerances": {"tol": args.tol, "eps": args.eps},
        "seed": args.seed,
        "result": payload if error is None else None,
        "error": error,
        "wall_time_s": time.perf_counter() - started,
    }
    text = json.dumps(report, sort_keys=True, indent=2)
    print(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
