"""
Command-line front door: parse a job, dispatch it, emit the result.

Exit codes: 0 on success, 1 on usage or precondition errors, 2 when an
internal identity fails (for example a nonzero Vandermonde remainder or a
verify-suite disagreement).
"""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from charderiv.combinatorics import kostka, schur_eval
from charderiv.config import DEFAULT_CONFIG_PATH, Config, load_config
from charderiv.core.errors import CharDerivError, InvariantBreachError, PreconditionError
from charderiv.core.scalars import ExactScalar
from charderiv.emit import emit
from charderiv.evaluators import DetProblem, eval_det_kostka
from charderiv.jets import build_D
from charderiv.jobs import load_job, run_job
from charderiv.rmt import (
    MomentResult,
    cue_circle_finite,
    cue_circle_limit_d1_exact,
    cue_finite_moment,
    cue_inside_disc,
    cue_inside_disc_general,
    cue_jet,
    ginibre_finite_moment,
    ginibre_jet,
    ginibre_kernel_prefactor,
    ginibre_moment_first,
    ginibre_moment_from_kernel,
    ginibre_moment_general,
    ginibre_moment_grid,
    ginibre_moment_one_higher,
    ginibre_moment_two_higher,
)
from charderiv.utils import terminal_display as display
from charderiv.verify import SUITES, check, verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_INVARIANT = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as exit code 1 instead of argparse's 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: {message}")


# ── argument types ─────────────────────────────────────────────────────

def _ints(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"entries must be non-negative, got {text!r}")
    return values


def _scalar(text: str) -> ExactScalar:
    try:
        return ExactScalar.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _scalars(text: str) -> tuple[ExactScalar, ...]:
    return tuple(_scalar(part) for part in text.split(",") if part.strip())


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=None,
                        help="Output format (default: from config)")
    common.add_argument("--out", default=None, help="Write output to this path instead of stdout")
    common.add_argument("--numeric", action="store_true", default=None,
                        help="Convert exact scalars to doubles")
    common.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    common.add_argument("--config", default=None, help="Config file (default: bundled config)")

    parser = _Parser(prog="charderiv", description="Exact moments of derivatives of characteristic polynomials")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("kostka", parents=[common], help="Kostka number K_{shape, weight}")
    p.add_argument("--shape", type=_ints, required=True)
    p.add_argument("--weight", type=_ints, required=True)

    p = sub.add_parser("schur", parents=[common], help="Schur polynomial at exact points")
    p.add_argument("--shape", type=_ints, required=True)
    p.add_argument("--points", type=_scalars, required=True)
    p.add_argument("--route", choices=("det", "monomial", "both"), default="both")

    p = sub.add_parser("dop", parents=[common], help="Render the operator D_(u,k)")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("eval", parents=[common], help="Evaluate a job file or a named kernel")
    p.add_argument("--job", default=None, help="JSON job file")
    p.add_argument("--kernel", choices=("ginibre", "cue"), default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--alpha", type=_ints, default=())
    p.add_argument("--beta", type=_ints, default=())
    p.add_argument("--chi", type=_scalar, default=None)
    p.add_argument("--N", type=int, default=None)

    p = sub.add_parser("ginibre", parents=[common], help="Ginibre mixed moments")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--alpha", type=_ints, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--n1", type=int, default=None)
    p.add_argument("--n2", type=int, default=0)
    p.add_argument("--chi", type=_scalar, default=None)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--route", choices=("closed", "kernel"), default="closed")
    p.add_argument("--grid", action="store_true", help="Moment grid k=1..max-k, h=0..k")
    p.add_argument("--max-k", type=int, default=3)

    p = sub.add_parser("cue", parents=[common], help="CUE moments of derivatives")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h1", type=int, default=0)
    p.add_argument("--h2", type=int, default=0)
    p.add_argument("--h", type=_ints, default=None, help="Full multiplicity vector h_0,h_1,...")
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--chi", type=_scalar, default=None)
    p.add_argument("--circle", action="store_true", help="Unit-circle family at chi=1")
    p.add_argument("--c", type=_scalar, default=ExactScalar(0))

    p = sub.add_parser("verify", parents=[common], help="Run a cross-verification suite")
    p.add_argument("--suite", choices=SUITES, default="cross")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--cases", type=int, default=None)
    return parser


# ── commands ───────────────────────────────────────────────────────────

def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise PreconditionError(f"{args.command} needs {', '.join(missing)}")


def _cmd_kostka(args, config: Config) -> Any:
    return kostka(args.shape, args.weight)


def _cmd_schur(args, config: Config) -> Any:
    return schur_eval(args.shape, args.points, args.route)


def _cmd_dop(args, config: Config) -> Any:
    return {"k": args.k, "operator": build_D(args.k).render()}


def _cmd_eval(args, config: Config) -> Any:
    if args.job:
        return run_job(load_job(args.job))
    _require(args, "kernel", "k", "chi")
    k = args.k
    order_u = sum(args.alpha) + k - 1
    order_v = sum(args.beta) + k - 1
    if args.kernel == "ginibre":
        jet = ginibre_jet(args.N, args.chi, order_u, order_v)
        prefactor = ginibre_kernel_prefactor(args.N) ** k
    else:
        _require(args, "N")
        jet = cue_jet(args.N, args.chi, order_u, order_v)
        prefactor = None
    value = eval_det_kostka(DetProblem(k, args.alpha, args.beta, kernel=jet))
    out = {"kernel": args.kernel, "k": k, "value": value}
    if prefactor is not None:
        out["prefactor"] = prefactor
    return out


def _cmd_ginibre(args, config: Config) -> Any:
    if args.grid:
        return ginibre_moment_grid(args.max_k)
    _require(args, "k")
    k = args.k
    if args.N is not None or args.route == "kernel":
        _require(args, "chi")
        alpha = args.alpha if args.alpha is not None else ()
        if args.N is not None:
            return ginibre_finite_moment(args.N, k, alpha, args.chi)
        return ginibre_moment_from_kernel(k, alpha, args.chi)
    if args.h is not None:
        return ginibre_moment_first(k, args.h)
    if args.n is not None:
        return ginibre_moment_one_higher(k, args.n)
    if args.n1 is not None:
        return ginibre_moment_two_higher(k, args.n1, args.n2)
    return ginibre_moment_general(k, args.alpha or ())


def _cmd_cue(args, config: Config) -> Any:
    k, h1, h2 = args.k, args.h1, args.h2
    if args.circle:
        if args.N is not None:
            value = cue_circle_finite(args.N, k, h1, args.c)
            return {"N": args.N, "k": k, "h1": h1, "c": args.c, "value": value}
        limit = cue_circle_limit_d1_exact(k, h1, args.c)
        return {"k": k, "h1": h1, "c": args.c, "limit": limit}
    if args.N is not None:
        _require(args, "chi")
        value = cue_finite_moment(args.N, k, h1, h2, chi=args.chi)
        return {"N": args.N, "k": k, "h1": h1, "h2": h2, "chi": args.chi, "value": value}
    if args.h is not None:
        return cue_inside_disc_general(k, args.h)
    if h2:
        return cue_inside_disc_general(k, (k - h1 - h2, h1, h2))
    return cue_inside_disc(k, h1)


def _cmd_verify(args, config: Config) -> Any:
    cfg = config.verify
    results = verify(
        args.suite,
        seed=cfg.seed if args.seed is None else args.seed,
        max_k=cfg.max_k if args.max_k is None else args.max_k,
        count=cfg.cases if args.cases is None else args.cases,
        threads=config.threads,
        max_degree=cfg.max_degree,
        bound=cfg.coefficient_bound,
        inside_disc_N=config.cue.inside_disc_N,
        circle_sizes=tuple(config.cue.circle_sizes),
        circle_tolerance=config.cue.circle_tolerance,
    )
    return results


_HANDLERS = {
    "kostka": _cmd_kostka,
    "schur": _cmd_schur,
    "dop": _cmd_dop,
    "eval": _cmd_eval,
    "ginibre": _cmd_ginibre,
    "cue": _cmd_cue,
    "verify": _cmd_verify,
}


# ── output ─────────────────────────────────────────────────────────────

def _numeric_point(args) -> float | None:
    chi = getattr(args, "chi", None)
    return float(chi.abs2()) if chi is not None else None


def _show_text(command: str, result: Any, args, numeric: bool) -> None:
    if command == "verify":
        for r in result:
            display.print_case(r.passed, r.index, r.kind, r.label, r.detail)
        display.print_summary(len(result), sum(not r.passed for r in result))
        return
    if command == "dop":
        display.print_operator(result["k"], result["operator"])
        return
    results = result if isinstance(result, list) else [result]
    if results and isinstance(results[0], MomentResult):
        t = _numeric_point(args)
        for r in results:
            if numeric and t is not None:
                display.print_value(r.numeric(t))
                continue
            head = " ".join(f"{key}={value}" for key, value in r.to_json().items() if key not in ("poly_t", "prefactor"))
            p = r.prefactor
            title = f"{head}  prefactor e^({p.exp_coeff}t) pi^({p.pi_power}) (1-t)^({p.one_minus_t_power})"
            display.print_moment_table(title, ("m", "coeff of t^m"), r.poly_t())
        return
    if hasattr(result, "to_json"):
        result = result.to_json() if not numeric else {"value": result.numeric()}
    if isinstance(result, dict):
        display.print_routes({k: _plain_value(v, numeric) for k, v in result.items()})
        return
    display.print_value(_plain_value(result, numeric))


def _plain_value(value: Any, numeric: bool) -> Any:
    if isinstance(value, Fraction):
        value = ExactScalar(value)
    if isinstance(value, ExactScalar) and numeric:
        return value.numeric()
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


def _write(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
        logger.info("wrote %d bytes to %s", len(data), out)
        return
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO, format="%(levelname)s %(message)s")
    for noisy in ("asyncio", "sympy", "mpmath"):
        logging.getLogger(noisy).setLevel(logging.WARNING)


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_PRECONDITION
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    _configure_logging(args.verbose)
    try:
        config = load_config(args.config or DEFAULT_CONFIG_PATH, include_user_defaults=args.config is None)
        fmt = args.format or config.output_format
        numeric = config.numeric if args.numeric is None else args.numeric
        result = _HANDLERS[args.command](args, config)
        if fmt == "text" and not args.out:
            _show_text(args.command, result, args, numeric)
        else:
            _write(emit(result, "json" if fmt == "text" else fmt, numeric), args.out)
        if args.command == "verify":
            check(result)
    except InvariantBreachError as e:
        logger.debug("exiting on %s", type(e).__name__)
        display.print_error(str(e))
        return EXIT_INVARIANT
    except (PreconditionError, CharDerivError, ValueError, FileNotFoundError) as e:
        logger.debug("exiting on %s", type(e).__name__)
        display.print_error(str(e))
        return EXIT_PRECONDITION
    return EXIT_OK


def cli():
    """Entry point for the charderiv command."""
    sys.exit(run())


if __name__ == "__main__":
    cli()
