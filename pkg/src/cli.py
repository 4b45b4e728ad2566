"""Command-line front end: verify, classify, construct, degree, roots, batch and sweep."""

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from loguru import logger

from .algebra import RatFun
from .classify import classify, construct_t23_A1, construct_t23_A2, construct_t23_B, construct_t24, kth_roots
from .config import Settings, load_settings
from .engine import verify_exact, verify_numeric
from .errors import (
    FamilyUnavailable,
    FermatError,
    LexError,
    ParseError,
    PreconditionViolated,
    SideConditionFailed,
    VerificationFailed,
)
from .importers import importer_for
from .models import FamilyMember, FamilyTag, FermatEquation, NumericCandidate
from .parser import parse_exppoly, parse_gaussian, parse_poly, parse_ratfun, print_canonical
from .sweep import FamilySweep

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_FAMILY = 3

# construct flags and how each one is parsed
FAMILY_PARAMS: Dict[str, Callable[[str], Any]] = {
    "A": parse_gaussian,
    "a": parse_gaussian,
    "b": parse_gaussian,
    "a1": parse_gaussian,
    "a2": parse_gaussian,
    "b1": parse_gaussian,
    "b2": parse_gaussian,
    "d": parse_gaussian,
    "t": parse_gaussian,
    "c": parse_gaussian,
    "P": parse_poly,
    "Q1": parse_ratfun,
    "Q2": parse_ratfun,
    "R1": parse_ratfun,
}
ROOT_INDEX_PARAMS = ("a1_root", "a2_root", "t_root")
# flags whose value is an expression and may start with "-"
EXPRESSION_FLAGS = frozenset(f"--{name}" for name in ("f", "R", "Q", "alpha", "expr", "w", *FAMILY_PARAMS))


class UsageError(Exception):
    """Missing or malformed command-line input."""


def _glue_expression_values(argv: Sequence[str]) -> List[str]:
    """Rewrite "--R -i/z" as "--R=-i/z" so argparse does not read the value as an option."""
    glued: List[str] = []
    tokens = list(argv)
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if token in EXPRESSION_FLAGS and i + 1 < len(tokens) and not tokens[i + 1].startswith("--"):
            glued.append(f"{token}={tokens[i + 1]}")
            i += 2
            continue
        glued.append(token)
        i += 1
    return glued


def configure_logging(settings: Settings, level: Optional[str] = None) -> None:
    """Send diagnostics to stderr and, when configured, to a rotating log file."""
    logger.remove()
    logger.add(sys.stderr, level=level or settings.logging.level)
    if settings.logging.file:
        logger.add(settings.logging.file, level="DEBUG", rotation=settings.logging.rotation)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON with sorted keys")
    common.add_argument("--seed", type=int, default=None, help="seed of numeric sampling")
    common.add_argument("--tol", type=float, default=None, help="numeric residual tolerance")
    common.add_argument("--points", type=int, default=None, help="number of numeric sample points")
    common.add_argument("--config", default=None, help="settings YAML file")
    common.add_argument("--log-level", default=None, help="stderr log level")
    return common


def _equation_flags(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--m", type=int, required=required)
    parser.add_argument("--n", type=int, required=required)
    parser.add_argument("--k", type=int, required=required)
    parser.add_argument("--R", required=required, help="rational function R(z)")
    parser.add_argument("--Q", default="1", help="rational function Q(z)")
    parser.add_argument("--alpha", default="0", help="polynomial alpha(z)")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="fermat_cli",
        allow_abbrev=False,
        description="Exact solver for f^m + (R f^(k))^n = Q e^alpha",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], allow_abbrev=False, help="verify a candidate f")
    _equation_flags(verify)
    verify.add_argument("--f", required=True, help="exponential polynomial candidate")
    verify.add_argument("--numeric", action="store_true", help="verify at sample points instead")

    classify_cmd = sub.add_parser("classify", parents=[common], allow_abbrev=False, help="classify an equation")
    _equation_flags(classify_cmd)

    construct = sub.add_parser("construct", parents=[common], allow_abbrev=False, help="build members of a family")
    construct.add_argument("--family", required=True, choices=[t.value for t in FamilyTag])
    _equation_flags(construct, required=False)
    for name in FAMILY_PARAMS:
        construct.add_argument(f"--{name}", dest=f"param_{name}", default=None)
    for name in ROOT_INDEX_PARAMS:
        construct.add_argument(f"--{name.replace('_', '-')}", dest=f"param_{name}", type=int, default=None)

    degree = sub.add_parser("degree", parents=[common], allow_abbrev=False, help="degree of a rational function")
    degree.add_argument("--expr", required=True)

    roots = sub.add_parser("roots", parents=[common], allow_abbrev=False, help="k-th roots of a Gaussian rational")
    roots.add_argument("--w", required=True)
    roots.add_argument("--k", type=int, required=True)

    batch = sub.add_parser("batch", parents=[common], allow_abbrev=False, help="verify or classify a CSV/JSON spec table")
    batch.add_argument("--spec", required=True, type=Path)

    sweep = sub.add_parser("sweep", parents=[common], allow_abbrev=False, help="randomised constructor sweep")
    sweep.add_argument("--instances", type=int, default=None)
    sweep.add_argument("--out", type=Path, default=None)
    return parser


def _settings_for(args: argparse.Namespace) -> Settings:
    settings = load_settings(args.config)
    tolerances = settings.tolerances
    sampling = settings.sampling
    if args.tol is not None:
        tolerances = replace(tolerances, residual=args.tol)
    if args.seed is not None:
        sampling = replace(sampling, seed=args.seed)
    if args.points is not None:
        sampling = replace(sampling, points=args.points)
    return replace(settings, tolerances=tolerances, sampling=sampling)


def _parsed(flag: str, text: str, parse_fn: Callable[[str], Any]) -> Any:
    try:
        return parse_fn(text)
    except (LexError, ParseError) as e:
        e.flag = flag
        raise
    except ValueError as e:
        raise UsageError(f"--{flag}: {e}") from None


def _equation(args: argparse.Namespace) -> FermatEquation:
    for flag in ("m", "n", "k", "R"):
        if getattr(args, flag) is None:
            raise UsageError(f"--{flag} is required")
    return FermatEquation(
        m=args.m,
        n=args.n,
        k=args.k,
        R=_parsed("R", args.R, parse_ratfun),
        Q=_parsed("Q", args.Q, parse_ratfun),
        alpha=_parsed("alpha", args.alpha, parse_poly),
    )


def _emit(args: argparse.Namespace, data: Any, text: str) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2))
    else:
        print(text)


# Subcommands


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    eq = _equation(args)
    f = _parsed("f", args.f, parse_exppoly)
    if args.numeric:
        report = verify_numeric(eq, NumericCandidate.from_exact(f), settings=settings)
    else:
        report = verify_exact(eq, f)
    lines = [report.summary()]
    if not report.verified:
        residual = report.max_residual if report.residual is None else print_canonical(report.residual)
        lines.append(f"residual: {residual}")
    _emit(args, {"equation": eq.to_dict(), "f": print_canonical(f), "report": report.to_dict()}, "\n".join(lines))
    return EXIT_OK if report.verified else EXIT_REFUTED


def _verdict_text(verdict) -> str:
    head = verdict.kind.value
    if verdict.theorem:
        head += f" (theorem {verdict.theorem})"
    lines = [head, f"  {verdict.reason}"] if verdict.reason else [head]
    for family in verdict.families:
        lines.append(f"  {family.tag.value}: {family.template}")
    if verdict.hypotheses:
        lines.append("  provided one of: " + ", ".join(verdict.hypotheses))
    if verdict.open_question:
        lines.append(f"  open question: {verdict.open_question}")
    for note in verdict.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def cmd_classify(args: argparse.Namespace, settings: Settings) -> int:
    eq = _equation(args)
    verdict = classify(eq)
    _emit(args, {"equation": eq.to_dict(), **verdict.to_dict()}, _verdict_text(verdict))
    return EXIT_OK


def _family_params(args: argparse.Namespace) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for name, parse_fn in FAMILY_PARAMS.items():
        text = getattr(args, f"param_{name}")
        if text is not None:
            params[name] = _parsed(name, text, parse_fn)
    for name in ROOT_INDEX_PARAMS:
        value = getattr(args, f"param_{name}")
        if value is not None:
            params[name] = value
    return params


def _need(params: Dict[str, Any], *names: str) -> None:
    missing = [f"--{n}" for n in names if n not in params]
    if missing:
        raise UsageError(f"missing family parameters: {', '.join(missing)}")


def _construct_members(args: argparse.Namespace, settings: Settings) -> List[FamilyMember]:
    tag = FamilyTag(args.family)
    params = _family_params(args)
    if tag is FamilyTag.T23_A1:
        _need(params, "A", "a")
        if args.k is None:
            raise UsageError("--k is required")
        return construct_t23_A1(args.k, params["A"], params["a"], params.get("b", 0), settings)
    if tag is FamilyTag.T23_A2:
        _need(params, "A")
        if args.k is None:
            raise UsageError("--k is required")
        return construct_t23_A2(args.k, params["A"], params.get("a2", 0), params.get("b2", 0), settings)
    if tag is FamilyTag.T23_B:
        _need(params, "A", "a")
        if args.m is None or args.k is None:
            raise UsageError("--m and --k are required")
        return construct_t23_B(args.m, args.k, params["A"], params["a"], params.get("b", 0), settings)
    return [construct_t24(tag, _equation(args), params, settings)]


def _member_text(member: FamilyMember) -> str:
    candidate = member.candidate
    lines = [f"{member.tag.value}: {candidate.template}"]
    if candidate.exact is not None:
        lines.append(f"  f = {print_canonical(candidate.exact)}")
    for name, value in sorted(candidate.bindings.items()):
        lines.append(f"  {name} = {value:.12g}")
    for constraint in candidate.constraints:
        lines.append(f"  constraint: {constraint.to_text()}")
    lines.append(f"  {member.report.summary()}")
    for note in member.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def cmd_construct(args: argparse.Namespace, settings: Settings) -> int:
    try:
        members = _construct_members(args, settings)
    except (FamilyUnavailable, SideConditionFailed) as e:
        logger.error(f"{args.family}: {e}")
        _emit(args, {"family": args.family, "members": [], "error": str(e)}, f"{args.family}: {e}")
        return EXIT_FAMILY
    except VerificationFailed as e:
        logger.error(str(e))
        _emit(args, {"family": args.family, "members": [], "error": str(e)}, str(e))
        return EXIT_REFUTED
    if not members:
        return EXIT_FAMILY
    _emit(
        args,
        {"family": args.family, "members": [m.to_dict() for m in members]},
        "\n".join(_member_text(m) for m in members),
    )
    return EXIT_OK


def cmd_degree(args: argparse.Namespace, settings: Settings) -> int:
    r = _parsed("expr", args.expr, parse_ratfun)
    degree = str(RatFun.coerce(r).deg)
    _emit(args, {"expr": print_canonical(r), "degree": degree}, degree)
    return EXIT_OK


def cmd_roots(args: argparse.Namespace, settings: Settings) -> int:
    w = _parsed("w", args.w, parse_gaussian)
    roots = kth_roots(w, args.k)
    data = {
        "w": w.to_text(),
        "k": args.k,
        "constraint": f"{print_canonical(roots[0].constraint).replace('z', 'x')} = 0",
        "roots": [
            {"value": [r.value.real, r.value.imag], "exact": r.exact.to_text() if r.exact is not None else None}
            for r in roots
        ],
    }
    text = "\n".join(r.exact.to_text() if r.exact is not None else f"{r.value:.15g}" for r in roots)
    _emit(args, data, text)
    return EXIT_OK


def cmd_batch(args: argparse.Namespace, settings: Settings) -> int:
    try:
        importer = importer_for(args.spec)
        records = importer.records()
    except (LexError, ParseError):
        raise
    except (OSError, ValueError) as e:
        raise UsageError(f"--spec: {e}") from None

    rows, lines, exit_code = [], [], EXIT_OK
    for record in records:
        row = record.to_dict()
        if record.f is not None:
            report = verify_exact(record.equation, record.f)
            row["report"] = report.to_dict()
            lines.append(f"{record.name}: {report.summary()}")
            if not report.verified:
                exit_code = EXIT_REFUTED
        else:
            verdict = classify(record.equation)
            row["verdict"] = verdict.to_dict()
            lines.append(f"{record.name}: {verdict.kind.value}")
        rows.append(row)
    logger.success(f"Processed {len(rows)} spec rows")
    _emit(args, {"source": str(args.spec), "rows": rows}, "\n".join(lines))
    return exit_code


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    sweep = FamilySweep(instances=args.instances, seed=args.seed, settings=settings, progress=not args.json)
    sweep.run()
    sweep.export_to_json(args.out)
    sweep.export_to_csv(args.out)
    stats = sweep.generate_statistics()
    lines = []
    for family, entry in stats["families"].items():
        lines.append(f"{family}: {entry['verified']}/{entry['members']} verified"
                     f" ({entry['unavailable']} unavailable, max residual {entry['max_residual']})")
    lines.append("all verified" if stats["all_verified"] else "FAILURES")
    _emit(args, stats, "\n".join(lines))
    if stats["all_verified"]:
        logger.success("Sweep completed")
    return EXIT_OK if stats["all_verified"] else EXIT_REFUTED


COMMANDS = {
    "verify": cmd_verify,
    "classify": cmd_classify,
    "construct": cmd_construct,
    "degree": cmd_degree,
    "roots": cmd_roots,
    "batch": cmd_batch,
    "sweep": cmd_sweep,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one CLI invocation.

    Args:
        argv: Arguments without the program name

    Returns:
        Exit code: 0 success, 1 refuted, 2 usage or parse error, 3 empty or degenerate family
    """
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_expression_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        settings = _settings_for(args)
    except Exception as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(settings, args.log_level)

    try:
        return COMMANDS[args.command](args, settings)
    except (LexError, ParseError) as e:
        flag = getattr(e, "flag", None)
        prefix = f"--{flag}: " if flag else ""
        print(f"error: {prefix}{e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, PreconditionViolated) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FamilyUnavailable as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAMILY
    except VerificationFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_REFUTED
    except FermatError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
