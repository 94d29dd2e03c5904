"""Command-line interface.

Exit codes: 0 success, 1 a requested verification failed, 2 bad usage or a
value outside a builder's domain, 3 a solver precondition failed (no unique
completion where one is required).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .core import (
    ConflictError,
    LatinSetError,
    PartialLatinSquare,
    RangeError,
    apply_isotopism,
    multi_swap_isotopism,
    row_swap_isotopism,
)
from .families import build_A, build_E, build_G, build_U, build_V, expand_G, render_expansion
from .greedy import cell_order_f0, gcs, ggcs, random_cell_order
from .gridio import ParseError, load_grid, parse_json, render_grid, render_json
from .solver import (
    NoCompletionError,
    NotUniqueError,
    NotUniquelyCompletableError,
    StuckError,
    complete_unique,
    completes_top_down,
    count_completions,
    has_unique_completion,
    is_critical_set,
    strong_complete,
)
from .trades import NotCriticalSetError, is_2_critical, verify_gcs_characterization
from .twogroup import build_H2, build_L, build_multiswap_G, build_P
from . import __version__
from .scan import parse_budget, parse_s_values, render_scan, run_scan

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3

BUILD_KINDS = ("L", "P", "G", "E", "A", "U", "V", "H2", "multiswapG")
VERIFY_CHECKS = ("unique", "critical", "2critical", "strong", "topdown", "gcschar")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_input(path: str) -> tuple[PartialLatinSquare, Optional[PartialLatinSquare]]:
    p = Path(path)
    if p.suffix == ".json":
        return parse_json(p.read_text(encoding="utf-8")), None
    return load_grid(p)


def _parse_int_pair(text: str) -> tuple[int, int]:
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"expected two comma-separated integers, got {text!r}")
    return parts[0], parts[1]


def _parse_int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(x) for x in text.split(",")]


def _render(square: PartialLatinSquare, fmt: str, marked: Optional[PartialLatinSquare] = None) -> str:
    if fmt == "json":
        return render_json(square, indent=2) + "\n"
    return render_grid(square, marked)


# -- build ----------------------------------------------------------------


def _cmd_build(args: argparse.Namespace) -> int:
    kind = args.kind

    def need(name: str, value: object) -> None:
        if value is None:
            raise ValueError(f"--kind {kind} requires --{name}")

    if kind == "L":
        need("s", args.s)
        square = build_L(args.s)
        if args.swap is not None:
            k, kp = _parse_int_pair(args.swap)
            square = apply_isotopism(square, row_swap_isotopism(square.order, k, kp))
        if args.ks is not None:
            bands = _parse_int_list(args.ks)
            square = apply_isotopism(square, multi_swap_isotopism(square.order, bands))
    elif kind == "P":
        need("s", args.s)
        square = build_P(args.s)
    elif kind == "G":
        need("s", args.s), need("k", args.k), need("kp", args.kp)
        square = build_G(args.k, args.kp, args.s)
    elif kind == "E":
        need("s", args.s), need("k", args.k), need("kp", args.kp)
        square = build_E(args.k, args.kp, args.s)
    elif kind == "A":
        need("s", args.s), need("k", args.k), need("kp", args.kp)
        square = build_A(args.k, args.kp, args.s)
    elif kind == "U":
        need("k", args.k), need("kp", args.kp)
        square = build_U(args.k, args.kp)
    elif kind == "V":
        need("k", args.k), need("kp", args.kp)
        square = build_V(args.k, args.kp)
    elif kind == "H2":
        square = build_H2()
    else:  # multiswapG
        need("s", args.s)
        bands = _parse_int_list(args.ks) if args.ks is not None else []
        square = build_multiswap_G(args.s, bands)

    _emit(_render(square, args.format), args.out)
    return EXIT_OK


# -- gcs ------------------------------------------------------------------


def _cmd_gcs(args: argparse.Namespace) -> int:
    sources = [args.xor is not None, args.infile is not None, args.partial is not None]
    if sum(sources) != 1:
        raise ValueError("exactly one of --xor, --in, --partial is required")

    if args.xor is not None:
        square = build_L(args.xor)
        if args.swap is not None:
            k, kp = _parse_int_pair(args.swap)
            square = apply_isotopism(square, row_swap_isotopism(square.order, k, kp))
        if args.multiswap is not None:
            bands = _parse_int_list(args.multiswap)
            square = apply_isotopism(square, multi_swap_isotopism(square.order, bands))
    elif args.infile is not None:
        square = _load_input(args.infile)[0]
    else:
        square = _load_input(args.partial)[0]

    n = square.order
    if args.order_variant == "random":
        ranking = random_cell_order(n, seed=args.seed)
    else:
        ranking = cell_order_f0(n, literal_formula=(args.order_variant == "literal"))
    cset = ggcs(square, ranking)

    if args.format == "json":
        _emit(render_json(cset, indent=2) + "\n", args.out)
    elif args.bare:
        _emit(render_grid(cset), args.out)
    else:
        _emit(render_grid(square, marked=cset), args.out)
    log.info("kept %d of %d entries", cset.size, square.size)
    return EXIT_OK


# -- verify ---------------------------------------------------------------


def _resolve_ambient(
    candidate: PartialLatinSquare,
    marked_context: Optional[PartialLatinSquare],
    against: Optional[str],
) -> tuple[Optional[PartialLatinSquare], Optional[str]]:
    """The full square a candidate is verified against, plus a short note on
    where it came from."""
    if against is not None:
        square = _load_input(against)[0]
        if not square.is_latin_square():
            raise RangeError(f"--against {against} is not a full latin square")
        return square, "from --against"
    if marked_context is not None and marked_context.is_latin_square():
        return marked_context, "from grid context"
    try:
        return complete_unique(candidate), "unique completion"
    except (NoCompletionError, NotUniqueError):
        return None, None


def _run_check(
    name: str,
    candidate: PartialLatinSquare,
    ambient: Optional[PartialLatinSquare],
) -> tuple[bool, Optional[str]]:
    if name == "unique":
        n = count_completions(candidate, cap=2)
        if n == 1:
            return True, None
        return False, "no completion" if n == 0 else "at least two completions"
    if name == "critical":
        return is_critical_set(candidate), None
    if name in ("2critical", "gcschar") and ambient is None:
        return False, "no ambient latin square available"
    if name == "2critical":
        try:
            return is_2_critical(candidate, ambient), None
        except NotCriticalSetError as exc:
            return False, str(exc)
    if name == "gcschar":
        return verify_gcs_characterization(candidate, ambient), None
    if name == "strong":
        try:
            result = strong_complete(candidate).result
        except StuckError as exc:
            return False, f"stalled after {len(exc.steps)} forced entries"
        if ambient is not None and result != ambient:
            return False, "strong completion disagrees with ambient square"
        return True, None
    if name == "topdown":
        try:
            ok, trace = completes_top_down(candidate)
        except NotUniquelyCompletableError:
            return False, "no unique completion"
        if ok and ambient is not None and trace.result != ambient:
            return False, "top-down completion disagrees with ambient square"
        return ok, None if ok else "a row stalled"
    raise ValueError(f"unknown check {name!r}")


def _cmd_verify(args: argparse.Namespace) -> int:
    square, marked = _load_input(args.file)
    if marked is not None:
        candidate, context = marked, square
    else:
        candidate, context = square, None

    if args.checks.strip() == "all":
        selected = list(VERIFY_CHECKS)
    else:
        selected = [c.strip() for c in args.checks.split(",") if c.strip()]
        unknown = [c for c in selected if c not in VERIFY_CHECKS]
        if unknown:
            raise ValueError(f"unknown checks {unknown}; available: {','.join(VERIFY_CHECKS)}")

    ambient, ambient_note = _resolve_ambient(candidate, context, args.against)

    checks: dict[str, dict] = {}
    for name in selected:
        ok, reason = _run_check(name, candidate, ambient)
        checks[name] = {"ok": ok, "reason": reason}

    overall = all(c["ok"] for c in checks.values())
    report = {
        "file": args.file,
        "order": candidate.order,
        "size": candidate.size,
        "ambient": ambient_note,
        "checks": checks,
        "ok": overall,
    }

    if args.json:
        _emit(json.dumps(report, indent=2) + "\n", args.out)
    else:
        lines = [f"{args.file}: order {candidate.order}, {candidate.size} entries"]
        if ambient_note:
            lines.append(f"ambient square: {ambient_note}")
        for name in selected:
            entry = checks[name]
            verdict = "ok" if entry["ok"] else "FAIL"
            suffix = f" ({entry['reason']})" if entry["reason"] else ""
            lines.append(f"  {name}: {verdict}{suffix}")
        lines.append("all checks passed" if overall else "verification FAILED")
        _emit("\n".join(lines) + "\n", args.out)

    return EXIT_OK if overall else EXIT_VERIFY


# -- scan -----------------------------------------------------------------


def _cmd_scan(args: argparse.Namespace) -> int:
    s_values = parse_s_values(args.s)
    budget = parse_budget(args.budget) if args.budget else None
    report = run_scan(s_values, mode=args.mode, jobs=args.jobs, budget_seconds=budget)
    if args.json:
        _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    else:
        _emit(render_scan(report), args.out)
    return EXIT_OK if report.ok else EXIT_VERIFY


# -- trace ----------------------------------------------------------------


def _cmd_trace(args: argparse.Namespace) -> int:
    node = expand_G(args.k, args.kp, args.s)
    lines = [render_expansion(node)]
    code = EXIT_OK
    if args.check:
        cset = build_G(args.k, args.kp, args.s)
        n = 1 << args.s
        square = apply_isotopism(build_L(args.s), row_swap_isotopism(n, args.k, args.kp))
        lines.append(f"built {cset.size} entries at order {n}")
        for name in ("2critical", "strong", "topdown"):
            ok, reason = _run_check(name, cset, square)
            suffix = f" ({reason})" if reason else ""
            lines.append(f"  {name}: {'ok' if ok else 'FAIL'}{suffix}")
            if not ok:
                code = EXIT_VERIFY
    _emit("\n".join(lines) + "\n", args.out)
    return code


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latinset",
        description="Construct and verify critical sets in XOR-family latin squares.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="increase log level")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="emit a square or critical set from the family")
    p_build.add_argument("--kind", required=True, choices=BUILD_KINDS)
    p_build.add_argument("--s", type=int, help="order exponent (block level for E/A)")
    p_build.add_argument("--k", type=int, help="first swapped row")
    p_build.add_argument("--kp", type=int, help="second swapped row")
    p_build.add_argument("--swap", metavar="K,KP", help="exchange two rows of L (kind L only)")
    p_build.add_argument("--ks", metavar="K1,K2,..", help="band indices (multiswapG, or multi-swap of L)")
    p_build.add_argument("--format", choices=("grid", "json"), default="grid")
    p_build.add_argument("--out", help="write to this file instead of stdout")
    p_build.set_defaults(func=_cmd_build)

    p_gcs = sub.add_parser("gcs", help="greedy critical set of a square")
    p_gcs.add_argument("--xor", type=int, metavar="S", help="start from the order-2^S XOR square")
    p_gcs.add_argument("--swap", metavar="K,KP", help="exchange two rows first (with --xor)")
    p_gcs.add_argument("--multiswap", metavar="K1,K2,..", help="swap several bands first (with --xor)")
    p_gcs.add_argument("--in", dest="infile", metavar="FILE", help="full latin square from a file")
    p_gcs.add_argument("--partial", metavar="FILE", help="uniquely completable partial square from a file")
    p_gcs.add_argument(
        "--order-variant",
        choices=("normative", "literal", "random"),
        default="normative",
        help="cell ranking: bottom-up scan, its printed-formula variant, or a seeded shuffle",
    )
    p_gcs.add_argument("--seed", type=int, help="seed for --order-variant random")
    p_gcs.add_argument("--bare", action="store_true", help="print only the kept entries")
    p_gcs.add_argument("--format", choices=("grid", "json"), default="grid")
    p_gcs.add_argument("--out", help="write to this file instead of stdout")
    p_gcs.set_defaults(func=_cmd_gcs)

    p_verify = sub.add_parser("verify", help="run verification predicates on a grid file")
    p_verify.add_argument("file", help="grid or json file; parenthesised cells mark the candidate")
    p_verify.add_argument("--against", metavar="FILE", help="explicit ambient latin square")
    p_verify.add_argument(
        "--checks",
        default="unique,critical",
        help=f"comma list from {{{','.join(VERIFY_CHECKS)}}} or 'all'",
    )
    p_verify.add_argument("--json", action="store_true", help="machine-readable report")
    p_verify.add_argument("--out", help="write to this file instead of stdout")
    p_verify.set_defaults(func=_cmd_verify)

    p_scan = sub.add_parser("scan", help="batch-verify greedy critical sets over swap pairs")
    p_scan.add_argument("--s", required=True, help="order exponents: '3', '2..4', or '2,3,5'")
    p_scan.add_argument("--mode", choices=("theorem", "conjecture"), default="theorem")
    p_scan.add_argument("--jobs", type=int, help="worker processes (default: cpu count)")
    p_scan.add_argument("--budget", help="time budget like 3600s, 60m or 1h")
    p_scan.add_argument("--json", action="store_true", help="machine-readable report")
    p_scan.add_argument("--out", help="write to this file instead of stdout")
    p_scan.set_defaults(func=_cmd_scan)

    p_trace = sub.add_parser("trace", help="show the recursive expansion of G(k,k',s)")
    p_trace.add_argument("--k", type=int, required=True)
    p_trace.add_argument("--kp", type=int, required=True)
    p_trace.add_argument("--s", type=int, required=True)
    p_trace.add_argument("--check", action="store_true", help="also build and verify the set")
    p_trace.add_argument("--out", help="write to this file instead of stdout")
    p_trace.set_defaults(func=_cmd_trace)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (NoCompletionError, NotUniquelyCompletableError, StuckError) as exc:
        print(f"latinset: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (ParseError, RangeError, ConflictError, KeyError, ValueError, OSError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"latinset: {message}", file=sys.stderr)
        return EXIT_USAGE
    except LatinSetError as exc:
        print(f"latinset: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
