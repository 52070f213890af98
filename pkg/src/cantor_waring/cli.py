"""Command-line front end.

Exit codes: 0 success or certified, 1 internal error, 2 not certified (or a
certificate that fails verification), 3 resource limit, 64 usage error
(including parameters rejected by the library).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds as B
from .cantor import make_params
from .certifier import certify_coverage, verify_certificate
from .errors import CantorWaringError, ResourceLimitError
from .exact import MAX_INTERVALS_ENV, Interval, format_rational, parse_rational
from .explorer import coverage_report, product_measure_series, union_to_csv

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_NOT_CERTIFIED = 2
EXIT_RESOURCE = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: error: {message}")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _interval(text: str) -> Interval:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected lo,hi, got {text!r}")
    return Interval(_rational(parts[0]), _rational(parts[1]))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cantor-waring", description="Exact bounds, certificates and images for forms on Cantor sets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--alpha", type=_rational, default=Fraction(3), help="gap parameter, alpha > 1 (default 3)")

    bound = sub.add_parser("bound", help="evaluate a k-bound")
    common(bound)
    bound.add_argument("--mode", required=True, choices=B.MODES)
    bound.add_argument("--a", type=int)
    bound.add_argument("--b", type=int)
    bound.add_argument("--s", type=int)
    bound.add_argument("--exponents", type=_int_list, help="flat list a1,a2,...,ak")

    cert = sub.add_parser("certify", help="emit a coverage certificate")
    common(cert)
    cert.add_argument("--exponents", type=_int_list, required=True)
    cert.add_argument("--k", type=int, help="number of variables (default: the matching bound)")

    ver = sub.add_parser("verify", help="re-check a certificate file")
    ver.add_argument("--cert", required=True, help="certificate JSON file, or - for stdin")

    explore = sub.add_parser("explore", help="brute-force images on finite levels")
    esub = explore.add_subparsers(dest="what", required=True, parser_class=_Parser)
    image = esub.add_parser("image", help="image of the form on C_n^k")
    common(image)
    image.add_argument("--exponents", type=_int_list, required=True)
    image.add_argument("--level", type=int, required=True)
    image.add_argument("--target", type=_interval, help="lo,hi (default 0,k/2)")
    image.add_argument("--format", choices=("json", "csv"), default="json")
    pm = esub.add_parser("product-measure", help="measure series of the xy image")
    common(pm)
    pm.add_argument("--max-level", type=int, required=True)
    for p in (image, pm):
        p.add_argument("--level-cap", type=int, help="override the per-term level cap (default 10)")
        p.add_argument("--max-intervals", type=int, help=f"override the union size cap (also ${MAX_INTERVALS_ENV})")
    return parser


def _spec(exponents: Optional[list[int]]) -> B.ExponentSpec:
    if not exponents:
        raise UsageError("--exponents is required and must be non-empty")
    return B.ExponentSpec.from_flat(exponents)


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"mode {args.mode} requires {' '.join(missing)}")


def _ternary(args: argparse.Namespace) -> None:
    if args.alpha != 3:
        raise UsageError(f"mode {args.mode} is only defined for alpha = 3")


def _bound(args: argparse.Namespace) -> tuple[dict, int]:
    r = make_params(args.alpha).r
    mode = args.mode
    if mode == "fmt":
        _require(args, "a", "b")
        report = B.fmt_bound(r, args.a, args.b)
    elif mode == "smt":
        _require(args, "s")
        report = B.smt_bound(r, args.s)
    elif mode == "tmt":
        _require(args, "s")
        report = B.tmt_bound(r, args.s)
    elif mode == "ternary-mresult":
        _ternary(args)
        _require(args, "s")
        report = B.ternary_mresult_bound(args.s)
    elif mode == "ternary-ab":
        _ternary(args)
        _require(args, "a", "b")
        report = B.ternary_ab_bound(args.a, args.b)
    else:
        report = B.finalcor_bound(r, _spec(args.exponents))
    return report.to_wire(), EXIT_OK


def _certify(args: argparse.Namespace) -> tuple[dict, int]:
    p = make_params(args.alpha)
    spec = _spec(args.exponents)
    k = args.k
    if k is None:
        k = max(B.bound_for_spec(p.r, spec).kMin, spec.k)
    cert = certify_coverage(p, spec, k)
    return cert.to_wire(), EXIT_OK if cert.certified else EXIT_NOT_CERTIFIED


def _verify(args: argparse.Namespace) -> tuple[str, int]:
    try:
        if args.cert == "-":
            data = json.load(sys.stdin)
        else:
            with open(args.cert, encoding="utf-8") as fh:
                data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.cert}: {exc}") from None
    except json.JSONDecodeError:
        return "false", EXIT_NOT_CERTIFIED
    if not isinstance(data, dict):
        return "false", EXIT_NOT_CERTIFIED
    ok = verify_certificate(data)
    return ("true", EXIT_OK) if ok else ("false", EXIT_NOT_CERTIFIED)


def _explore(args: argparse.Namespace) -> tuple[object, int]:
    if args.max_intervals is None:
        return _explore_inner(args)
    if args.max_intervals < 1:
        raise UsageError("--max-intervals must be positive")
    saved = os.environ.get(MAX_INTERVALS_ENV)
    os.environ[MAX_INTERVALS_ENV] = str(args.max_intervals)
    try:
        return _explore_inner(args)
    finally:
        if saved is None:
            del os.environ[MAX_INTERVALS_ENV]
        else:
            os.environ[MAX_INTERVALS_ENV] = saved


def _explore_inner(args: argparse.Namespace) -> tuple[object, int]:
    p = make_params(args.alpha)
    if args.what == "image":
        report = coverage_report(p, _spec(args.exponents), args.level, args.target, args.level_cap)
        if args.format == "csv":
            return union_to_csv(report.image), EXIT_OK
        return report.to_wire(), EXIT_OK
    series = product_measure_series(p, args.max_level, args.level_cap)
    return {
        "version": "product-measure/1",
        "alpha": format_rational(p.alpha),
        "r": format_rational(p.r),
        "measures": [format_rational(m) for m in series],
    }, EXIT_OK


def _emit(payload: object) -> None:
    if isinstance(payload, str):
        sys.stdout.write(payload if payload.endswith("\n") else payload + "\n")
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, dispatch, print the payload and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(sys.argv[1:] if argv is None else argv))
        handler = {"bound": _bound, "certify": _certify, "verify": _verify, "explore": _explore}[args.command]
        payload, code = handler(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CantorWaringError as exc:
        # invalid parameters, malformed intervals, unknown schema versions
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(payload)
    return code


def main() -> None:
    sys.exit(run())
