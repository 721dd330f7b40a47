"""Command line surface.

Every subcommand prints machine-readable JSON on stdout (census can switch to
CSV files) and diagnostics on stderr.  Exit codes: 0 success, 2 usage errors
(bad flags, unreadable argument values, form syntax errors), 1 computational
errors (including semantically invalid inputs such as non-homogeneous forms),
printed as "error[<module.code>]: <message>".
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

from . import bounds as bounds_mod
from . import census as census_mod
from .errors import FanolinesError, FormParseError
from .fano import count_lines, find_point, lift_plane, plane_contained, point_count
from .formring import parse_form, render_form
from .gf import field_make
from .projgeom import plane_from_rows
from .smoothness import is_smooth

_USAGE_ERRORS = (FormParseError,)


def _parse_q(text: str) -> int:
    try:
        if "^" in text:
            base, exp = text.split("^", 1)
            return int(base) ** int(exp)
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read field size {text!r}")


def _form_text(arg: str) -> str:
    if arg.startswith("@"):
        with open(arg[1:], "r") as fh:
            return fh.read()
    return arg


def _load_form(args):
    field = field_make(args.q)
    nvars = args.n + 1 if getattr(args, "n", None) is not None else None
    return field, parse_form(_form_text(args.form), field, nvars=nvars)


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _appendix_text() -> str:
    return resources.files("fanolines").joinpath(
        "data/appendix_cubic.txt").read_text()


# -- subcommand bodies ---------------------------------------------------------


def _cmd_lines_count(args) -> int:
    field, f = _load_form(args)
    res = count_lines(f)
    _emit({"q": field.q, "n": f.nvars - 1, "d": f.degree,
           "count": res.count, "total_lines": res.total_lines,
           "mode": res.mode})
    return 0


def _cmd_planes_lift(args) -> int:
    field, f = _load_form(args)
    rows = json.loads(args.plane)
    start = plane_from_rows(rows, field)
    lifted = lift_plane(f, start, args.r)
    _emit({"q": field.q, "n": f.nvars - 1, "d": f.degree,
           "start_r": start.r, "r": lifted.r, "plane": lifted.to_json(),
           "contained": plane_contained(f, lifted)})
    return 0


def _cmd_point_find(args) -> int:
    field, f = _load_form(args)
    pt = find_point(f)
    _emit({"q": field.q, "n": f.nvars - 1, "d": f.degree,
           "point": list(pt) if pt is not None else None})
    return 0


def _cmd_smooth_check(args) -> int:
    field, f = _load_form(args)
    _emit({"q": field.q, "n": f.nvars - 1, "d": f.degree,
           "smooth": is_smooth(f)})
    return 0


def _cmd_bounds_report(args) -> int:
    rep = bounds_mod.bound_report(args.n, args.d, args.r)
    print(rep.to_json())
    return 0


def _cmd_census_run(args, parser) -> int:
    threads = args.threads
    if threads is None:
        env = os.environ.get("FANO_CENSUS_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    cfg = census_mod.CensusConfig(
        q=args.q, n=args.n, d=args.d, samples=args.samples,
        smooth_only=args.smooth_only, master_seed=args.seed, threads=threads)
    if args.format == "csv" and not args.out:
        parser.error("--format csv requires --out PREFIX")
    report = census_mod.run_census(cfg)
    paths = census_mod.write_csv(report, args.out) if args.out else []
    if args.format == "csv":
        for p in paths:
            print(p)
    else:
        print(report.to_json())
    print(f"census: wall={report.wall_seconds:.2f}s "
          f"cpu={report.cpu_seconds:.2f}s rejected={report.rejected}",
          file=sys.stderr)
    return 0


def _cmd_verify_appendix(args) -> int:
    field = field_make(7)
    f = parse_form(_appendix_text(), field, nvars=5)
    smooth = is_smooth(f)
    res = count_lines(f)
    ok = smooth and res.count == 8
    _emit({"q": 7, "n": 4, "d": 3, "smooth": smooth,
           "line_count": res.count, "expected": 8, "ok": ok})
    return 0 if ok else 1


# -- parser ----------------------------------------------------------------------


def _add_form_flags(p: argparse.ArgumentParser, need_n: bool = False) -> None:
    p.add_argument("--q", type=_parse_q, required=True,
                   help="field size, p or p^e")
    p.add_argument("--form", required=True,
                   help="polynomial text, or @FILE to read it from a file")
    p.add_argument("--n", type=int, default=None,
                   required=need_n, help="ambient projective dimension")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanolines",
        description="rational lines and planes on hypersurfaces over finite fields")
    top = parser.add_subparsers(dest="group", required=True)

    lines_p = top.add_parser("lines", help="line counting")
    lines_sub = lines_p.add_subparsers(dest="verb", required=True)
    p = lines_sub.add_parser("count", help="count rational lines on V(form)")
    _add_form_flags(p)
    p.set_defaults(handler=_cmd_lines_count)

    planes_p = top.add_parser("planes", help="plane lifting")
    planes_sub = planes_p.add_subparsers(dest="verb", required=True)
    p = planes_sub.add_parser("lift", help="extend a contained plane to dimension r")
    _add_form_flags(p)
    p.add_argument("--plane", required=True, help="JSON row matrix of the start plane")
    p.add_argument("--r", type=int, required=True, help="target plane dimension")
    p.set_defaults(handler=_cmd_planes_lift)

    point_p = top.add_parser("point", help="rational point search")
    point_sub = point_p.add_subparsers(dest="verb", required=True)
    p = point_sub.add_parser("find", help="first rational point of V(form)")
    _add_form_flags(p)
    p.set_defaults(handler=_cmd_point_find)

    smooth_p = top.add_parser("smooth", help="smoothness test")
    smooth_sub = smooth_p.add_subparsers(dest="verb", required=True)
    p = smooth_sub.add_parser("check", help="projective smoothness over the closure")
    _add_form_flags(p)
    p.set_defaults(handler=_cmd_smooth_check)

    bounds_p = top.add_parser("bounds", help="existence guarantees")
    bounds_sub = bounds_p.add_subparsers(dest="verb", required=True)
    p = bounds_sub.add_parser("report", help="arithmetic report for (n, d, r)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(handler=_cmd_bounds_report)

    census_p = top.add_parser("census", help="random hypersurface survey")
    census_sub = census_p.add_subparsers(dest="verb", required=True)
    p = census_sub.add_parser("run", help="seeded line-count census")
    p.add_argument("--q", type=_parse_q, required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--smooth-only", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: FANO_CENSUS_THREADS or all cores)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="CSV path prefix")
    p.set_defaults(handler=lambda a, _p=p: _cmd_census_run(a, _p))

    verify_p = top.add_parser("verify", help="built-in golden checks")
    verify_sub = verify_p.add_subparsers(dest="verb", required=True)
    p = verify_sub.add_parser(
        "appendix",
        help="embedded smooth cubic over F_7: assert smooth and exactly 8 lines")
    p.set_defaults(handler=_cmd_verify_appendix)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _USAGE_ERRORS as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2
    except FanolinesError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error[fanolines.usage]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
