"""rao-forge command line.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical inconsistency,
3 unsupported hypothesis.
"""

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .algebra import DEFAULT_CHAR, AlgebraError, RingConfig
from .deformation import (LinkError, MoveError, cancel_L4_F1, cancel_L4_F2, cancel_common, component_count,
                          describe_count, ex1_family, family_curve, generization_lattice, lattice_dot,
                          lattice_json, link_details, linked_tuple, singularity_ideal)
from .groebner import DegreeCapExceeded
from .invariants import CurveData, InconsistentCurveData
from .oracle import Refused
from .parsing import ParseError, parse_ideal
from .rao import IncompatibleRaoModule, UnsupportedHypothesis, n_tuple, rao_dims_from_third_row, rao_form
from .report import analysis_report, dumps, load_overrides
from .resolution import NotACurveIdeal, minimal_free_resolution

log = logging.getLogger("rao_forge")

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_UNSUPPORTED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def default_char():
    raw = os.environ.get("RAO_FORGE_CHAR")
    if not raw:
        return DEFAULT_CHAR
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"RAO_FORGE_CHAR={raw!r} is not an integer") from None


def _read_text(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path_or_text):
    """Accept a JSON file path or an inline JSON string."""
    text = path_or_text
    if not path_or_text.lstrip().startswith(("{", "[")):
        text = _read_text(path_or_text)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None


def resolve_file(path, char, order="degrevlex"):
    try:
        cfg = RingConfig(char, order)
    except AlgebraError as exc:
        raise UsageError(str(exc)) from None
    gens = parse_ideal(_read_text(path), cfg)
    return minimal_free_resolution(gens, cfg)


def curve_from_args(args):
    char = args.char if args.char is not None else default_char()
    if getattr(args, "input", None):
        data = _read_json(args.input)
        data.setdefault("char", char)
        return CurveData.from_json(data)
    if getattr(args, "ideal", None):
        _, betti = resolve_file(args.ideal, char)
        if args.rao:
            rao = {int(k): v for k, v in _read_json(args.rao).items()}
        elif args.buchsbaum:
            rao = dict(rao_dims_from_third_row(betti))
        elif betti.rows[3]:
            raise UsageError("resolution has a third step: pass --rao JSON or assert --buchsbaum")
        else:
            rao = {}
        return CurveData(betti, rao, args.buchsbaum, char)
    raise UsageError("one of --input or --ideal is required")


# commands

def cmd_resolve(args):
    char = args.char if args.char is not None else default_char()
    res, betti = resolve_file(args.ideal, char, args.order)
    return {"char": char, "order": args.order, "betti": betti.to_json(), "resolution": res.to_json()}


def _analyze_path(path, buchsbaum, char):
    ns = argparse.Namespace(input=str(path), ideal=None, rao=None, buchsbaum=buchsbaum, char=char)
    try:
        return {"file": path.name, "report": analysis_report(curve_from_args(ns))}
    except Exception as exc:  # collected per file; batch keeps going
        return {"file": path.name, "error": str(exc), "exit": _exit_code(exc)}


def cmd_analyze(args):
    if args.dir:
        char = args.char if args.char is not None else default_char()
        files = sorted(Path(args.dir).glob("*.json"))
        if not files:
            raise UsageError(f"no .json files in {args.dir}")
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_analyze_path, files, [args.buchsbaum] * len(files), [char] * len(files)))
        return {"batch": results}
    overrides = load_overrides(_read_json(args.hom)) if args.hom else None
    return analysis_report(curve_from_args(args), overrides)


def cmd_generize(args):
    cd = curve_from_args(args)
    if args.move == "common":
        mv = cancel_common(cd)
    else:
        if args.t is None or args.m is None:
            raise UsageError(f"--move {args.move} needs --t and --m")
        mv = (cancel_L4_F2 if args.move == "l4f2" else cancel_L4_F1)(cd, args.t, args.m)
    return mv.to_json()


def cmd_lattice(args):
    lat = generization_lattice(tuple(args.triple))
    return lattice_dot(lat) if args.export == "dot" else lattice_json(lat)


def cmd_link(args):
    cd = curve_from_args(args)
    f, g = args.fg
    res = link_details(cd, f, g)
    linked = res["curve"]
    out = {"linked": linked.to_json(), "d": linked.d, "g": linked.g, "ghosts": res["ghosts"],
           "unobstructed_iff_original": res["unobstructed_iff_original"], "fg": [f, g]}
    if not cd.is_acm():
        rf, rf2 = rao_form(cd), rao_form(linked)
        out["tuples"] = {str(t): {"original": list(n_tuple(rf, t).as_tuple()),
                                  "linked": list(n_tuple(rf2, f + g - 4 - t).as_tuple())}
                         for t in sorted(rf.components)}
        for t, pair in out["tuples"].items():
            if tuple(pair["linked"]) != linked_tuple(tuple(pair["original"])):
                raise LinkError(f"tuple rule violated at t = {t}: {pair}")
    return out


def cmd_components(args):
    res = component_count(tuple(args.triple), args.sec)
    res["summary"] = describe_count(res)
    return res


def cmd_family(args):
    r, a, b = args.ex1
    fam = ex1_family(r, a, b)
    fam["betti"] = fam["betti"].to_json()
    return fam


def cmd_singularity(args):
    cd = family_curve(*args.ex1) if args.ex1 else curve_from_args(args)
    return singularity_ideal(cd).to_json()


def _text(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, str):
        return pad + obj
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj, key=str):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in obj)
    return f"{pad}{obj}"


def build_parser():
    p = _Parser(prog="rao-forge", description="Betti tables, Rao modules and obstructedness of space curves.")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("-v", "--verbose", action="store_true")
    # repeated on every subcommand so `rao-forge analyze ... --format text` works too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    def curve_inputs(sp, ideal=True):
        sp.add_argument("--input", help="curve.json (or an earlier report)")
        if ideal:
            sp.add_argument("--ideal", help="ideal file, one generator per line")
            sp.add_argument("--rao", help="Rao dimensions as JSON {degree: dim}")
            sp.add_argument("--buchsbaum", action="store_true", help="assert trivial module structure")
        sp.add_argument("--char", type=int)

    sp = add("resolve", help="minimal free resolution of an ideal file")
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--char", type=int)
    sp.add_argument("--order", choices=("degrevlex", "lex"), default="degrevlex")
    sp.set_defaults(func=cmd_resolve)

    sp = add("analyze", help="full analysis report")
    curve_inputs(sp)
    sp.add_argument("--hom", help="HomDims overrides as JSON")
    sp.add_argument("--dir", help="analyze every *.json in a directory")
    sp.add_argument("--jobs", type=int, default=None)
    sp.set_defaults(func=cmd_analyze)

    sp = add("generize", help="apply one generization move")
    curve_inputs(sp)
    sp.add_argument("--move", choices=("common", "l4f2", "l4f1"), required=True)
    sp.add_argument("--t", type=int)
    sp.add_argument("--m", type=int)
    sp.set_defaults(func=cmd_generize)

    sp = add("lattice", help="generization lattice of a triple")
    sp.add_argument("--triple", type=int, nargs=3, required=True, metavar=("R", "A2", "B1"))
    sp.add_argument("--export", choices=("dot", "json"), default="dot")
    sp.set_defaults(func=cmd_lattice)

    sp = add("link", help="numerics of the linked curve")
    curve_inputs(sp)
    sp.add_argument("--fg", type=int, nargs=2, required=True, metavar=("F", "G"))
    sp.set_defaults(func=cmd_link)

    sp = add("components", help="count irreducible components through a curve")
    sp.add_argument("--triple", type=int, nargs="+", required=True)
    sp.add_argument("--sec", action="store_true", help="assume s = e = c")
    sp.set_defaults(func=cmd_components)

    sp = add("family", help="numerics of the Omega-resolution family")
    sp.add_argument("--ex1", type=int, nargs=3, required=True, metavar=("R", "A", "B"))
    sp.set_defaults(func=cmd_family)

    sp = add("singularity", help="quadratic local equations")
    curve_inputs(sp)
    sp.add_argument("--ex1", type=int, nargs=3, metavar=("R", "A", "B"))
    sp.set_defaults(func=cmd_singularity)
    return p


def _exit_code(exc):
    if isinstance(exc, (ParseError, UsageError)):
        return EXIT_USAGE
    if isinstance(exc, (UnsupportedHypothesis, Refused, DegreeCapExceeded)):
        return EXIT_UNSUPPORTED
    if isinstance(exc, (NotACurveIdeal, InconsistentCurveData, IncompatibleRaoModule, LinkError, MoveError,
                        AlgebraError)):
        return EXIT_MATH
    if isinstance(exc, ValueError):
        return EXIT_MATH
    raise exc


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        out = args.func(args)
    except Exception as exc:
        code = _exit_code(exc)
        if isinstance(exc, InconsistentCurveData):
            for problem in exc.problems:
                print(f"error: {problem}", file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return code
    if isinstance(out, str):
        print(out)
        return EXIT_OK
    elif getattr(args, "format", "json") == "text":
        print(_text(out))
    else:
        print(dumps(out))
    if isinstance(out, dict) and "batch" in out:
        return max((item.get("exit", EXIT_OK) for item in out["batch"]), default=EXIT_OK)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
