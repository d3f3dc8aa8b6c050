"""Command-line entry point.

Exit codes: 0 every check passed, 1 a mismatch was found, 2 usage or scale error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cache import ResultCache
from .coxeter import CoxeterSystem, CoxeterType, build_coxeter_system
from .errors import NCError
from .kdiv import DEFAULT_MAX_ELEMENTS, build_nc_lower
from .nc import build_nc, find_el_reflection_order, labeled_dot
from .poset import FinitePoset, adjoin_top
from .shelling import lex_abw_labeling
from .verify import (
    DEFAULT_GRID,
    METHODS,
    cmd_table,
    cmd_verify,
    grid_types,
    render_report,
    render_table,
)

log = logging.getLogger("ncmobius")


def _ctype_from_args(args) -> CoxeterType:
    text = args.type
    if args.m is not None:
        return CoxeterType("I2", 2, args.m)
    if args.rank is not None:
        if text.upper() in ("H", "F", "H3", "F4"):
            return CoxeterType(text.upper()[0] + str(args.rank), args.rank)
        return CoxeterType(text.upper(), args.rank)
    return CoxeterType.parse(text)


def _gamma_perm(text: str | None):
    if not text:
        return None
    return [int(x) for x in text.replace(" ", "").split(",")]


def _add_type_args(p: argparse.ArgumentParser):
    p.add_argument("--type", required=True, help="family (A, B, D, I2, H3, F4) or full name like A3, I2(5)")
    p.add_argument("--rank", type=int, help="rank n (omit when --type is a full name)")
    p.add_argument("--m", type=int, help="dihedral order for I2(m)")
    p.add_argument("--gamma-perm", help="comma-separated order of the simple generators in gamma")
    p.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)


def _add_cache_args(p: argparse.ArgumentParser):
    p.add_argument("--cache-dir", help="cache directory (default: $NCP_CACHE_DIR or ~/.cache/ncmobius)")
    p.add_argument("--no-cache", action="store_true")


def _cache(args) -> ResultCache | None:
    if args.no_cache:
        return None
    return ResultCache(args.cache_dir)


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncmobius", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify the Moebius number identity for one (W, k)")
    _add_type_args(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="both")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--out")
    _add_cache_args(p)

    p = sub.add_parser("table", help="verify a grid of (W, k)")
    p.add_argument("--families", default=None,
                   help="comma-separated families (A,B,D,I2,H3,F4); default: the standard grid")
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--max-m", type=int, default=12)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--method", choices=METHODS, default="both")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--max-elements", type=int, default=DEFAULT_MAX_ELEMENTS)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    _add_cache_args(p)

    p = sub.add_parser("export", help="write a structure as JSON or DOT")
    p.add_argument("object", choices=["group", "nc", "nck", "labeling"])
    _add_type_args(p)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--out")
    return parser


def _render_delta(ds) -> list[str]:
    return [repr(d) for d in ds.entries]


def export_structure(obj: str, system: CoxeterSystem, k: int, fmt: str,
                     max_elements: int = DEFAULT_MAX_ELEMENTS) -> str:
    if obj == "group":
        if fmt == "json":
            return json.dumps({
                "type": str(system.ctype),
                "order": system.group_order,
                "elements": [repr(w) for w in system.elements],
                "absolute_lengths": [system.absolute_length(w) for w in system.elements],
                "simple_generators": [repr(s) for s in system.simple_generators],
                "reflections": [repr(t) for t in system.reflections],
                "coxeter_element": repr(system.coxeter_element),
            }, indent=1) + "\n"
        P = FinitePoset.from_relation(system.elements, system.absolute_leq)
        return P.to_dot(render=repr, name="absolute_order")

    nc = build_nc(system)
    if obj == "nc":
        order = find_el_reflection_order(nc)
        if fmt == "dot":
            return labeled_dot(nc, order)
        d = nc.poset.to_json_dict(repr)
        d["reflection_order"] = [repr(t) for t in order.reflections]
        return json.dumps(d, indent=1) + "\n"

    lower = build_nc_lower(system, k, max_elements, nc)
    if obj == "nck":
        if fmt == "dot":
            return lower.to_dot(render=lambda ds: " | ".join(_render_delta(ds)), name="nc_lower")
        return json.dumps(lower.to_json_dict(_render_delta), indent=1) + "\n"

    order = find_el_reflection_order(nc)
    top = adjoin_top(lower)
    labeling = lex_abw_labeling(top, order)

    def render(x):
        return repr(x) if not hasattr(x, "entries") else _render_delta(x)

    if fmt == "dot":
        return top.to_dot(render=lambda x: str(render(x)),
                          edge_label=lambda i, j: str(labeling.label(i, j)), name="lex_abw")
    d = labeling.to_json_dict(render)
    d["reflection_order"] = [repr(t) for t in order.reflections]
    return json.dumps(d, indent=1) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if args.command == "verify":
            ctype = _ctype_from_args(args)
            report = cmd_verify(ctype, args.k, args.method, _gamma_perm(args.gamma_perm),
                                args.max_elements, _cache(args))
            _write(render_report(report, args.format), args.out)
            return 0 if report.all_equal else 1

        if args.command == "table":
            if args.families is None:
                types = [CoxeterType.parse(t) for t in DEFAULT_GRID]
            else:
                fams = [f for f in args.families.split(",") if f.strip()]
                types = grid_types(fams, args.max_rank, args.max_m)
            rows = cmd_table(types, args.max_k, args.method, args.max_elements,
                             _cache(args), args.jobs)
            _write(render_table(rows, args.format), args.out)
            return 0 if all(r["pass"] is not False for r in rows) else 1

        if args.command == "export":
            ctype = _ctype_from_args(args)
            system = build_coxeter_system(ctype, _gamma_perm(args.gamma_perm))
            text = export_structure(args.object, system, args.k, args.format, args.max_elements)
            _write(text, args.out)
            return 0
    except (NCError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2  # pragma: no cover


if __name__ == "__main__":
    raise SystemExit(main())
