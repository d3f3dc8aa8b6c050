"""Theorem verification: the Moebius number of NC^(k)(W) - mins + 0^ three ways.

* ``upper``: recursion on NC^(k)(W) with minimal elements replaced by a bottom
* ``lower``: recursion on NC_(k)(W) with maximal elements replaced by a top
* ``shelling``: the deletion lemma, with ``mu(NC_(k)(W) + 1^)`` read off the
  falling chains of the lex-ABW labeling and the sum over maximal elements
  from the recursion on NC_(k)(W)

and compared with ``(-1)^n (Cat+^(k) - Cat+^(k-1))``.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import __version__
from .cache import ResultCache
from .catalan import positive_fuss_catalan
from .coxeter import CoxeterType, build_coxeter_system
from .errors import NCError, ScaleExceeded
from .kdiv import (
    DEFAULT_MAX_ELEMENTS,
    build_nc_lower,
    build_nc_upper,
    select_duality_variant,
    theorem_poset_lower,
    theorem_poset_upper,
)
from .nc import build_nc, find_el_reflection_order, natural_labeling
from .poset import adjoin_top, mobius_number
from .shelling import (
    count_falling_maximal_chains,
    falling_chain_decomposition_census,
    falling_chain_delta_one_is_identity,
    is_el_labeling,
    lex_abw_labeling,
    sum_mobius_to_maxs,
)

METHODS = ("recursion", "shelling", "both")


@dataclass
class VerificationReport:
    ctype: str
    k: int
    method: str
    lhs_mobius_upper: int | None
    lhs_mobius_lower: int | None
    lhs_falling_chain: int | None
    rhs_formula: int
    all_equal: bool
    poset_sizes: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def values(self) -> list[int]:
        vals = [self.lhs_mobius_upper, self.lhs_mobius_lower, self.lhs_falling_chain,
                self.rhs_formula]
        return [v for v in vals if v is not None]

    def deterministic_dict(self) -> dict:
        d = asdict(self)
        d.pop("timings")
        return d

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, timings: bool = True) -> str:
        d = self.to_dict() if timings else self.deterministic_dict()
        return json.dumps(d, indent=1, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> VerificationReport:
        return cls(**d)


def _parse_ctype(ctype) -> CoxeterType:
    return ctype if isinstance(ctype, CoxeterType) else CoxeterType.parse(str(ctype))


def cache_key(ctype: CoxeterType, k: int, method: str, gamma_order, max_elements: int) -> dict:
    return {
        "family": ctype.family, "rank": ctype.rank, "m": ctype.m, "k": k,
        "method": method,
        "gamma": list(gamma_order) if gamma_order is not None else list(range(ctype.rank)),
        "max_elements": max_elements,
        "version": __version__,
    }


def _sign_bookkeeping(mu_top: int, n: int, cat_prev: int) -> dict:
    cand_minus = (-1) ** (n - 1) * cat_prev
    cand_plus = (-1) ** n * cat_prev
    match = [name for name, v in (("(-1)^(n-1)", cand_minus), ("(-1)^n", cand_plus))
             if v == mu_top]
    return {
        "mu_lower_plus_top": mu_top,
        "candidate_(-1)^(n-1)": cand_minus,
        "candidate_(-1)^n": cand_plus,
        "supported_signs": match,
    }


def compute_report(ctype, k: int, method: str = "both", gamma_order: Sequence[int] | None = None,
                   max_elements: int = DEFAULT_MAX_ELEMENTS) -> VerificationReport:
    ctype = _parse_ctype(ctype)
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    timings: dict[str, float] = {}
    clock = time.perf_counter

    t = clock()
    system = build_coxeter_system(ctype, gamma_order)
    nc = build_nc(system)
    timings["build_group_and_nc"] = clock() - t
    n = system.rank

    t = clock()
    upper = build_nc_upper(system, k, max_elements, nc)
    lower = build_nc_lower(system, k, max_elements, nc)
    timings["build_k_posets"] = clock() - t

    t = clock()
    variant = select_duality_variant(system, k, upper, lower)
    timings["duality_check"] = clock() - t

    rhs = (-1) ** n * (positive_fuss_catalan(ctype, k) - positive_fuss_catalan(ctype, k - 1))
    sizes = {"nc": len(nc.poset), "nc_upper": len(upper), "nc_lower": len(lower)}
    details: dict = {"duality_variant": variant, "rank": n,
                     "gamma_order": list(system.generator_order)}

    mu_upper = mu_lower = mu_shell = None
    if method in ("recursion", "both"):
        t = clock()
        tp_upper = theorem_poset_upper(system, k, upper=upper)
        tp_lower = theorem_poset_lower(system, k, lower=lower)
        mu_upper = mobius_number(tp_upper)
        mu_lower = mobius_number(tp_lower)
        sizes["theorem_upper"] = len(tp_upper)
        sizes["theorem_lower"] = len(tp_lower)
        timings["mobius_recursion"] = clock() - t

    el_ok = True
    if method in ("shelling", "both"):
        t = clock()
        order = find_el_reflection_order(nc)
        base_el = is_el_labeling(nc.poset, natural_labeling(nc, order))
        timings["reflection_order"] = clock() - t

        t = clock()
        top = adjoin_top(lower)
        labeling = lex_abw_labeling(top, order)
        lex_el = is_el_labeling(top, labeling)
        timings["el_check"] = clock() - t

        t = clock()
        falling = count_falling_maximal_chains(top, labeling)
        census = falling_chain_decomposition_census(top, nc, order)
        delta_one = falling_chain_delta_one_is_identity(top, labeling)
        mu_top = (-1) ** top.rank * falling
        maxs_sum = sum_mobius_to_maxs(lower)
        mu_shell = mu_top + maxs_sum
        timings["falling_chains"] = clock() - t

        el_ok = bool(base_el) and bool(lex_el) and census == falling and delta_one
        details.update({
            "reflection_order": list(order.canonical_indices()),
            "nc_el": bool(base_el),
            "lex_abw_el": bool(lex_el),
            "falling_chains": falling,
            "falling_chain_census": census,
            "delta_one_is_identity": delta_one,
            "sum_mobius_to_maxs": maxs_sum,
            "sign_check": _sign_bookkeeping(mu_top, n, positive_fuss_catalan(ctype, k - 1)),
        })

    report = VerificationReport(
        ctype=str(ctype), k=k, method=method,
        lhs_mobius_upper=mu_upper, lhs_mobius_lower=mu_lower, lhs_falling_chain=mu_shell,
        rhs_formula=rhs, all_equal=False, poset_sizes=sizes, details=details,
        timings={key: round(v, 6) for key, v in timings.items()},
    )
    report.all_equal = el_ok and len(set(report.values())) == 1
    return report


def cmd_verify(ctype, k: int, method: str = "both", gamma_order: Sequence[int] | None = None,
               max_elements: int = DEFAULT_MAX_ELEMENTS,
               cache: ResultCache | None = None) -> VerificationReport:
    """Verify one ``(W, k)`` cell, consulting ``cache`` when given."""
    ctype = _parse_ctype(ctype)
    key = cache_key(ctype, k, method, gamma_order, max_elements)
    if cache is not None:
        t = time.perf_counter()
        payload = cache.load(key)
        if payload is not None:
            report = VerificationReport.from_dict({**payload, "timings": {}})
            report.timings = {"cache_load": round(time.perf_counter() - t, 6)}
            return report
    report = compute_report(ctype, k, method, gamma_order, max_elements)
    if cache is not None:
        cache.store(key, report.deterministic_dict())
    return report


# -- grids ------------------------------------------------------------------------------

DEFAULT_GRID = (["A1", "A2", "A3", "A4", "B2", "B3", "D4"]
                + [f"I2({m})" for m in range(3, 13)] + ["H3"])
TABLE_FIELDS = ["family", "rank", "k", "lhs", "rhs", "pass", "m", "lhs_mobius_upper",
                "lhs_mobius_lower", "lhs_falling_chain", "status", "seconds"]


def grid_types(families: Sequence[str], max_rank: int, max_m: int = 12) -> list[CoxeterType]:
    out = []
    for fam in families:
        fam = fam.upper()
        if fam == "A":
            out += [CoxeterType("A", r) for r in range(1, max_rank + 1)]
        elif fam == "B":
            out += [CoxeterType("B", r) for r in range(2, max_rank + 1)]
        elif fam == "D":
            out += [CoxeterType("D", r) for r in range(4, max_rank + 1)]
        elif fam == "I2":
            if max_rank >= 2:
                out += [CoxeterType("I2", 2, m) for m in range(3, max_m + 1)]
        elif fam in ("H3", "F4"):
            if max_rank >= int(fam[1]):
                out.append(CoxeterType(fam, int(fam[1])))
        else:
            out.append(CoxeterType.parse(fam))
    return out


def _cell(args) -> dict:
    ctype, k, method, max_elements, cache_dir = args
    cache = ResultCache(cache_dir) if cache_dir is not None else None
    row = {"family": ctype.family, "rank": ctype.rank, "k": k, "m": ctype.m or ""}
    t = time.perf_counter()
    try:
        rep = cmd_verify(ctype, k, method, None, max_elements, cache)
    except ScaleExceeded:
        row.update(lhs="", rhs="", status="scale_exceeded", lhs_mobius_upper="",
                   lhs_mobius_lower="", lhs_falling_chain="", seconds="")
        row["pass"] = ""
        return row
    lhs = next(v for v in rep.values())
    row.update(lhs=lhs, rhs=rep.rhs_formula, status="ok" if rep.all_equal else "mismatch",
               lhs_mobius_upper=_blank(rep.lhs_mobius_upper),
               lhs_mobius_lower=_blank(rep.lhs_mobius_lower),
               lhs_falling_chain=_blank(rep.lhs_falling_chain),
               seconds=round(time.perf_counter() - t, 3))
    row["pass"] = rep.all_equal
    return row


def _blank(v):
    return "" if v is None else v


def cmd_table(types: Sequence[CoxeterType], max_k: int, method: str = "both",
              max_elements: int = DEFAULT_MAX_ELEMENTS, cache: ResultCache | None = None,
              jobs: int = 1) -> list[dict]:
    cells = [(t, k, method, max_elements, str(cache.directory) if cache else None)
             for t in types for k in range(1, max_k + 1)]
    if jobs > 1 and len(cells) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_cell, cells))
    return [_cell(c) for c in cells]


def render_table(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=1)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "text":
        cols = ["family", "rank", "m", "k", "lhs", "rhs", "pass", "status"]
        data = [[str(r[c]) for c in cols] for r in rows]
        widths = [max([len(c)] + [len(d[i]) for d in data]) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
        lines += ["  ".join(v.ljust(w) for v, w in zip(d, widths)).rstrip() for d in data]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def render_report(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json() + "\n"
    if fmt == "csv":
        lhs = report.values()[0]
        row = {"family": report.ctype, "rank": report.details.get("rank"), "k": report.k,
               "lhs": lhs, "rhs": report.rhs_formula, "pass": report.all_equal, "m": "",
               "lhs_mobius_upper": _blank(report.lhs_mobius_upper),
               "lhs_mobius_lower": _blank(report.lhs_mobius_lower),
               "lhs_falling_chain": _blank(report.lhs_falling_chain),
               "status": "ok" if report.all_equal else "mismatch",
               "seconds": round(sum(report.timings.values()), 3)}
        return render_table([row], "csv")
    lines = [
        f"W = {report.ctype}, k = {report.k}, method = {report.method}",
        f"  mu via NC^(k) recursion : {report.lhs_mobius_upper}",
        f"  mu via NC_(k) recursion : {report.lhs_mobius_lower}",
        f"  mu via falling chains   : {report.lhs_falling_chain}",
        f"  (-1)^n (Cat+^(k) - Cat+^(k-1)) = {report.rhs_formula}",
        f"  sizes: {report.poset_sizes}",
    ]
    sign = report.details.get("sign_check")
    if sign:
        lines.append(f"  mu(NC_(k) + 1^) = {sign['mu_lower_plus_top']}; "
                     f"sign convention supported: {', '.join(sign['supported_signs']) or 'none'}")
    lines.append("  PASS" if report.all_equal else "  FAIL")
    return "\n".join(lines) + "\n"


__all__ = ["VerificationReport", "cmd_verify", "cmd_table", "compute_report", "NCError"]
