#!/usr/bin/env python3
"""Tabulate mu(NC_(k)(W) + top) against both candidate signs of Cat+^(k-1)(W)."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from ncmobius.catalan import positive_fuss_catalan
from ncmobius.coxeter import build_coxeter_system
from ncmobius.kdiv import build_nc_lower
from ncmobius.poset import adjoin_top, mobius_number


@dataclass
class SignConfig:
    types: list[str] = field(default_factory=lambda: ["A1", "A2", "A3", "B2", "B3", "I2(5)", "H3"])
    max_k: int = 3


def run(cfg: SignConfig) -> dict[str, int]:
    tally = {"(-1)^(n-1)": 0, "(-1)^n": 0}
    print(f"{'W':8} {'k':>2} {'mu':>8} {'(-1)^(n-1)C':>12} {'(-1)^n C':>10}")
    for name in cfg.types:
        W = build_coxeter_system(name)
        n = W.rank
        for k in range(1, cfg.max_k + 1):
            mu = mobius_number(adjoin_top(build_nc_lower(W, k)))
            c = positive_fuss_catalan(W.ctype, k - 1)
            a, b = (-1) ** (n - 1) * c, (-1) ** n * c
            tally["(-1)^(n-1)"] += mu == a
            tally["(-1)^n"] += mu == b
            print(f"{name:8} {k:>2} {mu:>8} {a:>12} {b:>10}")
    print("matches:", tally)
    return tally


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--types", nargs="*", default=SignConfig().types)
    p.add_argument("--max-k", type=int, default=3)
    run(SignConfig(**vars(p.parse_args())))
