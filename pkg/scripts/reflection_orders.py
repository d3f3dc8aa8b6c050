#!/usr/bin/env python3
"""Count the reflection orders giving an EL-labeling of NC(W) for small W."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from math import factorial

from ncmobius.coxeter import build_coxeter_system
from ncmobius.nc import all_el_reflection_orders, build_nc, find_el_reflection_order


@dataclass
class OrderConfig:
    types: list[str] = field(default_factory=lambda: ["A1", "A2", "B2", "I2(5)", "I2(6)"])


def run(cfg: OrderConfig):
    for name in cfg.types:
        nc = build_nc(build_coxeter_system(name))
        found = find_el_reflection_order(nc)
        N = len(nc.system.reflections)
        valid = all_el_reflection_orders(nc)
        print(f"{name:7} N={N}  valid {len(valid)}/{factorial(N)}  chosen {list(found.canonical_indices())}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--types", nargs="*", default=OrderConfig().types)
    run(OrderConfig(**vars(p.parse_args())))
