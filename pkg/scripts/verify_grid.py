#!/usr/bin/env python3
"""Verify the Moebius identity over a grid of (W, k) and write the table."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from ncmobius.coxeter import CoxeterType
from ncmobius.verify import DEFAULT_GRID, cmd_table, render_table


@dataclass
class GridConfig:
    types: list[str] = field(default_factory=lambda: list(DEFAULT_GRID))
    max_k: int = 3
    method: str = "both"
    jobs: int = 1
    fmt: str = "text"
    out: str | None = None


def run(cfg: GridConfig) -> bool:
    t = time.perf_counter()
    rows = cmd_table([CoxeterType.parse(x) for x in cfg.types], cfg.max_k, cfg.method, jobs=cfg.jobs)
    text = render_table(rows, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    ok = all(r["pass"] is True for r in rows)
    print(f"{sum(r['pass'] is True for r in rows)}/{len(rows)} cells pass "
          f"in {time.perf_counter() - t:.1f}s")
    return ok


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--types", nargs="*", default=list(DEFAULT_GRID))
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", dest="fmt", choices=["text", "csv", "json"], default="text")
    p.add_argument("--out")
    raise SystemExit(0 if run(GridConfig(**vars(p.parse_args()))) else 1)


if __name__ == "__main__":
    main()
