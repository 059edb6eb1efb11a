"""Render the (g, delta) constraint grids for the catalog's expected ideals.

Usage:
    python3 scripts/gregion_report.py [--gmax 3] [--dmax 3]
"""

import argparse
import sys
from dataclasses import dataclass

from concordia import catalog
from concordia.ideals import g_region, render_g_region


@dataclass
class Config:
    g_max: int = 3
    d_max: int = 3


def run(cfg: Config) -> int:
    for name in catalog.names():
        entry = catalog.get(name)
        if entry.expected_ideal is None:
            continue
        region = g_region(entry.expected_ideal, cfg.g_max, cfg.d_max)
        tag = " (conjectural)" if entry.conjecture else ""
        print(f"== {name}{tag} ==")
        print(render_g_region(region, cfg.g_max, cfg.d_max))
        print()
    return 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gmax", type=int, default=3)
    ap.add_argument("--dmax", type=int, default=3)
    args = ap.parse_args(argv)
    return run(Config(g_max=args.gmax, d_max=args.dmax))


if __name__ == "__main__":
    sys.exit(main())
