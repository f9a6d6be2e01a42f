#!/usr/bin/env python3
"""Map of the entanglement sudden-death time over (alpha, variance).

Writes a long-format CSV (alpha, var_eps_a, tc) on a rectangular grid; cells
where no sudden death occurs (e.g. the decoupled boundary alpha = 1/2) are
left empty.
"""

import argparse

from hensim.cli import main as cli_main


def run(args):
    code = cli_main([
        "tc-map",
        "--x", str(args.x),
        "--alpha-range", str(args.alpha_min), str(args.alpha_max),
        "--var-range", str(args.var_min), str(args.var_max),
        "--resolution", str(args.resolution),
        "--out", args.out,
    ])
    if code != 0:
        raise SystemExit(code)
    print(f"wrote {args.out}")


def build_parser():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--x", type=float, default=0.2)
    p.add_argument("--alpha-min", type=float, default=0.5)
    p.add_argument("--alpha-max", type=float, default=3.0)
    p.add_argument("--var-min", type=float, default=0.1)
    p.add_argument("--var-max", type=float, default=2.0)
    p.add_argument("--resolution", type=int, default=20)
    p.add_argument("--out", default="out/tc_map.csv")
    return p


if __name__ == "__main__":
    run(build_parser().parse_args())
