#!/usr/bin/env python3
"""Relaxation of the working qubit toward its steady population.

Runs the zero-frequency strong-coupling setting (alpha = 5, unit variance) for
several auxiliary amplitudes xb, writing one CSV per curve with the analytic
average, the Monte Carlo average, and its standard error.
"""

import argparse
import pathlib

from hensim.cli import main as cli_main


def run(args):
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for xb in args.xb:
        out = outdir / f"relax_xb{xb:g}.csv"
        code = cli_main([
            "relax",
            "--omega-a", "0",
            "--alpha", str(args.alpha),
            "--xb", str(xb),
            "--var-eps-a", str(args.variance),
            "--t-max", str(args.t_max),
            "--points", str(args.points),
            "--samples", str(args.samples),
            "--seed", str(args.seed),
            "--out", str(out),
        ])
        if code != 0:
            raise SystemExit(code)
        print(f"wrote {out}")


def build_parser():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--alpha", type=float, default=5.0)
    p.add_argument("--variance", type=float, default=1.0)
    p.add_argument("--xb", type=float, nargs="+", default=[1.0, 0.8, 0.6])
    p.add_argument("--t-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=400)
    p.add_argument("--samples", type=int, default=8000)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--outdir", default="out/relaxation")
    return p


if __name__ == "__main__":
    run(build_parser().parse_args())
