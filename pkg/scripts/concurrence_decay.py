#!/usr/bin/env python3
"""Concurrence decay of the two working qubits under ensemble averaging.

Sweeps the transverse noise variance at fixed longitudinal noise, writing one
concurrence trajectory per value; larger transverse noise pulls the sudden
death of entanglement earlier.
"""

import argparse
import pathlib

from hensim.cli import main as cli_main


def run(args):
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for vb in args.var_eps_b:
        out = outdir / f"concurrence_vb{vb:g}.csv"
        argv = [
            "concurrence",
            "--x", str(args.x),
            "--alpha", str(args.alpha),
            "--var-eps-a", str(args.var_eps_a),
            "--var-eps-b", str(vb),
            "--t-max", str(args.t_max),
            "--points", str(args.points),
            "--seed", str(args.seed),
            "--out", str(out),
        ]
        if args.samples:
            argv += ["--samples", str(args.samples)]
        code = cli_main(argv)
        if code != 0:
            raise SystemExit(code)
        print(f"wrote {out}")


def build_parser():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--x", type=float, default=0.2)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--var-eps-a", type=float, default=0.5)
    p.add_argument("--var-eps-b", type=float, nargs="+", default=[0.0, 0.5, 2.0])
    p.add_argument("--t-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=400)
    p.add_argument("--samples", type=int, default=0,
                   help="Monte Carlo sample count (0: analytic only)")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--outdir", default="out/concurrence")
    return p


if __name__ == "__main__":
    run(build_parser().parse_args())
