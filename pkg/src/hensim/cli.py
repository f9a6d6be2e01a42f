"""Command-line front end: relax, concurrence, tc-map and validate subcommands.

Configuration is accepted both as flags and as a JSON config file; flags
override file values, and the merged effective config is echoed into the output
metadata. Exit codes: 0 success, 1 validation failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from hensim.analytic import single_trajectory
from hensim.ensemble import sample_ensemble
from hensim.entanglement import concurrence_trajectory, find_tc
from hensim.scenarios import (
    CouplingLaw,
    GaussianSpec,
    SingleQubitScenario,
    TwoQubitScenario,
    time_grid,
)
from hensim.tables import emit_trajectory, write_csv, write_json
from hensim.validation import run_suite

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_BAD_INPUT = 2

_DEFAULTS = {
    "omega_a": 0.0,
    "omega_b": 0.0,
    "alpha": 1.0,
    "xb": 1.0,
    "x": 0.5,
    "var_eps_a": 1.0,
    "var_eps_b": 0.0,
    "t_max": 5.0,
    "points": 400,
    "samples": None,
    "seed": 12345,
    "format": "csv",
}


class BadInput(Exception):
    """Configuration or flag error; maps to exit code 2."""


def _add_common(sub):
    sub.add_argument("--config", help="JSON config file; flags override its values")
    sub.add_argument("--omega-a", dest="omega_a", type=float, help="working-qubit frequency")
    sub.add_argument("--omega-b", dest="omega_b", type=float, help="second working-qubit frequency")
    sub.add_argument("--alpha", type=float, help="coupling-law parameter (>= 1/2)")
    sub.add_argument("--xb", type=float, help="auxiliary-qubit |+> amplitude (yb = sqrt(1-xb^2))")
    sub.add_argument("--x", type=float, help="auxiliary mixture weight (y = 1 - x)")
    sub.add_argument("--var-eps-a", dest="var_eps_a", type=float, help="longitudinal spacing variance")
    sub.add_argument("--var-eps-b", dest="var_eps_b", type=float, help="transverse spacing variance")
    sub.add_argument("--t-max", dest="t_max", type=float, help="time-grid endpoint")
    sub.add_argument("--points", type=int, help="time-grid point count")
    sub.add_argument("--samples", type=int, help="Monte Carlo sample count (omit for analytic only)")
    sub.add_argument("--seed", type=int, help="master seed for the sample streams")
    sub.add_argument("--out", required=True, help="output file path")
    sub.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")


def merged_config(ns: argparse.Namespace) -> dict:
    """Defaults <- config file <- explicit flags, in increasing precedence."""
    cfg = dict(_DEFAULTS)
    if getattr(ns, "config", None):
        try:
            with open(ns.config) as fh:
                from_file = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise BadInput(f"cannot read config file {ns.config}: {exc}") from exc
        unknown = set(from_file) - set(_DEFAULTS)
        if unknown:
            raise BadInput(f"unknown config keys: {sorted(unknown)}")
        cfg.update(from_file)
    for key in _DEFAULTS:
        val = getattr(ns, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _single_scenario(cfg) -> SingleQubitScenario:
    xb = float(cfg["xb"])
    if not 0.0 <= xb <= 1.0:
        raise BadInput(f"xb must lie in [0, 1], got {xb}")
    try:
        return SingleQubitScenario(
            omega_a=float(cfg["omega_a"]),
            coupling=CouplingLaw(float(cfg["alpha"])),
            xb=xb,
            yb=math.sqrt(1.0 - xb**2),
            noise=GaussianSpec(0.0, float(cfg["var_eps_a"])),
        )
    except ValueError as exc:
        raise BadInput(str(exc)) from exc


def _two_scenario(cfg) -> TwoQubitScenario:
    x = float(cfg["x"])
    try:
        return TwoQubitScenario(
            omega_a=float(cfg["omega_a"]),
            omega_b=float(cfg["omega_b"]),
            coupling=CouplingLaw(float(cfg["alpha"])),
            x=x,
            y=1.0 - x,
            noise_a=GaussianSpec(0.0, float(cfg["var_eps_a"])),
            noise_b=GaussianSpec(0.0, float(cfg["var_eps_b"])),
        )
    except ValueError as exc:
        raise BadInput(str(exc)) from exc


def _grid(cfg) -> np.ndarray:
    try:
        return time_grid(float(cfg["t_max"]), int(cfg["points"]))
    except ValueError as exc:
        raise BadInput(str(exc)) from exc


def cmd_relax(ns) -> int:
    cfg = merged_config(ns)
    s = _single_scenario(cfg)
    grid = _grid(cfg)
    traj = single_trajectory(s, grid)
    order = ["rho_pp", "re_rho_pm", "im_rho_pm"]
    if cfg["samples"]:
        mc = sample_ensemble(s, int(cfg["samples"]), int(cfg["seed"]), grid, "single")
        for name in ["rho_pp", "re_rho_pm", "im_rho_pm"]:
            traj.columns[name + "_mc"] = mc.columns[name]
            traj.columns[name + "_mc_se"] = mc.columns[name + "_se"]
            order += [name + "_mc", name + "_mc_se"]
        traj.meta.update({"n": mc.meta["n"], "seed": mc.meta["seed"]})
    emit_trajectory(ns.out, traj, cfg["format"], {"config": cfg, "command": "relax"}, order)
    return EXIT_OK


def cmd_concurrence(ns) -> int:
    cfg = merged_config(ns)
    s = _two_scenario(cfg)
    grid = _grid(cfg)
    traj = concurrence_trajectory(s, grid)
    order = ["C"]
    if cfg["samples"]:
        mc = concurrence_trajectory(s, grid, n=int(cfg["samples"]), master_seed=int(cfg["seed"]))
        traj.columns["C_mc"] = mc.columns["C"]
        order.append("C_mc")
        traj.meta.update({"n": mc.meta["n"], "seed": mc.meta["seed"]})
    emit_trajectory(ns.out, traj, cfg["format"], {"config": cfg, "command": "concurrence"}, order)
    return EXIT_OK


def cmd_tc_map(ns) -> int:
    cfg = merged_config(ns)
    if float(cfg["omega_a"]) != 0.0 or float(cfg["var_eps_b"]) != 0.0:
        raise BadInput("tc-map requires omega_a = 0 and var_eps_b = 0")
    alpha_lo, alpha_hi = ns.alpha_range
    var_lo, var_hi = ns.var_range
    if alpha_lo < 0.5:
        raise BadInput(f"alpha range must stay >= 1/2, got lower bound {alpha_lo}")
    if var_lo < 0:
        raise BadInput(f"variance range must be nonnegative, got lower bound {var_lo}")
    if alpha_hi < alpha_lo or var_hi < var_lo:
        raise BadInput("ranges must be increasing")
    res = int(ns.resolution)
    if res < 1:
        raise BadInput("resolution must be >= 1")
    alphas = np.linspace(alpha_lo, alpha_hi, res)
    variances = np.linspace(var_lo, var_hi, res)
    rows = []
    for alpha in alphas:
        for var in variances:
            s = TwoQubitScenario(
                omega_a=0.0,
                omega_b=float(cfg["omega_b"]),
                coupling=CouplingLaw(float(alpha)),
                x=float(cfg["x"]),
                y=1.0 - float(cfg["x"]),
                noise_a=GaussianSpec(0.0, float(var)),
                noise_b=GaussianSpec(0.0, 0.0),
            )
            tc = find_tc(s).t_c
            rows.append([float(alpha), float(var), tc])
    header = ["alpha", "var_eps_a", "tc"]
    if cfg["format"] == "csv":
        write_csv(ns.out, header, rows)
        write_json(ns.out + ".meta.json", {"config": cfg, "command": "tc-map",
                                           "alpha_range": list(ns.alpha_range),
                                           "var_range": list(ns.var_range),
                                           "resolution": res})
    else:
        write_json(ns.out, {
            "meta": {"config": cfg, "command": "tc-map"},
            "data": {"alpha": [r[0] for r in rows],
                     "var_eps_a": [r[1] for r in rows],
                     "tc": [r[2] for r in rows]},
        })
    return EXIT_OK


def cmd_validate(ns) -> int:
    results = run_suite(ns.level)
    ok = True
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        ok = ok and passed
    print(f"{'all checks passed' if ok else 'some checks FAILED'}")
    return EXIT_OK if ok else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hensim",
        description="Hamiltonian-ensemble qubit relaxation and disentanglement experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_relax = sub.add_parser("relax", help="single-qubit averaged relaxation curves")
    _add_common(p_relax)
    p_relax.set_defaults(fn=cmd_relax)

    p_conc = sub.add_parser("concurrence", help="two-working-qubit concurrence C(t)")
    _add_common(p_conc)
    p_conc.set_defaults(fn=cmd_concurrence)

    p_tc = sub.add_parser("tc-map", help="critical disentanglement time over (alpha, variance)")
    _add_common(p_tc)
    p_tc.add_argument("--alpha-range", dest="alpha_range", type=float, nargs=2,
                      metavar=("LO", "HI"), required=True)
    p_tc.add_argument("--var-range", dest="var_range", type=float, nargs=2,
                      metavar=("LO", "HI"), required=True)
    p_tc.add_argument("--resolution", type=int, required=True, help="grid points per axis")
    p_tc.set_defaults(fn=cmd_tc_map)

    p_val = sub.add_parser("validate", help="run the oracle cross-check suites")
    p_val.add_argument("--level", choices=("quick", "full"), default="quick")
    p_val.set_defaults(fn=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_BAD_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return ns.fn(ns)
    except BadInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
