"""Concurrence (general and X-state fast path) and the disentanglement time solver."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from hensim.analytic import avg_xstate_two
from hensim.ensemble import sample_ensemble
from hensim.linalg import PAULI_Y, validate_density
from hensim.scenarios import Trajectory, TwoQubitScenario

_YY = np.kron(PAULI_Y, PAULI_Y)


def concurrence_general(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    The spin-flip spectrum is obtained from the Hermitian matrix
    sqrt(rho) (sy (x) sy) rho* (sy (x) sy) sqrt(rho), which is similar to the
    usual non-Hermitian product; negative round-off eigenvalues are clipped.
    """
    rho = validate_density(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-qubit density matrix, got {rho.shape}")
    w, v = np.linalg.eigh(rho)
    sqrt_rho = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    m = sqrt_rho @ _YY @ rho.conj() @ _YY @ sqrt_rho
    kappa = np.linalg.eigvalsh(m)
    roots = np.sqrt(np.clip(kappa, 0.0, None))[::-1]
    c = roots[0] - roots[1] - roots[2] - roots[3]
    return float(min(max(c, 0.0), 1.0))


def concurrence_x(elems) -> np.ndarray:
    """Fast path for X states: 2 max(0, |z| - sqrt(a d)).

    ``elems`` is anything with attributes a, d, z (per-realization or averaged
    X-state elements); vectorized over time grids.
    """
    ad = np.asarray(elems.a) * np.asarray(elems.d)
    val = 2.0 * np.maximum(0.0, np.abs(elems.z) - np.sqrt(np.maximum(ad, 0.0)))
    out = np.minimum(val, 1.0)
    return float(out) if out.ndim == 0 else out


def xstate_matrix(elems, index=None) -> np.ndarray:
    """Assemble the 4x4 X-state density matrix in the standard product basis.

    Diagonal (b, a, d, c) with z on the |++><--| corner. ``index`` selects one
    grid point when the element arrays are time-resolved.
    """

    def pick(v):
        v = np.asarray(v)
        return complex(v if index is None else v[index])

    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = pick(elems.b)
    rho[1, 1] = pick(elems.a)
    rho[2, 2] = pick(elems.d)
    rho[3, 3] = pick(elems.c)
    rho[0, 3] = pick(elems.z)
    rho[3, 0] = np.conj(rho[0, 3])
    return rho


def concurrence_trajectory(
    s: TwoQubitScenario,
    grid,
    n: int | None = None,
    master_seed: int | None = None,
) -> Trajectory:
    """Concurrence C(t): analytic when n is None, Monte Carlo otherwise."""
    grid = np.asarray(grid, dtype=float)
    if n is None:
        xs = avg_xstate_two(grid, s)
        return Trajectory(
            times=grid,
            columns={"C": concurrence_x(xs)},
            meta={"source": "analytic"},
        )
    if master_seed is None:
        raise ValueError("Monte Carlo concurrence needs a master seed")
    traj = sample_ensemble(s, n, master_seed, grid, observable="two")
    cols = traj.columns
    z_abs = np.hypot(cols["re_z"], cols["im_z"])
    ad = np.maximum(cols["a"] * cols["d"], 0.0)
    c = np.minimum(2.0 * np.maximum(0.0, z_abs - np.sqrt(ad)), 1.0)
    return Trajectory(times=grid, columns={"C": c}, meta=traj.meta)


@dataclass
class CriticalTime:
    """Smallest time after which the concurrence stays zero (None if it never does)."""

    t_c: float | None
    bracket: tuple[float, float] | None
    tolerance: float


def _gap(t, s: TwoQubitScenario):
    """g(t) = |z(t)| - sqrt(a(t) d(t)); C(t) = 2 max(0, g(t))."""
    xs = avg_xstate_two(t, s)
    return np.abs(xs.z) - np.sqrt(np.maximum(xs.a * xs.d, 0.0))


def find_tc(
    s: TwoQubitScenario,
    t_max: float | None = None,
    grid_density: int = 4000,
    tol: float = 1e-8,
    verify_points: int = 1000,
) -> CriticalTime:
    """Critical disentanglement time on the analytic averaged trajectory.

    Returns no finite time when the longitudinal channel is absent (alpha = 1/2
    or zero longitudinal variance) or the auxiliary mixture is pure (xy = 0).
    Otherwise: grid scan for the last downward sign change of g, bisection
    refinement to ``tol``, then a dense verification sweep over [t_c, t_max].

    ``t_max`` must be large enough that sqrt(a d) has essentially reached its
    asymptote; when omitted it is chosen automatically.
    """
    alpha = s.coupling.alpha
    va = s.noise_a.variance
    if s.noise_a.mean != 0.0 or s.noise_b.mean != 0.0:
        raise ValueError("find_tc requires mean-zero noise")
    if alpha == 0.5 or va == 0.0 or s.x * s.y == 0.0:
        return CriticalTime(t_c=None, bracket=None, tolerance=tol)

    # sqrt(a d) approaches its asymptote like exp(-2 alpha^2 va t^2);
    # t_settle is the 99% point of that envelope
    t_settle = math.sqrt(math.log(1e2) / (2.0 * alpha**2 * va))
    if t_max is None:
        t_max = max(2.0 * t_settle, 1.0)
        while _gap(t_max, s) >= 0.0:
            t_max *= 2.0
            if t_max > 1e6:
                raise RuntimeError("g(t) never became negative; no finite t_c found")
    else:
        if t_max < t_settle:
            raise ValueError(
                f"t_max={t_max} too small: sqrt(a d) has not reached its "
                f"asymptote (needs about {t_settle:.3g})"
            )
        if _gap(t_max, s) >= 0.0:
            raise ValueError(f"t_max={t_max} too small: g(t_max) is still positive")

    for density in (grid_density, 4 * grid_density, 16 * grid_density):
        ts = np.linspace(0.0, t_max, density)
        g = _gap(ts, s)
        pos = g > 0.0
        crossings = np.nonzero(pos[:-1] & ~pos[1:])[0]
        if len(crossings) == 0:
            continue
        i = crossings[-1]
        lo, hi = float(ts[i]), float(ts[i + 1])
        bracket = (lo, hi)
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if _gap(mid, s) > 0.0:
                lo = mid
            else:
                hi = mid
        t_c = hi  # g(t_c) <= 0 by construction, g(t_c - tol) > 0
        check = _gap(np.linspace(t_c, t_max, verify_points), s)
        if np.all(check <= 1e-10):
            return CriticalTime(t_c=t_c, bracket=bracket, tolerance=tol)
    raise RuntimeError("could not isolate the last sign change of g(t)")
