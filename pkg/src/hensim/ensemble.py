"""Single-realization Hamiltonians, closed-form propagators and Monte Carlo averaging.

Basis conventions (|+> first):
  single-qubit system: 4x4 matrices in the product basis A (x) B, i.e.
  {|++>, |+->, |-+>, |-->};
  two-qubit system: 8x8 matrices in the product basis A2 (x) A1 (x) B1
  (auxiliary qubit first), so tracing out subsystem 0 leaves (A1, B1).

The closed forms are the production path (O(1) per realization); the generic
matrix exponential in hensim.linalg is the test-only oracle.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from hensim.linalg import IDENTITY_2, PAULI_Z, SIGMA_MINUS, SIGMA_PLUS, kron
from hensim.scenarios import (
    SingleQubitScenario,
    Trajectory,
    TwoQubitScenario,
)

# Fixed chunk size: chunk boundaries must not depend on the worker count, so
# that the index-ordered reduction is bit-identical for any parallelism.
_CHUNK = 512

_WORKERS_ENV = "HENSIM_WORKERS"


def coupling_strength(eps: float, law, omega_a: float) -> float:
    """f(eps) = sqrt(alpha^2 - 1/4) (eps - omega_a); real-valued."""
    return np.sqrt(law.alpha**2 - 0.25) * (eps - omega_a)


def build_h_single(eps: float, s: SingleQubitScenario) -> np.ndarray:
    """4x4 realization Hamiltonian for the working qubit + auxiliary qubit pair."""
    f = coupling_strength(eps, s.coupling, s.omega_a)
    h = 0.5 * (s.omega_a * kron(PAULI_Z, IDENTITY_2) + eps * kron(IDENTITY_2, PAULI_Z))
    h = h + f * (kron(SIGMA_PLUS, SIGMA_MINUS) + kron(SIGMA_MINUS, SIGMA_PLUS))
    return h


def _sinct(e: np.ndarray, t: np.ndarray) -> np.ndarray:
    """sin(e t) / e with the removable e -> 0 singularity handled (limit t)."""
    return t * np.sinc(e * t / np.pi)


def propagator_single_closed(eps: float, t: float, s: SingleQubitScenario) -> np.ndarray:
    """Closed-form evolution operator for build_h_single, block by block.

    The {|+->, |-+>} block rotates with energy E = sqrt((omega_a - eps)^2/4 + f^2);
    |++> and |--> pick up pure phases exp(-+ i (omega_a + eps) t / 2).
    """
    f = coupling_strength(eps, s.coupling, s.omega_a)
    half_det = 0.5 * (s.omega_a - eps)
    e = np.sqrt(half_det**2 + f**2)
    cos_et = np.cos(e * t)
    sfac = _sinct(e, np.asarray(float(t)))
    u = np.zeros((4, 4), dtype=complex)
    phase = 0.5 * (s.omega_a + eps) * t
    u[0, 0] = np.exp(-1j * phase)
    u[3, 3] = np.exp(1j * phase)
    u[1, 1] = cos_et - 1j * sfac * half_det
    u[2, 2] = cos_et + 1j * sfac * half_det
    u[1, 2] = -1j * sfac * f
    u[2, 1] = -1j * sfac * f
    return u


def evolve_single_realization(eps: float, t, s: SingleQubitScenario):
    """Matrix elements (rho_pp, rho_pm) of the working qubit at time(s) t.

    Initial state |->_A (x) (xb|+> + yb|->)_B. Vectorized over t; the results
    agree with the propagator + partial-trace route to 1e-10.
    """
    t = np.asarray(t, dtype=float)
    c = s.coupling.c
    alpha = s.coupling.alpha
    det = eps - s.omega_a
    rho_pp = 0.5 * c**2 * abs(s.xb) ** 2 * (1.0 - np.cos(2.0 * alpha * det * t))
    rho_pm = (
        -1j
        * c
        * s.xb
        * np.conj(s.yb)
        * np.exp(-0.5j * (eps + s.omega_a) * t)
        * np.sin(alpha * det * t)
    )
    return rho_pp, rho_pm


def _op3(index: int, m: np.ndarray) -> np.ndarray:
    ops = [IDENTITY_2, IDENTITY_2, IDENTITY_2]
    ops[index] = m
    return kron(kron(ops[0], ops[1]), ops[2])


def build_h_two(eps_a: float, eps_b: float, s: TwoQubitScenario) -> np.ndarray:
    """8x8 realization Hamiltonian in the A2 (x) A1 (x) B1 basis.

    The (A1, A2) part is the single-qubit model with random spacing eps_a; the
    second working qubit B1 only carries the shifted frequency omega_b + eps_b.
    """
    f = coupling_strength(eps_a, s.coupling, s.omega_a)
    h = 0.5 * (s.omega_a * _op3(1, PAULI_Z) + eps_a * _op3(0, PAULI_Z))
    flip = kron(kron(SIGMA_MINUS, SIGMA_PLUS), IDENTITY_2)
    h = h + f * (flip + flip.conj().T)
    h = h + 0.5 * (s.omega_b + eps_b) * _op3(2, PAULI_Z)
    return h


@dataclass
class XStateElements:
    """The five nonzero entries (a, b, c, d, z) of the reduced (A1, B1) X state.

    In the standard {|++>, |+->, |-+>, |-->} basis the diagonal is
    (b, a, d, c) and z sits on the |++><--| corner.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    z: np.ndarray


def evolve_two_realization(eps_a: float, eps_b: float, t, s: TwoQubitScenario) -> XStateElements:
    """X-state elements of the two working qubits for one realization.

    Closed form with gamma(t) = sin(alpha (omega_a - eps_a) t) and
    zeta(t) = exp(-i (omega_a + eps_a + 2 omega_b + 2 eps_b) t / 2); the
    coherence bracket is cos(alpha (omega_a - eps_a) t) - i gamma / (2 alpha).
    Agrees with the 8x8 propagator + partial-trace route to 1e-10.
    """
    t = np.asarray(t, dtype=float)
    alpha = s.coupling.alpha
    c2 = s.coupling.c ** 2
    arg = alpha * (s.omega_a - eps_a) * t
    gamma = np.sin(arg)
    g2 = gamma**2
    zeta = np.exp(-0.5j * (s.omega_a + eps_a + 2.0 * s.omega_b + 2.0 * eps_b) * t)
    a = 0.5 * s.x * c2 * g2
    d = 0.5 * s.y * c2 * g2
    b = 0.5 * s.x + 0.5 * s.y * (1.0 - c2 * g2)
    c_el = 0.5 * s.y + 0.5 * s.x * (1.0 - c2 * g2)
    z = 0.5 * (s.x + s.y) * zeta * (np.cos(arg) - 1j * gamma / (2.0 * alpha))
    return XStateElements(a=a, b=b, c=c_el, d=d, z=z)


def seed_stream(master_seed: int, realization_index: int) -> np.random.Generator:
    """Independent, reproducible per-realization stream.

    Counter-based splitting of (master_seed, index) through Philox: distinct
    indices never share a stream, and the same pair always reproduces the same
    draws.
    """
    if realization_index < 0:
        raise ValueError("realization_index must be nonnegative")
    seq = np.random.SeedSequence(entropy=int(master_seed) & (2**64 - 1),
                                 spawn_key=(int(realization_index),))
    return np.random.Generator(np.random.Philox(seq))


def worker_count() -> int:
    """Parallelism for chunk evaluation; HENSIM_WORKERS overrides the default."""
    env = os.environ.get(_WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


_SINGLE_COLUMNS = ("rho_pp", "re_rho_pm", "im_rho_pm")
_TWO_COLUMNS = ("a", "b", "c", "d", "re_z", "im_z")


def _single_chunk(s, start, stop, master_seed, grid):
    eps = np.empty(stop - start)
    for i in range(start, stop):
        rng = seed_stream(master_seed, i)
        eps[i - start] = rng.normal(s.noise.mean, np.sqrt(s.noise.variance))
    rho_pp, rho_pm = evolve_single_realization(eps[:, None], grid[None, :], s)
    return {"rho_pp": rho_pp, "re_rho_pm": rho_pm.real, "im_rho_pm": rho_pm.imag}


def _two_chunk(s, start, stop, master_seed, grid):
    eps_a = np.empty(stop - start)
    eps_b = np.empty(stop - start)
    for i in range(start, stop):
        rng = seed_stream(master_seed, i)
        eps_a[i - start] = rng.normal(s.noise_a.mean, np.sqrt(s.noise_a.variance))
        eps_b[i - start] = rng.normal(s.noise_b.mean, np.sqrt(s.noise_b.variance))
    xs = evolve_two_realization(eps_a[:, None], eps_b[:, None], grid[None, :], s)
    return {
        "a": xs.a,
        "b": xs.b,
        "c": xs.c,
        "d": xs.d,
        "re_z": xs.z.real,
        "im_z": xs.z.imag,
    }


def sample_ensemble(
    s,
    n: int,
    master_seed: int,
    grid,
    observable: str | None = None,
) -> Trajectory:
    """Arithmetic mean over n realizations of the per-realization elements.

    Chunks of fixed size are evaluated (possibly concurrently) and their partial
    sums are combined in chunk order with Kahan compensation, so the output is
    bit-identical for a fixed (master_seed, n, grid) regardless of worker count.
    Per-column standard errors are reported in ``<name>_se`` columns.
    """
    if n < 1:
        raise ValueError("sample count must be >= 1")
    grid = np.asarray(grid, dtype=float)
    if observable is None:
        observable = "single" if isinstance(s, SingleQubitScenario) else "two"
    if observable == "single":
        names, chunk_fn = _SINGLE_COLUMNS, _single_chunk
        if not isinstance(s, SingleQubitScenario):
            raise ValueError("'single' observable needs a SingleQubitScenario")
    elif observable == "two":
        names, chunk_fn = _TWO_COLUMNS, _two_chunk
        if not isinstance(s, TwoQubitScenario):
            raise ValueError("'two' observable needs a TwoQubitScenario")
    else:
        raise ValueError(f"unknown observable {observable!r}")

    bounds = [(i, min(i + _CHUNK, n)) for i in range(0, n, _CHUNK)]

    def run(chunk):
        start, stop = chunk
        vals = chunk_fn(s, start, stop, master_seed, grid)
        count = stop - start
        sums = {k: v.sum(axis=0) for k, v in vals.items()}
        # Squared deviations about the chunk mean: unlike sum(x^2) - n mean^2,
        # this does not cancel catastrophically for near-degenerate samples.
        m2 = {k: ((v - sums[k] / count) ** 2).sum(axis=0) for k, v in vals.items()}
        return count, sums, m2

    nworkers = worker_count()
    if nworkers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=nworkers) as pool:
            partials = list(pool.map(run, bounds))
    else:
        partials = [run(chunk) for chunk in bounds]

    columns: dict[str, np.ndarray] = {}
    for name in names:
        total = np.zeros_like(grid)
        comp = np.zeros_like(grid)
        m2 = np.zeros_like(grid)
        running_mean = np.zeros_like(grid)
        running_count = 0
        for count, sums, m2s in partials:
            total, comp = _kahan_add(total, comp, sums[name])
            # standard pairwise variance combination, in fixed chunk order
            chunk_mean = sums[name] / count
            new_count = running_count + count
            delta = chunk_mean - running_mean
            m2 = m2 + m2s[name] + delta**2 * (running_count * count / new_count)
            running_mean = running_mean + delta * (count / new_count)
            running_count = new_count
        mean = total / n
        if n > 1:
            se = np.sqrt(m2 / (n - 1) / n)
        else:
            se = np.zeros_like(mean)
        columns[name] = mean
        columns[name + "_se"] = se

    meta = {
        "source": "monte-carlo",
        "n": int(n),
        "seed": int(master_seed),
        "observable": observable,
    }
    return Trajectory(times=grid, columns=columns, meta=meta)


def _kahan_add(total, comp, x):
    y = x - comp
    t = total + y
    comp = (t - total) - y
    return t, comp
