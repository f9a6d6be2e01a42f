import numpy as np
import pytest

from hensim.scenarios import CouplingLaw, GaussianSpec, SingleQubitScenario, TwoQubitScenario


def single_scenario(omega_a=0.0, alpha=5.0, xb=0.8, variance=1.0, mean=0.0):
    xb = float(xb)
    return SingleQubitScenario(
        omega_a=omega_a,
        coupling=CouplingLaw(alpha),
        xb=xb,
        yb=np.sqrt(1.0 - xb**2),
        noise=GaussianSpec(mean, variance),
    )


def two_scenario(omega_a=0.0, omega_b=0.0, alpha=1.0, x=0.2, var_a=0.5, var_b=0.0):
    return TwoQubitScenario(
        omega_a=omega_a,
        omega_b=omega_b,
        coupling=CouplingLaw(alpha),
        x=x,
        y=1.0 - x,
        noise_a=GaussianSpec(0.0, var_a),
        noise_b=GaussianSpec(0.0, var_b),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)
