import numpy as np
import pytest

from squeezering import DeviceParams


def random_device_params(rng: np.random.Generator, *, beta_max: float = 0.95,
                         alpha_complex: bool = True) -> DeviceParams:
    """One generic operating point: rates in [0.1, 5] kappa_a, beta <= beta_max."""
    kappa_a, kappa_b = rng.uniform(0.1, 5.0, 2)
    delta_p_b = rng.uniform(1.0, 20.0)
    alpha = rng.uniform(0.1, 3.0)
    if alpha_complex:
        alpha = alpha * np.exp(1j * rng.uniform(0, 2 * np.pi))
    return DeviceParams(
        kappa_a=kappa_a,
        kappa_b=kappa_b,
        kappa_ex1=rng.uniform(0.0, 1.0) * kappa_a,
        kappa_ex2=rng.uniform(0.0, 1.0) * kappa_b,
        J=rng.uniform(0.05, 5.0),
        Omega_p=rng.uniform(0.0, beta_max) * delta_p_b,
        Delta_p_b=delta_p_b,
        theta_p=rng.uniform(0, 2 * np.pi),
        Delta_a=rng.uniform(-5.0, 5.0),
        Delta_b=rng.uniform(-5.0, 5.0),
        alpha_in=alpha,
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
