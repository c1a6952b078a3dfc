import pytest

from mirrorcavity.params import PhysicalParams, default_params


@pytest.fixture
def fig_params() -> PhysicalParams:
    """10 um cavity, 1e-11 kg mirror, omega_osc = 1e5, cutoff 1e16 (106 modes)."""
    return default_params()


@pytest.fixture
def natural2() -> PhysicalParams:
    return PhysicalParams.natural(2)


@pytest.fixture
def natural3() -> PhysicalParams:
    return PhysicalParams.natural(3)


def rel_err(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)
