import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    max_examples=50,
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def grid_1d():
    """Default 1-d grid parameters (points, half_width)."""
    return 512, 16.0


@pytest.fixture(scope="session")
def gauss_wide_1d(grid_1d):
    from gwcommute.catalog import realize_checked

    points, half_width = grid_1d
    return realize_checked("gauss-wide", 1, points, half_width)


@pytest.fixture(scope="session")
def mixture_1d(grid_1d):
    from gwcommute.catalog import realize_checked

    points, half_width = grid_1d
    return realize_checked("mixture", 1, points, half_width)


@pytest.fixture(scope="session")
def bandlimited_2d():
    from gwcommute.catalog import realize_checked

    return realize_checked("bandlimited", 2, 256, 16.0)


@pytest.fixture(scope="session")
def rng():
    return np.random.Generator(np.random.PCG64(1234))
