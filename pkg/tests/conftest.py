import numpy as np
import pytest

from helikin.geometry import derive_geometry
from helikin.presets import default_tendon, default_tube


@pytest.fixture(scope="session")
def tube():
    return default_tube()


@pytest.fixture(scope="session")
def tendon():
    return default_tendon()


@pytest.fixture(scope="session")
def geom(tube):
    return derive_geometry(tube)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240617)
