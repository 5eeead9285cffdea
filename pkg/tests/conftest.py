import pytest

from expressions.parser import parse
from mappings.base import GridSpec
from mappings.harmonic import identity_map
from surfaces.base import WEData
from surfaces.extremal import extremal_halfplane_example


@pytest.fixture(scope="session")
def extremal():
    return extremal_halfplane_example()


@pytest.fixture
def plane():
    """Horizontal plane: p = 1, q = 0."""
    return WEData(p=parse("1"), q=parse("0"), name="plane")


@pytest.fixture
def identity():
    return identity_map()


@pytest.fixture
def small_grid():
    return GridSpec.from_string("-1:1:5x0.5:2:4")
