import pytest

from lattice_segments import SphereSpec, enumerate_sphere


@pytest.fixture(scope="session")
def circle25():
    return enumerate_sphere(SphereSpec(2, 25))


@pytest.fixture(scope="session")
def sphere9():
    return enumerate_sphere(SphereSpec(3, 9))
