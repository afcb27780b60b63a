import pytest

from sphere_sga.hilbert import orthonormalize
from sphere_sga.operators import OperatorSet


@pytest.fixture(scope="session")
def space4():
    return orthonormalize(4)


@pytest.fixture(scope="session")
def ops4(space4):
    return OperatorSet.build(space4)


@pytest.fixture(scope="session")
def ops6():
    return OperatorSet.build(orthonormalize(6))
