import pytest

from atomset.atoms import atoms


@pytest.fixture
def abcd():
    return atoms("a b c d")
