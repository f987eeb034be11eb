import pytest

from permadss import build_permanence_fis


@pytest.fixture(scope="session")
def stable_fis():
    return build_permanence_fis("stable")


@pytest.fixture(scope="session")
def growth_fis():
    return build_permanence_fis("growth")
