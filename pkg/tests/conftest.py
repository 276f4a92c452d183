import hypothesis
import pytest

from sftbounds import full_shift, golden_mean_shift, perron_eigendata

hypothesis.settings.register_profile("suite", deadline=None, max_examples=60)
hypothesis.settings.load_profile("suite")


@pytest.fixture(scope="session")
def full2():
    return full_shift(2)


@pytest.fixture(scope="session")
def golden():
    return golden_mean_shift()


@pytest.fixture(scope="session")
def full3():
    return full_shift(3)


@pytest.fixture(scope="session")
def eig_full2(full2):
    return perron_eigendata(full2)


@pytest.fixture(scope="session")
def eig_golden(golden):
    return perron_eigendata(golden)


@pytest.fixture(scope="session")
def eig_full3(full3):
    return perron_eigendata(full3)
