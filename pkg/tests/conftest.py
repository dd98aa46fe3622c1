import random

import pytest

from qauto.cli import fixture_manifest, list_fixtures, load_fixture


@pytest.fixture(scope="session")
def fixtures():
    return {name: load_fixture(name) for name in list_fixtures()}


@pytest.fixture(scope="session")
def manifest():
    return fixture_manifest()


@pytest.fixture()
def rng():
    return random.Random(20240817)
