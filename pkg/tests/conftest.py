from importlib.resources import files

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIXTURES = files("fsmkit") / "fixtures"


@pytest.fixture
def fixture_path():
    def path(name):
        return str(FIXTURES / name)
    return path
