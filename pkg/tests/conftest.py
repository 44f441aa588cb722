import pytest
from hypothesis import settings

from scissors.randgen import standard_table

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def table():
    return standard_table()
