from pathlib import Path

import pytest
from hypothesis import settings

from finalg.memo import enumerate_up_to
from finalg.monads import monad

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def monoids_leq3():
    return enumerate_up_to(monad("Set", "Word"), 3)


@pytest.fixture(scope="session")
def monoids_leq4():
    return enumerate_up_to(monad("Set", "Word"), 4)
