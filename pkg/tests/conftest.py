import os
from collections.abc import Generator
from unittest.mock import patch

import pytest

from dimgroups.scalar_field import ScalarField, using_field


@pytest.fixture(autouse=True)
def mock_env() -> Generator[None, None, None]:
    """
    Run every test without DIMGROUPS_* variables from the real environment.
    """
    with patch.dict(os.environ, {}, clear=True):
        yield


@pytest.fixture(autouse=True)
def fresh_field() -> Generator[ScalarField, None, None]:
    """
    Give every test its own pi - 3 scalar field, so oracle caches and
    configure() calls never leak between tests.
    """
    with using_field(ScalarField()) as field:
        yield field
