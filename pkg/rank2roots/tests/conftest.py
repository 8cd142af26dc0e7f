"""Test configuration and fixtures."""

import os

import pytest

# Set test environment before any imports
os.environ["RANK2_ENVIRONMENT"] = "test"

from hypothesis import HealthCheck, settings as hypothesis_settings  # noqa: E402

from rank2roots.shared.config import get_settings  # noqa: E402

hypothesis_settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
hypothesis_settings.register_profile("ci", max_examples=1000, deadline=None)
hypothesis_settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def fresh_settings():
    """Every test sees settings built from the current environment."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def settings():
    return get_settings()
