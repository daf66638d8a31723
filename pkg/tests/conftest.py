import pytest

from finfish.core.config import Settings


@pytest.fixture
def config(tmp_path):
    """Settings with a private cache directory and small defaults."""
    return Settings(
        cache=tmp_path / "cache",
        suite_max_size=6,
        suite_max_area=4,
        series_order=6,
        full_series_order=4,
    )


@pytest.fixture
def uncached():
    return Settings(cache=None)
