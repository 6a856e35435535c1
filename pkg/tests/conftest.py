import pytest

from graded_sqm import build_from_selector


@pytest.fixture(scope="session")
def models():
    """Session-wide cache of built models, keyed by selector string."""
    cache = {}

    def get(selector: str):
        if selector not in cache:
            cache[selector] = build_from_selector(selector)
        return cache[selector]

    return get
