import pytest
from hypothesis import settings, strategies as st

from assprimes import groebner

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _fresh_groebner_settings():
    # the CLI mutates the global budget/cache; keep tests independent
    saved = (groebner.settings.budget, groebner.settings.cache)
    yield
    groebner.settings.budget, groebner.settings.cache = saved


def exponent_tuples(n, max_deg=4):
    return st.lists(st.integers(0, max_deg), min_size=n, max_size=n).map(tuple).filter(any)


def monomial_gens(n=3, max_gens=4, max_deg=4):
    """Generator lists of proper nonzero monomial ideals in n variables."""
    return st.lists(exponent_tuples(n, max_deg), min_size=1, max_size=max_gens)
