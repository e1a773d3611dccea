import pytest

from naive_oracle import semigroups_up_to_iso


@pytest.fixture(scope="session")
def small_semigroup_corpus():
    """Every semigroup with at most 4 elements, one table per iso class."""
    return semigroups_up_to_iso(4)
