import pytest

from weylrep import chevalley
from weylrep.rootsys import root_system


@pytest.fixture(scope="session")
def get_rs():
    cache = {}

    def get(label, rank):
        key = (label, rank)
        if key not in cache:
            cache[key] = root_system(label, rank)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def get_scalars(get_rs):
    """Cached default-convention constants and scalar tables per type."""
    cache = {}

    def get(label, rank):
        key = (label, rank)
        if key not in cache:
            rs = get_rs(label, rank)
            table = chevalley.build_constants(rs)
            cache[key] = (table, chevalley.scalar_table(table))
        return cache[key]

    return get
