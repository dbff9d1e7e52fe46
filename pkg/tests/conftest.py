import random

import pytest

from submodcat.chain_ring import truncpoly, zmod

# Every ring of length >= 7 carries the canonical interval; these three
# cover both kinds and both even and odd residue characteristic.
LONG_RINGS = {
    "zmod-2-7": lambda: zmod(2, 7),
    "zmod-3-7": lambda: zmod(3, 7),
    "truncpoly-3-7": lambda: truncpoly(3, 7),
}

SHORT_RINGS = {
    "zmod-2-2": lambda: zmod(2, 2),
    "zmod-2-3": lambda: zmod(2, 3),
    "zmod-3-2": lambda: zmod(3, 2),
    "truncpoly-2-3": lambda: truncpoly(2, 3),
    "truncpoly-4-2": lambda: truncpoly(4, 2),
}


@pytest.fixture(params=list(LONG_RINGS), ids=list(LONG_RINGS))
def long_ring(request):
    return LONG_RINGS[request.param]()


@pytest.fixture(params=list(SHORT_RINGS), ids=list(SHORT_RINGS))
def short_ring(request):
    return SHORT_RINGS[request.param]()


@pytest.fixture(params=list(SHORT_RINGS) + list(LONG_RINGS),
                ids=list(SHORT_RINGS) + list(LONG_RINGS))
def any_ring(request):
    table = {**SHORT_RINGS, **LONG_RINGS}
    return table[request.param]()


@pytest.fixture
def ring2():
    return zmod(2, 7)


@pytest.fixture
def ring3():
    return zmod(3, 7)


@pytest.fixture
def ring3t():
    return truncpoly(3, 7)


@pytest.fixture
def rng():
    return random.Random(20240817)
