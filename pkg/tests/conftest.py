import random

import pytest

from cirsa.rings import (
    gaussian_ring,
    integer_ring,
    poly_ring,
    quadratic_ring,
)

# the concrete ring roster exercised across the suite
RING_TAGS = [
    "integer",
    "gaussian",
    "quadratic:-2",
    "quadratic:2",
    "quadratic:3",
    "poly:2",
    "poly:3",
]


def all_rings():
    return [
        integer_ring(),
        gaussian_ring(),
        quadratic_ring(-2),
        quadratic_ring(2),
        quadratic_ring(3),
        poly_ring(2),
        poly_ring(3),
    ]


@pytest.fixture(params=RING_TAGS)
def ring(request):
    from cirsa.rings import ring_from_tag

    return ring_from_tag(request.param)


@pytest.fixture
def rng():
    return random.Random(0xC1A5)


def random_element(ring, rng, span=50, max_deg=6):
    """A random element with smallish coordinates (may be zero)."""
    if ring.ncoords == 1:
        return ring.el(rng.randrange(-span, span + 1))
    if ring.ncoords == 2:
        return ring.el(rng.randrange(-span, span + 1), rng.randrange(-span, span + 1))
    deg = rng.randrange(max_deg + 1)
    return ring.from_coords([rng.randrange(ring.q) for _ in range(deg + 1)])


def random_nonzero(ring, rng, span=50, max_deg=6):
    while True:
        x = random_element(ring, rng, span, max_deg)
        if x:
            return x


def random_modulus(ring, rng, span=30, max_deg=5, max_norm=None):
    """A random non-unit nonzero element usable as an ideal generator."""
    from cirsa.rings import is_unit, norm

    while True:
        x = random_element(ring, rng, span, max_deg)
        if x and not is_unit(x) and (max_norm is None or norm(x) <= max_norm):
            return x
