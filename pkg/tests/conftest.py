import numpy as np
import pytest

from cheeger_atlas.geom import ConvexPolygon
from cheeger_atlas.sampler import valtr


@pytest.fixture
def unit_square():
    return ConvexPolygon([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


@pytest.fixture
def right_triangle():
    return ConvexPolygon([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


@pytest.fixture
def equilateral():
    return ConvexPolygon([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]])


def regular_ngon(n: int, radius: float = 1.0) -> ConvexPolygon:
    ang = 2.0 * np.pi * np.arange(n) / n
    return ConvexPolygon(radius * np.column_stack((np.cos(ang), np.sin(ang))))


def random_polygons(count: int, seed: int = 0, n_min: int = 3, n_max: int = 16):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        yield valtr(n, int(rng.integers(0, 2**63)))
