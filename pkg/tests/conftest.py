import numpy as np
import pytest

from abelrigid import kernels
from abelrigid.geometry import WeightedFigure, hull_lattice_points


def fig2(points, weights=None):
    return WeightedFigure.from_points(points, weights)


def fig1(weights, start=0):
    """1D figure with the given weights at consecutive positions; zeros are skipped."""
    pts = [((start + i,), w) for i, w in enumerate(weights) if w]
    return WeightedFigure(1, tuple(pts))


def diamond(r):
    return fig2([(x, y) for x in range(-r, r + 1) for y in range(-r, r + 1) if abs(x) + abs(y) <= r])


TRIANGLE = fig2([(0, 0), (1, 0), (0, 1)])
SQUARE = fig2([(0, 0), (1, 0), (0, 1), (1, 1)])
HEXAGON = fig2([(1, 0), (2, 0)] + [(x, 1) for x in range(6)] + [(x, 2) for x in range(1, 5)] + [(2, 3), (3, 3)])
FIGURE_R = fig2([(1, 1), (1, 2), (1, 4), (2, 1), (2, 3), (3, 2)], [10, 2, -3, 1, 1, 4])


def random_convex(rng, size=8, max_points=6):
    """Lattice points of the hull of a few random points in a box of side <= size."""
    s = rng.randint(1, size)
    pts = [(rng.randint(0, s), rng.randint(0, s)) for _ in range(rng.randint(1, max_points))]
    return fig2(hull_lattice_points(pts))


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile (or load cached) JIT kernels once so timings measure the work only."""
    cells = np.zeros((3, 3), dtype=np.int64)
    offs = np.array([[0, 0], [1, 0]], dtype=np.int64)
    w = np.ones(2, dtype=np.int64)
    kernels.combination_counts(cells, offs, w, 2)
    kernels.weighted_sums(cells, offs, w)
    kernels.period_mask(cells, np.array([[1, 0]]))
    from abelrigid.oracle import search_words_1d
    search_words_1d(fig1([1, 1]), 2, 2)
    search_words_1d(fig1([1, 1]), 0, 2, values=[0, 1], target=1)
