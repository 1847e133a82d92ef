import pytest

from abelrigid.errors import DimensionError, FormatError, RepresentationError
from abelrigid.geometry import (WeightedFigure, canonical_direction, canonicalize, check_convex,
                                complete_basis, det2, direction_gcd, format_figure, line_partition,
                                parse_figure, primitive_directions, uv_representation)

from conftest import FIGURE_R, HEXAGON, SQUARE, TRIANGLE, diamond, fig1, fig2


def test_figure_validation():
    with pytest.raises(ValueError):
        WeightedFigure.from_points([])
    with pytest.raises(ValueError):
        fig2([(0, 0)], [0])
    with pytest.raises(ValueError):
        fig2([(0, 0), (0, 0)])
    with pytest.raises(DimensionError):
        WeightedFigure(2, (((0, 0), 1), ((1,), 1)))
    assert fig2([(1, 0), (0, 0)]) == fig2([(0, 0), (1, 0)])


def test_parse_and_format_roundtrip():
    text = "# figure R\n1 1 10\n1 2 2\n\n1 4 -3\n2 1\n2 3 1\n3 2 4\n"
    fig = parse_figure(text)
    assert fig.dim == 2 and len(fig) == 6
    assert parse_figure(format_figure(fig)) == fig
    one = parse_figure("dim 1\n0 1\n1 -1\n2 1\n")
    assert one == fig1([1, -1, 1])
    assert parse_figure(format_figure(one)) == one
    assert parse_figure("0 1\n1 -1\n2 1\n", dim=1) == one
    assert parse_figure("5\n7 -1\n") == WeightedFigure(1, (((5,), 1), ((7,), -1)))


@pytest.mark.parametrize("text", ["", "0 0\n0 0\n", "0 0 0\n", "a b\n", "0 0\n1\n", "1 2 3 4\n", "0\ndim 1\n"])
def test_parse_rejects(text):
    with pytest.raises(FormatError):
        parse_figure(text)


def test_canonicalize():
    assert canonicalize(FIGURE_R) == fig2([(0, 0), (0, 1), (0, 3), (1, 0), (1, 2), (2, 1)], [10, 2, -3, 1, 1, 4])
    assert canonicalize(TRIANGLE) == TRIANGLE
    assert canonicalize(WeightedFigure(1, (((5,), 1), ((7,), -1)))) == fig1([1, 0, -1])


def test_check_convex():
    assert check_convex(TRIANGLE)
    assert not check_convex(fig2([(0, 0), (2, 0)]))
    assert check_convex(diamond(1))
    assert check_convex(HEXAGON)
    assert not check_convex(fig2([(0, 0), (1, 0), (0, 1), (1, 1), (3, 3)]))
    with pytest.raises(DimensionError):
        check_convex(fig1([1, 1]))


def test_primitive_directions():
    assert primitive_directions(TRIANGLE) == [(1, 0), (0, 1), (1, -1)]
    assert set(primitive_directions(SQUARE)) == {(1, 0), (0, 1), (1, 1), (1, -1)}
    assert primitive_directions(fig2([(0, 0), (2, 4)])) == [(1, 2)]
    assert primitive_directions(fig2([(3, 3)])) == []


def test_canonical_direction():
    assert canonical_direction((-2, 4)) == (1, -2)
    assert canonical_direction((0, -3)) == (0, 1)
    with pytest.raises(ValueError):
        canonical_direction((0, 0))


def test_line_partition():
    part = line_partition(HEXAGON, (1, 0))
    assert part.lengths == [2, 6, 4, 2] and part.all_contiguous
    assert line_partition(TRIANGLE, (1, 0)).lengths == [2, 1]
    gap = line_partition(fig2([(0, 0), (2, 0)]), (1, 0))
    assert gap.lengths == [2] and not gap.all_contiguous


def test_direction_gcd():
    assert direction_gcd(HEXAGON, (1, 0)) == 2
    assert direction_gcd(TRIANGLE, (0, 1)) == 1
    assert direction_gcd(SQUARE, (1, 1)) == 1
    assert direction_gcd(SQUARE, (1, 0)) == 2


def test_uv_representation():
    rep = uv_representation(TRIANGLE, (1, 0), (0, 1))
    assert (rep.n, rep.lows, rep.highs) == (1, (0, 0), (2, 1))
    rep = uv_representation(SQUARE, (0, 1), (1, 0))
    assert (rep.n, rep.lows, rep.highs) == (1, (0, 0), (2, 2))
    with pytest.raises(RepresentationError):
        uv_representation(fig2([(0, 0), (2, 0)]), (0, 1), (1, 0))
    with pytest.raises(ValueError):
        uv_representation(TRIANGLE, (1, 0), (1, 2))


def test_complete_basis():
    assert complete_basis((2, 4)) == ((1, 2), 2, (0, 1))
    assert complete_basis((1, 0)) == ((1, 0), 1, (0, 1))
    u, k, up = complete_basis((0, -3))
    assert (u, k, up) == ((0, 1), 3, (-1, 0))
    assert det2(u, up) == 1 and (0, -3) == (-k * u[0], -k * u[1])
    with pytest.raises(ValueError):
        complete_basis((0, 0))
