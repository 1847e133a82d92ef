"""Exact integer geometry of lattice figures.

Everything here works on Python ints; no floating point is used for any
membership or orientation decision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, FormatError, RepresentationError

Point = tuple[int, ...]
Direction = tuple[int, int]


@dataclass(frozen=True)
class WeightedFigure:
    """A finite set of lattice points, each carrying a nonzero integer weight.

    ``points`` is kept sorted by coordinates, so two figures with the same
    points and weights compare equal regardless of construction order.
    """

    dim: int
    points: tuple[tuple[Point, int], ...]

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise DimensionError(f"figures must be 1- or 2-dimensional, got {self.dim}")
        if not self.points:
            raise ValueError("a figure needs at least one point")
        ordered = tuple(sorted((tuple(int(c) for c in p), int(w)) for p, w in self.points))
        prev = None
        for p, w in ordered:
            if len(p) != self.dim:
                raise DimensionError(f"point {p} does not have dimension {self.dim}")
            if w == 0:
                raise ValueError(f"point {p} has zero weight")
            if p == prev:
                raise ValueError(f"duplicate point {p}")
            prev = p
        object.__setattr__(self, "points", ordered)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], weights: Iterable[int] | None = None):
        pts = [tuple(int(c) for c in p) for p in points]
        if not pts:
            raise ValueError("a figure needs at least one point")
        ws = [1] * len(pts) if weights is None else [int(w) for w in weights]
        if len(ws) != len(pts):
            raise ValueError("points and weights differ in length")
        return cls(len(pts[0]), tuple(zip(pts, ws)))

    @classmethod
    def from_mapping(cls, mapping: Mapping[Sequence[int], int]):
        return cls.from_points(list(mapping.keys()), list(mapping.values()))

    def __len__(self):
        return len(self.points)

    @property
    def coords(self) -> list[Point]:
        return [p for p, _ in self.points]

    @property
    def weights(self) -> list[int]:
        return [w for _, w in self.points]

    def as_dict(self) -> dict[Point, int]:
        return dict(self.points)

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1 for _, w in self.points)

    @property
    def has_uniform_weights(self) -> bool:
        first = self.points[0][1]
        return all(w == first for _, w in self.points)

    def translate(self, offset: Sequence[int]) -> "WeightedFigure":
        if len(offset) != self.dim:
            raise DimensionError("offset dimension does not match the figure")
        return WeightedFigure(self.dim, tuple(
            (tuple(c + o for c, o in zip(p, offset)), w) for p, w in self.points))

    def min_corner(self) -> Point:
        return tuple(min(p[i] for p, _ in self.points) for i in range(self.dim))

    def max_corner(self) -> Point:
        return tuple(max(p[i] for p, _ in self.points) for i in range(self.dim))


# ---------------------------------------------------------------------------
# text format

def parse_figure(text: str, dim: int | None = None) -> WeightedFigure:
    """Parse the figure text format.

    One point per line: ``x y [w]`` in 2D or ``x [w]`` in 1D.  ``#`` starts a
    comment and blank lines are skipped.  Without a ``dim`` argument the
    dimension comes from a leading ``dim 1``/``dim 2`` line, else from the
    first data line (one field means 1D, two or three mean 2D).
    """
    points: dict[Point, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("dim"):
            if points:
                raise FormatError(f"line {lineno}: `dim` must precede the points")
            try:
                declared = int(line[3:])
            except ValueError:
                raise FormatError(f"line {lineno}: bad dim line {raw.strip()!r}") from None
            if declared not in (1, 2) or (dim is not None and dim != declared):
                raise FormatError(f"line {lineno}: unsupported dimension {declared}")
            dim = declared
            continue
        try:
            fields = [int(f) for f in line.split()]
        except ValueError:
            raise FormatError(f"line {lineno}: expected integers, got {raw.strip()!r}") from None
        if dim is None:
            if len(fields) not in (1, 2, 3):
                raise FormatError(f"line {lineno}: expected 1 to 3 fields")
            dim = 1 if len(fields) == 1 else 2
        if len(fields) not in (dim, dim + 1):
            raise FormatError(f"line {lineno}: {dim}D point needs {dim} or {dim + 1} fields")
        p, w = tuple(fields[:dim]), (fields[dim] if len(fields) > dim else 1)
        if p in points:
            raise FormatError(f"line {lineno}: duplicate point {p}")
        if w == 0:
            raise FormatError(f"line {lineno}: zero weight")
        points[p] = w
    if not points:
        raise FormatError("figure has no points")
    return WeightedFigure.from_mapping(points)


def read_figure(path, dim: int | None = None) -> WeightedFigure:
    with open(path) as fh:
        return parse_figure(fh.read(), dim)


def format_figure(fig: WeightedFigure) -> str:
    lines = []
    if fig.dim == 1 and not fig.is_unweighted:
        lines.append("dim 1")
    for p, w in fig.points:
        fields = list(p) + ([w] if w != 1 else [])
        lines.append(" ".join(str(f) for f in fields))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# integer helpers

def cross(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def orient(o: Sequence[int], a: Sequence[int], b: Sequence[int]) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def canonical_direction(vec: Sequence[int]) -> Direction:
    """Primitive vector parallel to ``vec`` whose first nonzero entry is positive."""
    x, y = int(vec[0]), int(vec[1])
    g = math.gcd(x, y)
    if g == 0:
        raise ValueError("zero vector has no direction")
    x, y = x // g, y // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return (x, y)


def direction_sort_key(d: Direction):
    """Short directions first; among equal lengths, by angle in [0, 180).

    ``d`` must be canonical.  The angle is compared exactly through the slope.
    """
    x, y = d
    if x == 0:
        angle = (1, Fraction(0))
    else:
        angle = (0 if y >= 0 else 2, Fraction(y, x))
    return (max(abs(x), abs(y)), abs(x) + abs(y), angle)


def sorted_directions(dirs: Iterable[Direction]) -> list[Direction]:
    return sorted(set(dirs), key=direction_sort_key)


# ---------------------------------------------------------------------------
# canonical form and convexity

def canonicalize(fig: WeightedFigure) -> WeightedFigure:
    """Translate so that every axis has minimum coordinate 0."""
    lo = fig.min_corner()
    if all(c == 0 for c in lo):
        return fig
    return fig.translate(tuple(-c for c in lo))


def convex_hull(points: Iterable[Sequence[int]]) -> list[Point]:
    """Counter-clockwise hull vertices, collinear points dropped (monotone chain)."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull


def hull_lattice_points(points: Iterable[Sequence[int]]) -> list[Point]:
    """All lattice points of the convex hull of ``points``, sorted."""
    pts = sorted(set(tuple(int(c) for c in p) for p in points))
    hull = convex_hull(pts)
    if len(hull) == 1:
        return hull
    if len(hull) == 2:
        (x0, y0), (x1, y1) = hull
        g = math.gcd(x1 - x0, y1 - y0)
        dx, dy = (x1 - x0) // g, (y1 - y0) // g
        return sorted((x0 + i * dx, y0 + i * dy) for i in range(g + 1))
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    edges = list(zip(hull, hull[1:] + hull[:1]))
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            if all(orient(a, b, (x, y)) >= 0 for a, b in edges):
                out.append((x, y))
    return out


def check_convex(fig: WeightedFigure) -> bool:
    """True iff the point set equals the lattice points of its convex hull."""
    if fig.dim != 2:
        raise DimensionError("convexity is defined for 2D figures only")
    pts = fig.coords
    if len(pts) <= 1:
        return True
    inside = hull_lattice_points(pts)
    return len(inside) == len(pts)


# ---------------------------------------------------------------------------
# directions and line partitions

def primitive_directions(fig: WeightedFigure) -> list[Direction]:
    """Canonical primitive directions of all pairwise point differences."""
    if fig.dim != 2:
        raise DimensionError("directions are defined for 2D figures only")
    dirs = {canonical_direction((q[0] - p[0], q[1] - p[1]))
            for p, q in combinations(fig.coords, 2)}
    return sorted_directions(dirs)


@dataclass(frozen=True)
class Run:
    line: int
    length: int
    contiguous: bool


@dataclass(frozen=True)
class LinePartition:
    direction: Direction
    runs: tuple[Run, ...]

    @property
    def lengths(self) -> list[int]:
        return [r.length for r in self.runs]

    @property
    def all_contiguous(self) -> bool:
        return all(r.contiguous for r in self.runs)


def line_partition(fig: WeightedFigure, d: Sequence[int]) -> LinePartition:
    """Group the figure's points by the line through them parallel to ``d``.

    Lines are identified by ``cross(d, p)``, which is constant along a line,
    and runs are listed in increasing order of that identifier.
    """
    if fig.dim != 2:
        raise DimensionError("line partitions are defined for 2D figures only")
    d = canonical_direction(d)
    norm2 = d[0] * d[0] + d[1] * d[1]
    lines: dict[int, list[int]] = {}
    for p in fig.coords:
        # position along the line; consecutive lattice points differ by 1
        lines.setdefault(cross(d, p), []).append((p[0] * d[0] + p[1] * d[1]) // norm2)
    runs = []
    for key in sorted(lines):
        ts = lines[key]
        runs.append(Run(key, len(ts), max(ts) - min(ts) + 1 == len(ts)))
    return LinePartition(d, tuple(runs))


def direction_gcd(fig: WeightedFigure, d: Sequence[int]) -> int:
    return math.gcd(*line_partition(fig, d).lengths)


# ---------------------------------------------------------------------------
# bases

def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def complete_basis(v: Sequence[int]) -> tuple[Direction, int, tuple[int, int]]:
    """Split ``v`` as ``k * u`` and complete ``u`` to a unimodular basis.

    ``u`` is the canonical primitive direction of ``v`` and ``k > 0``, so
    ``v == k * u`` when ``v`` has canonical sign and ``v == -k * u``
    otherwise.  The partner ``u'`` satisfies ``det(u, u') == 1`` and has the
    smallest max-norm, then smallest Euclidean norm, then is lexicographically
    least.
    """
    if len(v) != 2:
        raise DimensionError("complete_basis needs a 2D vector")
    if v[0] == 0 and v[1] == 0:
        raise ValueError("cannot complete the zero vector")
    u = canonical_direction(v)
    k = math.gcd(int(v[0]), int(v[1]))
    # det(u, w) = u0*w1 - u1*w0 = 1
    _, s, t = xgcd(u[0], -u[1])
    base = (t, s)
    assert det2(u, base) == 1
    uu = u[0] * u[0] + u[1] * u[1]
    centre = -round((base[0] * u[0] + base[1] * u[1]) / uu)
    reach = max(abs(u[0]), abs(u[1])) + 2
    best = None
    for m in range(centre - reach, centre + reach + 1):
        w = (base[0] + m * u[0], base[1] + m * u[1])
        key = (max(abs(w[0]), abs(w[1])), w[0] * w[0] + w[1] * w[1], w)
        if best is None or key < best:
            best = key
    return u, k, best[2]


def to_basis(z: Sequence[int], u: Sequence[int], v: Sequence[int]) -> tuple[int, int]:
    """Coordinates (a, b) with z = a*u + b*v for a unimodular basis (u, v)."""
    det = det2(u, v)
    if det not in (1, -1):
        raise ValueError(f"basis {tuple(u)}, {tuple(v)} is not unimodular")
    a = (z[0] * v[1] - z[1] * v[0]) * det
    b = (u[0] * z[1] - u[1] * z[0]) * det
    return a, b


def from_basis(a: int, b: int, u: Sequence[int], v: Sequence[int]) -> Point:
    return (a * u[0] + b * v[0], a * u[1] + b * v[1])


@dataclass(frozen=True)
class UVRepresentation:
    """Columns ``i = 0..n`` holding the contiguous intervals ``lows[i] <= j < highs[i]``."""

    u: tuple[int, int]
    v: tuple[int, int]
    lows: tuple[int, ...]
    highs: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.lows) - 1

    @property
    def lengths(self) -> list[int]:
        return [r - l for l, r in zip(self.lows, self.highs)]

    def points(self) -> list[Point]:
        return sorted(from_basis(i, j, self.u, self.v)
                      for i, (lo, hi) in enumerate(zip(self.lows, self.highs))
                      for j in range(lo, hi))


def uv_representation(fig: WeightedFigure, u: Sequence[int], v: Sequence[int]) -> UVRepresentation:
    """Express a convex figure as column intervals in the basis (u, v).

    The result is normalized so that the first column index is 0 and the
    first column starts at 0, which makes it depend only on the pattern.
    """
    if fig.dim != 2:
        raise DimensionError("(u, v)-representations are defined for 2D figures only")
    u = (int(u[0]), int(u[1]))
    v = (int(v[0]), int(v[1]))
    if abs(det2(u, v)) != 1:
        raise ValueError(f"basis {u}, {v} is not unimodular")
    cols: dict[int, list[int]] = {}
    for p in fig.coords:
        a, b = to_basis(p, u, v)
        cols.setdefault(a, []).append(b)
    a0 = min(cols)
    n = max(cols) - a0
    lows, highs = [], []
    for i in range(n + 1):
        js = cols.get(a0 + i)
        if not js:
            raise RepresentationError(f"column {i} is empty")
        lo, hi = min(js), max(js) + 1
        if hi - lo != len(js):
            raise RepresentationError(
                f"column {i} is not a contiguous interval: {sorted(js)}")
        lows.append(lo)
        highs.append(hi)
    shift = lows[0]
    return UVRepresentation(u, v, tuple(l - shift for l in lows), tuple(h - shift for h in highs))
