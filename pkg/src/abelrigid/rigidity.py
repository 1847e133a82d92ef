"""Deciding abelian rigidity of 2D patterns, with certificates from two independent routes.

Geometric route: a convex pattern is rigid iff the lengths of its line
intersections have gcd 1 in every direction.  Algebraic route: it is rigid
iff its polynomial has no strongly linear divisor.  For convex unweighted
figures both routes run and must agree.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConsistencyError, DegenerateHullError, DimensionError
from .geometry import (Direction, WeightedFigure, check_convex, convex_hull, line_partition,
                       primitive_directions)
from .polynomial import (StronglyLinearDivisor, find_strongly_linear_divisors, poly_of_pattern,
                         strongly_linear)

RIGID = "Rigid"
NOT_RIGID = "NotRigid"
UNKNOWN = "Unknown"


@dataclass
class RigidityVerdict:
    status: str
    geometric: list[tuple[Direction, int]] | None = None
    algebraic: StronglyLinearDivisor | None = None
    divisors: list[StronglyLinearDivisor] = field(default_factory=list)
    reason: str | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def gcd_table(self) -> dict[Direction, int]:
        return dict(self.geometric or [])

    def to_json(self) -> dict:
        geo = None
        if self.geometric is not None:
            geo = {f"{d[0]},{d[1]}": g for d, g in self.geometric}
        out = {"status": self.status, "geometric": geo,
               "algebraic": self.algebraic.to_json() if self.algebraic else None,
               "reason": self.reason}
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out


def gcd_table(fig: WeightedFigure, threads: int = 1) -> tuple[list[tuple[Direction, int]], list[str]]:
    """gcd of line-intersection lengths for every primitive direction, in canonical order.

    Also returns a warning for each direction whose intersections are not
    contiguous runs (possible only for non-convex figures).
    """
    dirs = primitive_directions(fig)
    if threads > 1 and len(dirs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda d: line_partition(fig, d), dirs))
    else:
        parts = [line_partition(fig, d) for d in dirs]
    table = [(d, math.gcd(*part.lengths)) for d, part in zip(dirs, parts)]
    warnings = [f"direction {d[0]},{d[1]}: line intersections are not contiguous"
                for d, part in zip(dirs, parts) if not part.all_contiguous]
    return table, warnings


def _check_certificate(p, div: StronglyLinearDivisor):
    if not (div.quotient * strongly_linear(div.direction, div.n)).equal_up_to_monomial(p):
        raise ConsistencyError(f"certificate {div} does not reconstruct {p}")


def decide_rigidity(fig: WeightedFigure, threads: int = 1) -> RigidityVerdict:
    if fig.dim == 1:
        return RigidityVerdict(
            RIGID, reason="in one dimension every word with a single abelian class is periodic")
    if fig.dim != 2:
        raise DimensionError("rigidity is decided for 1D and 2D figures only")
    # a common weight scales every combination by the same factor
    plain = fig.has_uniform_weights
    convex = check_convex(fig)
    table, warnings = gcd_table(fig, threads)
    p = poly_of_pattern(fig)
    divs = find_strongly_linear_divisors(p, multiples=not (plain and convex))
    for div in divs:
        _check_certificate(p, div)
    if plain and convex:
        geo_dirs = {d for d, g in table if g > 1}
        alg_dirs = {div.direction for div in divs}
        if geo_dirs != alg_dirs:
            raise ConsistencyError(
                f"routes disagree: gcd > 1 along {sorted(geo_dirs)}, divisors along {sorted(alg_dirs)}")
        if not divs:
            return RigidityVerdict(RIGID, table, warnings=warnings)
        return RigidityVerdict(NOT_RIGID, table, divs[0], divs, warnings=warnings)
    if divs:
        return RigidityVerdict(NOT_RIGID, table, divs[0], divs, warnings=warnings)
    why = []
    if not convex:
        why.append("not convex")
    if not plain:
        why.append("weighted")
    reason = ("figure is " + " and ".join(why)
              + "; no strongly linear divisor exists, and rigidity is only known to follow"
              " from that for unweighted convex figures")
    return RigidityVerdict(UNKNOWN, table, reason=reason, warnings=warnings)


# ---------------------------------------------------------------------------
# extension bound


@dataclass(frozen=True)
class ExtensionBound:
    """``N = Delta / delta + diameter * size * (alphabet + 2)``.

    ``delta`` is stored through its exact square; ``Delta`` is a Fraction when
    supplied by the caller and a float when estimated.
    """

    delta_squared: Fraction
    Delta: Fraction | float
    diameter_squared: int
    size: int
    alphabet: int
    Delta_estimated: bool = False

    @property
    def delta(self) -> float:
        return math.sqrt(self.delta_squared)

    @property
    def diameter(self) -> float:
        return math.sqrt(self.diameter_squared)

    @property
    def N(self) -> float:
        return float(self.Delta) / self.delta + self.diameter * self.size * (self.alphabet + 2)

    def to_json(self) -> dict:
        return {"delta": self.delta, "delta_squared": str(self.delta_squared),
                "Delta": float(self.Delta) if self.Delta_estimated else str(self.Delta),
                "Delta_estimated": self.Delta_estimated,
                "diameter": self.diameter, "size": self.size, "alphabet": self.alphabet,
                "N": self.N}


def _primitive_norm2(e) -> int:
    g = math.gcd(e[0], e[1])
    return (e[0] // g) ** 2 + (e[1] // g) ** 2


def estimate_Delta(hull: list) -> float:
    """max over hull vertices of max(delta_e, delta_f) / sin(angle between e and f).

    Moving one edge inward by one neighbour line (distance delta_e) slides
    its endpoint along the adjacent edge by delta_e / sin(angle); this is the
    conservative per-step shortening used when no value is supplied.
    """
    m = len(hull)
    best = 0.0
    for i in range(m):
        a, b, c = hull[i - 1], hull[i], hull[(i + 1) % m]
        e = (b[0] - a[0], b[1] - a[1])
        f = (c[0] - b[0], c[1] - b[1])
        sin = abs(e[0] * f[1] - e[1] * f[0]) / math.hypot(*e) / math.hypot(*f)
        step = max(1 / math.sqrt(_primitive_norm2(e)), 1 / math.sqrt(_primitive_norm2(f)))
        best = max(best, step / sin)
    return best


def extension_bound(fig: WeightedFigure, alphabet_size: int,
                    Delta_override: Fraction | int | None = None) -> ExtensionBound:
    if fig.dim != 2:
        raise DimensionError("the extension bound is defined for 2D figures")
    if alphabet_size < 1:
        raise ValueError("alphabet size must be positive")
    hull = convex_hull(fig.coords)
    if len(hull) < 3:
        raise DegenerateHullError("figure is collinear: its hull has no interior")
    if not check_convex(fig):
        raise ValueError("the extension bound needs a convex figure")
    edges = [(hull[(i + 1) % len(hull)][0] - hull[i][0], hull[(i + 1) % len(hull)][1] - hull[i][1])
             for i in range(len(hull))]
    delta2 = min(Fraction(1, _primitive_norm2(e)) for e in edges)
    diam2 = max((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 for p in hull for q in hull)
    if Delta_override is None:
        Delta, estimated = estimate_Delta(hull), True
    else:
        Delta, estimated = Fraction(Delta_override), False
        if Delta < 0:
            raise ValueError("Delta must be nonnegative")
    return ExtensionBound(delta2, Delta, diam2, len(fig), alphabet_size, estimated)
