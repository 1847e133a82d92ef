"""Explicit witnesses of non-rigidity.

In 1D a cyclotomic factor Phi_n of the pattern polynomial yields a nonzero
n-periodic integer sequence whose weighted sum vanishes on every translate.
In 2D a strongly linear divisor l(v, n) yields a configuration with a
single abelian class that is periodic along v only.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, DimensionError, WindowError, WitnessError
from .geometry import WeightedFigure, canonicalize, complete_basis, cross
from .oracle import abelian_pattern_complexity, constant_sum_check, period_vectors
from .polynomial import _cyclotomic_coeffs, divide_by_strongly_linear, poly_of_pattern, udivmod
from .window import ConfigurationWindow, PeriodicSequence

# ---------------------------------------------------------------------------
# 1D: kernel of the circulant system

_CHUNK = 1 << 16


def circulant_matrix(fig: WeightedFigure, n: int) -> list[list[int]]:
    """Row x encodes ``sum_t g_t * s((x + t) mod n) = 0`` for an n-periodic s."""
    if fig.dim != 1:
        raise DimensionError("circulant systems come from 1D figures")
    if n < 1:
        raise ValueError("period must be positive")
    rows = [[0] * n for _ in range(n)]
    for (t,), g in canonicalize(fig).points:
        for x in range(n):
            rows[x][(x + t) % n] += g
    return rows


def rational_kernel(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Basis of the right kernel over Q, one vector per free column (Gauss-Jordan)."""
    m = [[Fraction(c) for c in r] for r in rows]
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -m[i][free]
        basis.append(vec)
    return basis


def circulant_kernel(fig: WeightedFigure, n: int) -> list[list[Fraction]]:
    return rational_kernel(circulant_matrix(fig, n))


def _smallest_integer_vector(basis: list[list[Fraction]]) -> tuple[int, ...]:
    """Nonzero integer kernel vector of least max-norm, lexicographically greatest among those.

    Basis vector i is 1 at its free coordinate and 0 at the other free
    coordinates, so an integer vector of max-norm B has free coordinates in
    [-B, B]; trying B = 1, 2, ... finds the optimum at the first B that works.
    Combinations are scanned as integer matrix products over the common
    denominator, in chunks.
    """
    denom = math.lcm(*(c.denominator for b in basis for c in b))
    mat = np.array([[int(c * denom) for c in b] for b in basis], dtype=np.int64)
    dim = len(basis)
    bound = 1
    while True:
        best = None
        side = 2 * bound + 1
        total = side ** dim
        for lo in range(0, total, _CHUNK):
            idx = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
            coeffs = np.empty((idx.size, dim), dtype=np.int64)
            for j in range(dim - 1, -1, -1):
                coeffs[:, j] = bound - idx % side
                idx //= side
            vecs = coeffs @ mat
            ok = np.all(vecs % denom == 0, axis=1) & np.any(coeffs != 0, axis=1)
            vecs = vecs[ok] // denom
            vecs = vecs[np.abs(vecs).max(axis=1) <= bound] if vecs.size else vecs
            if not vecs.size:
                continue
            norms = np.abs(vecs).max(axis=1)
            vecs = vecs[norms == norms.min()]
            cand = max(tuple(int(x) for x in row) for row in vecs)
            key = (-int(norms.min()), cand)
            if best is None or key > best:
                best = key
        if best is not None:
            return best[1]
        bound += 1


def build_witness_1d(fig: WeightedFigure, n: int) -> PeriodicSequence:
    """Nonzero n-periodic integer sequence with weighted sum 0 on every translate."""
    if fig.dim != 1:
        raise DimensionError("build_witness_1d needs a 1D figure")
    if n < 1:
        raise ValueError("period must be positive")
    coeffs = poly_of_pattern(fig).coeffs()
    if len(coeffs) < 2 or udivmod(coeffs, _cyclotomic_coeffs(n))[1]:
        raise WitnessError(f"Phi_{n} does not divide the pattern polynomial")
    basis = circulant_kernel(fig, n)
    if not basis:
        raise ConsistencyError(f"Phi_{n} divides the polynomial but the circulant kernel is trivial")
    seq = PeriodicSequence(_smallest_integer_vector(basis))
    report = constant_sum_check(seq, fig)
    if report.constant != 0:
        raise ConsistencyError(f"witness {seq.values} fails the constant-sum check: {report}")
    return seq


# ---------------------------------------------------------------------------
# 2D: configuration periodic along a strongly linear divisor only


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class StronglyLinearRule:
    """The word ``z = A*u + b*u'  ->  (A div k + b + [|b| is prime]) mod (n + 1)``.

    ``(u, k, u')`` comes from :func:`complete_basis` of ``v``.  The n + 1
    points of any translate of l(v, n) lie on one line b and hit n + 1
    consecutive values of ``A div k``, so they carry every letter exactly
    once.  Letters shift by the prime indicator of |b| from line to line,
    which is what breaks periodicity transversal to u.
    """

    v: tuple[int, int]
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.v == (0, 0):
            raise ValueError("direction must be nonzero")

    @property
    def basis(self):
        return complete_basis(self.v)

    @property
    def alphabet(self) -> tuple[int, ...]:
        return tuple(range(self.n + 1))

    @property
    def period(self) -> tuple[int, int]:
        u, k, _ = self.basis
        m = (self.n + 1) * k
        return (m * u[0], m * u[1])

    def letters(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        u, k, up = self.basis
        # inverse of the unimodular matrix [u u'] (det 1)
        big_a = xs * up[1] - ys * up[0]
        b = u[0] * ys - u[1] * xs
        bmax = int(np.abs(b).max()) if b.size else 0
        primes = np.array([is_prime(m) for m in range(bmax + 1)], dtype=np.int64)
        return (np.floor_divide(big_a, k) + b + primes[np.abs(b)]) % (self.n + 1)

    def letter(self, p: Sequence[int]) -> int:
        return int(self.letters(np.array([p[0]]), np.array([p[1]]))[0])


def render_window(source, origin: Sequence[int], size, threads: int = 1) -> ConfigurationWindow:
    """Materialize a periodic sequence or a 2D rule on a finite window.

    For a sequence, ``origin`` is an integer (or 1-tuple) and ``size`` a
    length; for a rule, both are pairs and rows may be filled in parallel.
    """
    if isinstance(source, PeriodicSequence):
        start = origin if isinstance(origin, int) else origin[0]
        length = size if isinstance(size, int) else size[0]
        if length <= 0:
            raise WindowError("window size must be positive")
        return ConfigurationWindow.from_sequence(start, [source[start + i] for i in range(length)])
    if isinstance(source, StronglyLinearRule):
        width, height = size
        if width <= 0 or height <= 0:
            raise WindowError("window size must be positive")
        x0, y0 = origin
        xs = np.arange(x0, x0 + width, dtype=np.int64)

        def row(y):
            return source.letters(xs, np.full(width, y, dtype=np.int64))

        ys = range(y0, y0 + height)
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                rows = list(pool.map(row, ys))
        else:
            rows = [row(y) for y in ys]
        return ConfigurationWindow((x0, y0), np.stack(rows), source.alphabet)
    raise TypeError(f"cannot render {type(source).__name__}")


def default_period_bound(width: int, height: int) -> int:
    """Scan radius leaving at least two thirds of the window in every comparison.

    Shorter overlaps can make the prime indicator look periodic on the
    few rows compared.
    """
    return max(1, min(16, width // 3, height // 3))


def build_witness_2d(fig: WeightedFigure, v: Sequence[int], n: int, window: Sequence[int],
                     origin: Sequence[int] = (0, 0), period_bound: int | None = None,
                     threads: int = 1) -> ConfigurationWindow:
    """Window of the strongly linear rule, checked before it is returned.

    Checks: one abelian class over all contained translates, the period
    along v is present when it fits, and no scanned period vector is
    independent of v.
    """
    if fig.dim != 2:
        raise DimensionError("build_witness_2d needs a 2D figure")
    v = (int(v[0]), int(v[1]))
    if divide_by_strongly_linear(poly_of_pattern(fig), v, n) is None:
        raise WitnessError(f"l({v}, {n}) does not divide the pattern polynomial")
    width, height = window
    span = [hi - lo for hi, lo in zip(fig.max_corner(), fig.min_corner())]
    if width <= span[0] or height <= span[1]:
        raise WindowError(f"a {width}x{height} window holds no translate of the figure")
    rule = StronglyLinearRule(v, n)
    win = render_window(rule, origin, (width, height), threads)
    classes = abelian_pattern_complexity(win, fig)
    if classes != 1:
        raise ConsistencyError(f"witness window has {classes} abelian classes")
    bound = default_period_bound(width, height) if period_bound is None else period_bound
    u = rule.basis[0]
    periods = period_vectors(win, bound)
    stray = [p for p in periods if cross(p, u) != 0]
    if stray:
        raise WindowError(f"window too small to show aperiodicity: it has periods {stray[:5]} "
                          f"independent of {u}; enlarge it or lower the period bound")
    p = rule.period
    if max(abs(p[0]), abs(p[1])) <= bound and abs(p[0]) < width and abs(p[1]) < height:
        if tuple(p) not in set(periods) and tuple(-c for c in p) not in set(periods):
            raise ConsistencyError(f"witness window lacks its period {p}")
    return win
