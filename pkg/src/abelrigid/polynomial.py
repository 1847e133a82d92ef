"""Sparse integer polynomials in one or two variables and the figure/polynomial
correspondence.

Pattern polynomials are only defined up to a monomial factor (translating a
figure multiplies its polynomial by ``x^i y^j``), so divisibility questions
here are always answered modulo monomials.  :meth:`Poly.normalized` picks the
representative whose per-variable minimum exponent is 0.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import ConsistencyError, DimensionError, FormatError
from .geometry import (WeightedFigure, canonicalize, complete_basis, from_basis,
                       primitive_directions, to_basis)

VARS = ("x", "y")


class Poly:
    """Immutable sparse polynomial with integer coefficients.

    Terms live in a dict mapping exponent tuples to nonzero ints; the zero
    polynomial has no terms.  Exponents may be negative (Laurent monomials)
    while intermediate results are being shifted around.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], int] | None = None, nvars: int = 1):
        if nvars not in (1, 2):
            raise DimensionError("only 1- and 2-variable polynomials are supported")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != nvars:
                raise DimensionError(f"exponent {e} does not have {nvars} entries")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if clean[e] == 0:
                    del clean[e]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def constant(cls, c: int, nvars: int = 1) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "Poly":
        return cls({tuple(exps): c}, len(exps))

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "Poly":
        """Univariate polynomial from low-to-high dense coefficients."""
        return cls({(i,): c for i, c in enumerate(coeffs) if c}, 1)

    # -- access -----------------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in lexicographic exponent order (the rendering order)."""
        return sorted(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def min_exponents(self) -> tuple[int, ...]:
        return tuple(min(e[i] for e in self._terms) for i in range(self.nvars))

    def coeffs(self) -> list[int]:
        """Dense low-to-high coefficients of a univariate polynomial."""
        if self.nvars != 1:
            raise DimensionError("coeffs() needs a univariate polynomial")
        if not self._terms:
            return []
        lo = min(e[0] for e in self._terms)
        if lo < 0:
            raise ValueError("polynomial has negative exponents")
        out = [0] * (max(e[0] for e in self._terms) + 1)
        for (i,), c in self._terms.items():
            out[i] = c
        return out

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise DimensionError("polynomials have different numbers of variables")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return Poly.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = Poly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.constant(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def shift(self, exps: Sequence[int]) -> "Poly":
        """Multiply by the (Laurent) monomial ``x^exps``."""
        return Poly({tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()},
                    self.nvars)

    def normalized(self) -> "Poly":
        """The monomial multiple whose minimum exponent in each variable is 0."""
        if not self._terms:
            return self
        lo = self.min_exponents()
        if not any(lo):
            return self
        return self.shift(tuple(-v for v in lo))

    def equal_up_to_monomial(self, other: "Poly") -> bool:
        self._check(other)
        return self.normalized() == other.normalized()

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self._terms.items():
            term = c
            for v, k in zip(point, e):
                term = term * v ** k
            total += term
        return total

    # -- rendering --------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, nvars={self.nvars})"

    def to_json(self) -> list:
        return [[list(e), c] for e, c in self.items()]

    @classmethod
    def from_json(cls, data: Iterable, nvars: int | None = None) -> "Poly":
        data = list(data)
        if nvars is None:
            if not data:
                raise FormatError("cannot infer the variable count of an empty term list")
            nvars = len(data[0][0])
        return cls({tuple(e): c for e, c in data}, nvars)


def _monomial_str(e: Sequence[int]) -> str:
    parts = []
    for name, k in zip(VARS, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Render as e.g. ``10 + 2*y - 3*y^3 + x`` (lexicographic exponent order)."""
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.items()):
        mono = _monomial_str(e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^(?:(\d+)|([xy])(?:\^(\d+))?)$")


def parse_poly(text: str, nvars: int | None = None) -> Poly:
    """Inverse of :func:`format_poly`.  ``nvars`` defaults to 2 iff ``y`` occurs."""
    text = text.strip()
    if nvars is None:
        nvars = 2 if "y" in text else 1
    if text == "0":
        return Poly({}, nvars)
    if not text:
        raise FormatError("empty polynomial")
    terms: dict[tuple[int, ...], int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise FormatError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, body = m.group(1), m.group(2).strip()
        if sign is None and not first:
            raise FormatError(f"missing operator before {body!r}")
        first = False
        coeff = -1 if sign == "-" else 1
        exps = [0] * nvars
        seen_const = False
        for factor in body.split("*"):
            fm = _FACTOR.match(factor.strip())
            if not fm:
                raise FormatError(f"bad factor {factor!r}")
            if fm.group(1) is not None:
                if seen_const:
                    raise FormatError(f"two constants in term {body!r}")
                seen_const = True
                coeff *= int(fm.group(1))
            else:
                idx = VARS.index(fm.group(2))
                if idx >= nvars:
                    raise FormatError(f"variable {fm.group(2)} in a {nvars}-variable polynomial")
                exps[idx] += int(fm.group(3) or 1)
        e = tuple(exps)
        terms[e] = terms.get(e, 0) + coeff
        pos = m.end()
    return Poly(terms, nvars)


# ---------------------------------------------------------------------------
# figures <-> polynomials

def poly_of_pattern(fig: WeightedFigure) -> Poly:
    """Generating polynomial of the canonical figure: sum of ``w * x^p``."""
    return Poly(canonicalize(fig).as_dict(), fig.dim)


def figure_of_poly(p: Poly) -> WeightedFigure:
    """Canonical weighted figure of a nonzero polynomial."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no figure")
    return WeightedFigure.from_mapping(p.normalized().terms)


def poly_combine(pairs: Iterable[tuple[Poly, Poly]]) -> Poly:
    """Exact sum of products ``Z_i * P_i``."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("nothing to combine")
    nvars = pairs[0][0].nvars
    total = Poly({}, nvars)
    for z, p in pairs:
        if z.nvars != nvars or p.nvars != nvars:
            raise DimensionError("mixed variable counts in poly_combine")
        total = total + z * p
    return total


# ---------------------------------------------------------------------------
# dense univariate helpers (low-to-high coefficient lists)

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def udivmod(num: Sequence, den: Sequence) -> tuple[list, list]:
    """Polynomial long division over Q (exact ints when ``den`` is monic)."""
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _trim(list(num))
    lead = den[-1]
    monic = lead == 1
    if len(rem) < len(den):
        return [], rem
    quot = [0] * (len(rem) - len(den) + 1)
    for shift in range(len(rem) - len(den), -1, -1):
        c = rem[shift + len(den) - 1]
        if c == 0:
            continue
        q = c if monic else Fraction(c) / lead
        quot[shift] = q
        for i, d in enumerate(den):
            rem[shift + i] -= q * d
    return _trim(quot), _trim(rem[:len(den) - 1])


def ugcd(a: Sequence, b: Sequence) -> list:
    """Monic gcd over Q."""
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    while b:
        _, r = udivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def uxgcd(a: Sequence, b: Sequence) -> tuple[list, list, list]:
    """Return (g, s, t) over Q with s*a + t*b == g, g monic."""
    r0, r1 = _trim([Fraction(c) for c in a]), _trim([Fraction(c) for c in b])
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _usub(s0, _umul(q, s1))
        t0, t1 = t1, _usub(t0, _umul(q, t1))
    if not r0:
        return [], [], []
    lead = r0[-1]
    return [c / lead for c in r0], [c / lead for c in s0], [c / lead for c in t0]


def _umul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _usub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def integer_bezout(p: Poly, q: Poly) -> tuple[Poly, Poly, int]:
    """Integer polynomials Z1, Z2 and a nonzero integer C with Z1*p + Z2*q == C.

    Requires ``p`` and ``q`` coprime over Q; denominators of the rational
    Bezout pair are cleared by their least common multiple.
    """
    g, s, t = uxgcd(p.coeffs(), q.coeffs())
    if len(g) != 1:
        raise ValueError("polynomials are not coprime over Q")
    denom = 1
    for c in list(s) + list(t):
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    z1 = Poly.from_coeffs([int(c * denom) for c in s])
    z2 = Poly.from_coeffs([int(c * denom) for c in t])
    return z1, z2, denom


# ---------------------------------------------------------------------------
# cyclotomic polynomials

def totient(n: int) -> int:
    result, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        num, rem = udivmod(num, _cyclotomic_coeffs(d))
        assert not rem
    return tuple(int(c) for c in num)


def cyclotomic(n: int) -> Poly:
    """The n-th cyclotomic polynomial, by exact division of x^n - 1."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    return Poly.from_coeffs(_cyclotomic_coeffs(n))


def cyclotomic_bound(degree: int) -> int:
    """Every n with totient(n) <= degree satisfies n <= 2 * degree**2."""
    return 2 * degree * degree


def cyclotomic_indices(coeffs: Sequence[int], bound: int | None = None) -> list[int]:
    """All n with Phi_n dividing the dense univariate polynomial ``coeffs``."""
    coeffs = _trim(list(coeffs))
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    deg = len(coeffs) - 1
    if deg < 1:
        return []
    if bound is None:
        bound = cyclotomic_bound(deg)
    found = []
    for n in range(1, bound + 1):
        if totient(n) > deg:
            continue
        _, rem = udivmod(coeffs, _cyclotomic_coeffs(n))
        if not rem:
            found.append(n)
    return found


@dataclass(frozen=True)
class CyclotomicReport:
    tested_bound: int
    divisors: tuple[int, ...]

    def to_json(self) -> dict:
        return {"tested_bound": self.tested_bound, "divisors": list(self.divisors)}


def detect_cyclotomic_factors(p: Poly, max_n: int | None = None) -> CyclotomicReport:
    """Every n such that Phi_n divides ``p`` in Q[x].

    Without ``max_n`` the search runs up to ``2 * deg**2``, which is complete.
    """
    if p.nvars != 1:
        raise DimensionError("cyclotomic detection needs a univariate polynomial")
    if p.is_zero():
        raise ValueError("the zero polynomial is divisible by everything")
    coeffs = p.normalized().coeffs()
    deg = len(coeffs) - 1
    bound = cyclotomic_bound(deg) if max_n is None else max_n
    return CyclotomicReport(bound, tuple(cyclotomic_indices(coeffs, bound)))


# ---------------------------------------------------------------------------
# strongly linear divisors

def _as_vector(v) -> tuple[int, ...]:
    if isinstance(v, int):
        return (v,)
    return tuple(int(c) for c in v)


def strongly_linear(v, n: int) -> Poly:
    """``sum_{i=0..n} x^(i*v)`` shifted into nonnegative exponents."""
    v = _as_vector(v)
    if n < 1:
        raise ValueError("strongly linear polynomials need n >= 1")
    if not any(v):
        raise ValueError("direction must be nonzero")
    return Poly({tuple(i * c for c in v): 1 for i in range(n + 1)}, len(v)).normalized()


def _lines_along(p: Poly, u, uprime) -> dict[int, dict[int, int]]:
    """Split ``p`` into lines parallel to ``u``: {b: {a: coeff}} for z = a*u + b*u'."""
    lines: dict[int, dict[int, int]] = {}
    for e, c in p.terms.items():
        a, b = to_basis(e, u, uprime)
        lines.setdefault(b, {})[a] = c
    return lines


def _dense(line: Mapping[int, int]) -> tuple[int, list[int]]:
    lo = min(line)
    out = [0] * (max(line) - lo + 1)
    for a, c in line.items():
        out[a - lo] = c
    return lo, out


def divide_by_strongly_linear(p: Poly, v, n: int) -> Poly | None:
    """Quotient of ``p`` by ``l(v, n)`` modulo monomials, or None if it does not divide.

    In a unimodular basis (u, u') with v = k*u, ``l(v, n)`` becomes the monic
    univariate ``1 + t^k + ... + t^(nk)``; every line of ``p`` parallel to u
    is divided by it separately.
    """
    if p.is_zero():
        raise ValueError("cannot divide the zero polynomial")
    v = _as_vector(v)
    if len(v) != p.nvars:
        raise DimensionError("direction and polynomial dimensions differ")
    if n < 1:
        raise ValueError("strongly linear polynomials need n >= 1")
    if p.nvars == 1:
        k = abs(v[0])
        den = [0] * (n * k + 1)
        for i in range(n + 1):
            den[i * k] = 1
        q, r = udivmod(p.normalized().coeffs(), den)
        if r:
            return None
        return Poly.from_coeffs([int(c) for c in q]).normalized()
    u, k, uprime = complete_basis(v)
    den = [0] * (n * k + 1)
    for i in range(n + 1):
        den[i * k] = 1
    quot: dict[tuple[int, int], int] = {}
    for b, line in _lines_along(p, u, uprime).items():
        lo, coeffs = _dense(line)
        q, r = udivmod(coeffs, den)
        if r:
            return None
        for i, c in enumerate(q):
            if c:
                quot[from_basis(lo + i, b, u, uprime)] = int(c)
    return Poly(quot, 2).normalized()


def _common_cyclotomic_indices(p: Poly, u, uprime) -> set[int]:
    """Indices m >= 2 such that Phi_m(t) divides every line of ``p`` along u."""
    lines = [_dense(line)[1] for line in _lines_along(p, u, uprime).values()]
    lines.sort(key=len)
    if len(lines[0]) < 2:
        return set()
    common = set(cyclotomic_indices(lines[0])) - {1}
    for coeffs in lines[1:]:
        if not common:
            break
        if len(coeffs) < 2:
            return set()
        common = {m for m in common
                  if not udivmod(coeffs, _cyclotomic_coeffs(m))[1]}
    return common


@dataclass(frozen=True)
class StronglyLinearDivisor:
    direction: tuple[int, int]
    n: int
    quotient: Poly

    def to_json(self) -> dict:
        return {"direction": list(self.direction), "n": self.n,
                "quotient": str(self.quotient), "quotient_terms": self.quotient.to_json()}


def find_strongly_linear_divisors(p: Poly, multiples: bool = False) -> list[StronglyLinearDivisor]:
    """All ``(v, n)`` with ``l(v, n)`` dividing ``p``, v primitive, plus quotients.

    Directions come from :func:`primitive_directions` of the support (any
    other direction meets the support in single points, whose monomial lines
    admit no cyclotomic factor).  Along a direction u, ``l(u, n)`` is the
    product of ``Phi_d(t)`` over the divisors ``d > 1`` of ``n + 1``, so the
    candidates are exactly the ``m = n + 1`` all of whose nontrivial divisors
    are common cyclotomic factors of the lines.  Each candidate is confirmed
    by an actual division.

    With ``multiples`` the search also covers ``v = k*u`` for k >= 2.  Those
    never add a direction for convex unweighted figures, but can for other
    supports (``1 + x^2`` is ``l((2, 0), 1)``).
    """
    if p.nvars != 2:
        raise DimensionError("strongly linear divisors are searched in two variables")
    if p.is_zero():
        raise ValueError("the zero polynomial is divisible by everything")
    fig = figure_of_poly(p)
    if len(fig) < 2:
        return []
    found = []
    for d in primitive_directions(fig):
        divisors_for_direction(p, d, found)
        if multiples:
            multiple_divisors(p, d, found)
    return found


def multiple_divisors(p: Poly, d, out: list | None = None) -> list[StronglyLinearDivisor]:
    """Divisors ``l(k*d, n)`` with ``k >= 2``, found by direct trial division.

    ``l(k*d, n)`` spans ``n*k`` steps along d, so it can only divide when
    every line of ``p`` along d spans at least that many steps.
    """
    out = [] if out is None else out
    u, _, uprime = complete_basis(d)
    spans = [max(line) - min(line) for line in _lines_along(p, u, uprime).values()]
    reach = min(spans)
    for k in range(2, reach + 1):
        for n in range(1, reach // k + 1):
            v = (k * u[0], k * u[1])
            q = divide_by_strongly_linear(p, v, n)
            if q is not None:
                out.append(StronglyLinearDivisor(v, n, q))
    return out


def divisors_for_direction(p: Poly, d, out: list | None = None) -> list[StronglyLinearDivisor]:
    """Strongly linear divisors of ``p`` along the single primitive direction ``d``."""
    out = [] if out is None else out
    u, _, uprime = complete_basis(d)
    common = _common_cyclotomic_indices(p, u, uprime)
    for m in sorted(common):
        if all(f in common for f in divisors(m)[1:]):
            q = divide_by_strongly_linear(p, u, m - 1)
            if q is None:
                raise ConsistencyError(
                    f"l({u}, {m - 1}) passed the cyclotomic screen but does not divide {p}")
            out.append(StronglyLinearDivisor(u, m - 1, q))
    return out
