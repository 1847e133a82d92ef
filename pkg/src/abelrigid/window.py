"""Finite samples of lattice words: rectangular windows and periodic sequences."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import FormatError, WindowError


def _symbol(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _symbols_key(s):
    # integers sort numerically and before any string symbol
    return (0, s, "") if isinstance(s, int) else (1, 0, s)


@dataclass(frozen=True, eq=False)
class ConfigurationWindow:
    """Cells of a word on ``origin <= p < origin + (width, height)``.

    ``cells[j, i]`` is the alphabet index of the letter at lattice point
    ``(x0 + i, y0 + j)``.  One-dimensional windows have ``dim == 1`` and a
    single row; their lattice points are ``(x0 + i,)``.
    """

    origin: tuple[int, int]
    cells: np.ndarray
    alphabet: tuple
    dim: int = 2

    def __post_init__(self):
        cells = np.ascontiguousarray(self.cells, dtype=np.int64)
        if cells.ndim == 1:
            cells = cells.reshape(1, -1)
        if cells.ndim != 2 or cells.size == 0:
            raise WindowError("a window needs a nonempty 2D cell array")
        if self.dim == 1 and cells.shape[0] != 1:
            raise WindowError("a 1D window has exactly one row")
        if not self.alphabet:
            raise WindowError("empty alphabet")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise WindowError("alphabet symbols must be distinct")
        if cells.min() < 0 or cells.max() >= len(self.alphabet):
            raise WindowError("cell index outside the alphabet")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "origin", (int(self.origin[0]), int(self.origin[1]) if len(self.origin) > 1 else 0))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))

    @classmethod
    def from_symbols(cls, origin: Sequence[int], rows: Sequence[Sequence], alphabet: Sequence | None = None,
                     dim: int = 2) -> "ConfigurationWindow":
        """Build from symbol rows ordered by increasing y.

        Without an explicit alphabet, the used symbols are taken in sorted order.
        """
        rows = [list(r) for r in rows]
        if alphabet is None:
            alphabet = sorted({s for r in rows for s in r}, key=_symbols_key)
        index = {s: i for i, s in enumerate(alphabet)}
        try:
            cells = np.array([[index[s] for s in r] for r in rows], dtype=np.int64)
        except KeyError as exc:
            raise WindowError(f"symbol {exc.args[0]!r} is not in the alphabet") from None
        return cls(tuple(origin), cells, tuple(alphabet), dim)

    @classmethod
    def from_sequence(cls, start: int, values: Sequence, alphabet: Sequence | None = None):
        return cls.from_symbols((start, 0), [list(values)], alphabet, dim=1)

    @property
    def width(self) -> int:
        return self.cells.shape[1]

    @property
    def height(self) -> int:
        return self.cells.shape[0]

    @property
    def nsym(self) -> int:
        return len(self.alphabet)

    def contains(self, p: Sequence[int]) -> bool:
        x = p[0] - self.origin[0]
        y = (p[1] - self.origin[1]) if self.dim == 2 else 0
        return 0 <= x < self.width and 0 <= y < self.height

    def index_at(self, p: Sequence[int]) -> int:
        if not self.contains(p):
            raise WindowError(f"point {tuple(p)} lies outside the window")
        y = (p[1] - self.origin[1]) if self.dim == 2 else 0
        return int(self.cells[y, p[0] - self.origin[0]])

    def symbol_at(self, p: Sequence[int]):
        return self.alphabet[self.index_at(p)]

    @property
    def has_integer_alphabet(self) -> bool:
        return all(isinstance(s, int) for s in self.alphabet)

    def values(self) -> np.ndarray:
        """Integer value of every cell; requires an integer alphabet."""
        if not self.has_integer_alphabet:
            raise WindowError("the alphabet is not made of integers")
        return np.array(self.alphabet, dtype=np.int64)[self.cells]

    def symbol_rows(self) -> list[list]:
        """Rows of symbols, top row (largest y) first."""
        return [[self.alphabet[i] for i in row] for row in self.cells[::-1].tolist()]

    def to_text(self) -> str:
        header = "window {} {} {} {} alphabet={}".format(
            self.origin[0], self.origin[1], self.width, self.height,
            ",".join(str(s) for s in self.alphabet))
        lines = [header] + [" ".join(str(s) for s in row) for row in self.symbol_rows()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"origin": list(self.origin[:self.dim]), "width": self.width, "height": self.height,
                "alphabet": list(self.alphabet), "rows": self.symbol_rows()}

    def __eq__(self, other):
        if not isinstance(other, ConfigurationWindow):
            return NotImplemented
        return (self.origin == other.origin and self.alphabet == other.alphabet
                and self.dim == other.dim and np.array_equal(self.cells, other.cells))

    def __hash__(self):
        return hash((self.origin, self.alphabet, self.dim, self.cells.tobytes()))


@dataclass(frozen=True)
class PeriodicSequence:
    """Integer sequence with ``s(x) = values[x mod period]``."""

    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("a periodic sequence needs at least one value")
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @property
    def period(self) -> int:
        return len(self.values)

    def __getitem__(self, x: int) -> int:
        return self.values[x % self.period]

    def is_zero(self) -> bool:
        return not any(self.values)

    def to_text(self) -> str:
        return f"period {self.period}\n" + " ".join(str(v) for v in self.values) + "\n"

    def to_json(self) -> dict:
        return {"period": self.period, "values": list(self.values)}


def parse_window(text: str) -> ConfigurationWindow:
    lines = [ln.split("#", 1)[0].rstrip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        raise FormatError("empty window file")
    head = lines[0].split()
    if len(head) != 6 or head[0] != "window" or not head[5].startswith("alphabet="):
        raise FormatError("expected `window x0 y0 width height alphabet=s0,s1,...`")
    try:
        x0, y0, width, height = (int(f) for f in head[1:5])
    except ValueError:
        raise FormatError("window header coordinates must be integers") from None
    if width <= 0 or height <= 0:
        raise FormatError("window size must be positive")
    alphabet = [_symbol(s) for s in head[5][len("alphabet="):].split(",") if s]
    if len(lines) - 1 != height:
        raise FormatError(f"expected {height} rows, found {len(lines) - 1}")
    rows = []
    for k, line in enumerate(lines[1:]):
        row = [_symbol(s) for s in line.split()]
        if len(row) != width:
            raise FormatError(f"row {k + 1} has {len(row)} symbols, expected {width}")
        rows.append(row)
    try:
        return ConfigurationWindow.from_symbols((x0, y0), rows[::-1], alphabet)
    except WindowError as exc:
        raise FormatError(str(exc)) from None


def parse_sequence(text: str) -> PeriodicSequence:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) != 2 or not lines[0].startswith("period"):
        raise FormatError("expected `period n` followed by one line of integers")
    try:
        n = int(lines[0].split()[1])
        values = [int(v) for v in lines[1].split()]
    except (IndexError, ValueError):
        raise FormatError("malformed periodic sequence") from None
    if n <= 0 or len(values) != n:
        raise FormatError(f"period {n} does not match {len(values)} values")
    return PeriodicSequence(tuple(values))


def parse_window_or_sequence(text: str):
    """Dispatch on the first keyword: ``window`` or ``period``."""
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            if line.startswith("period"):
                return parse_sequence(text)
            return parse_window(text)
    raise FormatError("empty input")


def read_window_or_sequence(path):
    with open(path) as fh:
        return parse_window_or_sequence(fh.read())
