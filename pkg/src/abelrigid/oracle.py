"""Brute-force ground truth on finite windows.

Only fully contained translates of a figure are ever looked at; partially
visible translates near the window border are ignored.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .errors import DimensionError, WindowError
from .geometry import WeightedFigure, canonicalize
from .window import ConfigurationWindow, PeriodicSequence


def _offsets(fig: WeightedFigure) -> tuple[np.ndarray, np.ndarray]:
    """Canonical offsets as (dx, dy) rows, plus weights."""
    canon = canonicalize(fig)
    if fig.dim == 1:
        offs = [(p[0], 0) for p in canon.coords]
    else:
        offs = list(canon.coords)
    return np.array(offs, dtype=np.int64).reshape(-1, 2), np.array(canon.weights, dtype=np.int64)


def _check_dims(win: ConfigurationWindow, fig: WeightedFigure):
    if win.dim != fig.dim:
        raise DimensionError(f"{fig.dim}D figure on a {win.dim}D window")


def _anchor(win: ConfigurationWindow, fig: WeightedFigure, i: int, j: int) -> tuple[int, ...]:
    """Offset ``pos`` such that ``fig + pos`` is the translate anchored at cell (i, j)."""
    lo = fig.min_corner()
    if fig.dim == 1:
        return (win.origin[0] + i - lo[0],)
    return (win.origin[0] + i - lo[0], win.origin[1] + j - lo[1])


# ---------------------------------------------------------------------------
# combinations and complexity

@dataclass(frozen=True)
class AbelianCombination:
    alphabet: tuple
    multiplicities: tuple[int, ...]

    def to_json(self) -> dict:
        return {"alphabet": list(self.alphabet), "multiplicities": list(self.multiplicities)}


def abelian_combination(win: ConfigurationWindow, fig: WeightedFigure, pos: Sequence[int]) -> AbelianCombination:
    """Weighted letter counts of ``fig + pos`` read off the window."""
    _check_dims(win, fig)
    if len(pos) != fig.dim:
        raise DimensionError("position and figure dimensions differ")
    mult = [0] * win.nsym
    for p, w in fig.points:
        q = tuple(a + b for a, b in zip(p, pos))
        if not win.contains(q):
            raise WindowError(f"translate by {tuple(pos)} leaves the window at {q}")
        mult[win.index_at(q)] += w
    return AbelianCombination(win.alphabet, tuple(mult))


def _combination_rows(win: ConfigurationWindow, fig: WeightedFigure) -> np.ndarray:
    _check_dims(win, fig)
    offs, weights = _offsets(fig)
    counts = kernels.combination_counts(win.cells, offs, weights, win.nsym)
    if counts.shape[0] == 0 or counts.shape[1] == 0:
        raise WindowError("no translate of the figure fits in the window")
    return counts


def abelian_pattern_complexity(win: ConfigurationWindow, fig: WeightedFigure) -> int:
    """Number of distinct weighted letter counts over all contained translates."""
    counts = _combination_rows(win, fig)
    return int(np.unique(counts.reshape(-1, counts.shape[2]), axis=0).shape[0])


def abelian_classes(win: ConfigurationWindow, fig: WeightedFigure) -> list[AbelianCombination]:
    """The distinct combinations themselves, in lexicographic order of counts."""
    counts = _combination_rows(win, fig)
    rows = np.unique(counts.reshape(-1, counts.shape[2]), axis=0)
    return [AbelianCombination(win.alphabet, tuple(int(c) for c in r)) for r in rows]


# ---------------------------------------------------------------------------
# constant sums

@dataclass(frozen=True)
class ConstantSumReport:
    """``constant`` is set when every contained translate has the same weighted sum.

    Otherwise ``counterexample`` holds two translate positions with their
    differing sums.
    """

    constant: int | None
    translates: int
    counterexample: tuple | None = None

    @property
    def is_constant(self) -> bool:
        return self.constant is not None

    def to_json(self) -> dict:
        out: dict = {"constant": self.constant, "translates": self.translates}
        if self.counterexample is not None:
            (p1, s1), (p2, s2) = self.counterexample
            out["counterexample"] = [{"position": list(p1), "sum": s1},
                                     {"position": list(p2), "sum": s2}]
        return out


def sequence_window(seq: PeriodicSequence, fig: WeightedFigure) -> ConfigurationWindow:
    """One full period of ``seq`` plus enough overlap for every phase of ``fig``."""
    if fig.dim != 1:
        raise DimensionError("periodic sequences pair with 1D figures")
    span = fig.max_corner()[0] - fig.min_corner()[0]
    values = [seq[x] for x in range(seq.period + span)]
    return ConfigurationWindow.from_sequence(0, values)


def constant_sum_check(source, fig: WeightedFigure) -> ConstantSumReport:
    """Check that the weighted value sum is the same on every contained translate.

    ``source`` is a window with an integer alphabet or a periodic sequence;
    a sequence is checked on all of its phases.
    """
    win = sequence_window(source, fig) if isinstance(source, PeriodicSequence) else source
    _check_dims(win, fig)
    offs, weights = _offsets(fig)
    sums = kernels.weighted_sums(win.values(), offs, weights)
    if sums.size == 0:
        raise WindowError("no translate of the figure fits in the window")
    flat = sums.reshape(-1)
    bad = np.flatnonzero(flat != flat[0])
    if bad.size == 0:
        return ConstantSumReport(int(flat[0]), int(flat.size))
    j, i = divmod(int(bad[0]), sums.shape[1])
    first = (_anchor(win, fig, 0, 0), int(flat[0]))
    other = (_anchor(win, fig, i, j), int(flat[bad[0]]))
    return ConstantSumReport(None, int(flat.size), (first, other))


# ---------------------------------------------------------------------------
# periods

def candidate_vectors(bound: int, dim: int = 2) -> list[tuple[int, int]]:
    """Nonzero vectors of max-norm <= bound whose first nonzero entry is positive."""
    if bound < 1:
        raise ValueError("period bound must be at least 1")
    if dim == 1:
        return [(p, 0) for p in range(1, bound + 1)]
    out = [(0, y) for y in range(1, bound + 1)]
    out += [(x, y) for x in range(1, bound + 1) for y in range(-bound, bound + 1)]
    return sorted(out)


def period_vectors(win: ConfigurationWindow, bound: int) -> list[tuple[int, ...]]:
    """Vectors p (canonical sign, max-norm <= bound) with w(x) == w(x + p) on the window.

    A vector that pairs no two window cells gives no evidence and is left out.
    """
    cands = candidate_vectors(bound, win.dim)
    mask = kernels.period_mask(win.cells, np.array(cands, dtype=np.int64))
    if win.dim == 1:
        return [(c[0],) for c, ok in zip(cands, mask) if ok]
    return [c for c, ok in zip(cands, mask) if ok]


def minimal_period_1d(seq: Sequence) -> int:
    seq = list(seq)
    if not seq:
        raise ValueError("empty word has no period")
    n = len(seq)
    for p in range(1, n + 1):
        if all(seq[i] == seq[i + p] for i in range(n - p)):
            return p
    return n  # unreachable: p == n always qualifies


# ---------------------------------------------------------------------------
# exhaustive searches

@dataclass
class SearchResult:
    parameters: dict
    solutions: list
    exhausted: bool
    stats: dict = field(default_factory=dict)

    def to_json(self, timing: bool = False) -> dict:
        """JSON form; wall time is left out unless asked for so output is reproducible."""
        stats = {"nodes": self.stats.get("nodes", 0)}
        if timing:
            stats["wall_time"] = self.stats.get("wall_time", 0.0)
        sols = [s.symbol_rows() if isinstance(s, ConfigurationWindow) else list(s)
                for s in self.solutions]
        return {"parameters": self.parameters, "solutions": sols,
                "exhausted": self.exhausted, "stats": stats}


@dataclass(frozen=True)
class _Problem:
    ncells: int
    tr_cells: np.ndarray
    weights: np.ndarray
    comp_ptr: np.ndarray
    comp_idx: np.ndarray
    ref: int


def _problem(ncells: int, tr_cells: np.ndarray, weights: np.ndarray) -> _Problem:
    """Index translates by the last cell they need, in scanning order."""
    tr_cells = np.ascontiguousarray(tr_cells, dtype=np.int64)
    last = tr_cells.max(axis=1) if tr_cells.size else np.zeros(0, dtype=np.int64)
    order = np.lexsort((np.arange(len(last)), last)).astype(np.int64)
    ptr = np.zeros(ncells + 1, dtype=np.int64)
    np.add.at(ptr, last + 1, 1)
    ptr = np.cumsum(ptr).astype(np.int64)
    ref = int(order[0]) if len(order) else 0
    return _Problem(ncells, tr_cells, np.ascontiguousarray(weights, dtype=np.int64), ptr, order, ref)


def _cyclic_problem(fig: WeightedFigure, length: int) -> _Problem:
    offs, weights = _offsets(fig)
    t = offs[:, 0]
    tr = (np.arange(length)[:, None] + t[None, :]) % length
    return _problem(length, tr, weights)


def _grid_problem(fig: WeightedFigure, width: int, height: int) -> _Problem:
    offs, weights = _offsets(fig)
    nx = width - offs[:, 0].max()
    ny = height - offs[:, 1].max()
    if nx <= 0 or ny <= 0:
        raise WindowError(f"no translate of the figure fits in a {width}x{height} window")
    ys, xs = np.divmod(np.arange(nx * ny), nx)
    tr = (ys[:, None] + offs[None, :, 1]) * width + xs[:, None] + offs[None, :, 0]
    return _problem(width * height, tr, weights)


def _enumerate(prob: _Problem, nsym: int, symval: np.ndarray, mode: int, target: int,
               canonical: bool, prefix: np.ndarray, stop: int, budget: int):
    """Run the backtracking kernel, growing the output buffer until nothing is dropped."""
    rows = 256
    while True:
        out = np.zeros((rows, max(stop, 1)), dtype=np.int64)
        nsol, nodes, hit, overflow = kernels.backtrack(
            prob.ncells, nsym, symval, prob.comp_ptr, prob.comp_idx, prob.tr_cells, prob.weights,
            prob.ref, mode, target, canonical, prefix, stop, budget, out)
        if not overflow:
            return out[:nsol, :stop].copy(), int(nodes), bool(hit)
        rows = int(nsol)


Task = Callable[[int], tuple[list, int, bool]]


def _run_ordered(tasks: list[Task], budget: int, threads: int) -> tuple[list, int, bool]:
    """Run subtree tasks and merge them as a single sequential run would.

    Every task first runs with the full budget.  Walking the results in task
    order, the first task that would push the running node total past the
    budget is re-run with exactly the remaining allowance and later tasks are
    dropped.  The merged result therefore does not depend on ``threads``.
    """
    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda task: task(budget), tasks))
    else:
        results = [task(budget) for task in tasks]
    sols: list = []
    nodes = 0
    for task, (s, n, hit) in zip(tasks, results):
        if budget > 0 and (hit or nodes + n > budget):
            remaining = budget - nodes
            if remaining > 0:
                s, n, _ = task(remaining)
                sols.extend(s)
                nodes += n
            return sols, nodes, False
        sols.extend(s)
        nodes += n
    return sols, nodes, True


def search_words_1d(fig: WeightedFigure, alphabet_size: int, max_len: int, *,
                    values: Sequence[int] | None = None, target: int | None = None,
                    budget: int = 0, threads: int = 1) -> SearchResult:
    """All periodic words of period length 1..max_len with a single class.

    A word of length L stands for its infinite periodic extension, so every
    one of its L cyclic translates is checked.  Formal mode (no ``values``)
    compares letter counts and enumerates words up to letter renaming,
    dropping unary words.  With ``values`` the letters are those integers:
    ``target`` asks for weighted sum ``target`` on every translate (all-zero
    words dropped), no ``target`` asks for any common sum (constant words
    dropped).
    """
    if fig.dim != 1:
        raise DimensionError("search_words_1d needs a 1D figure")
    span = fig.max_corner()[0] - fig.min_corner()[0]
    if max_len < max(span, 1):
        raise ValueError(f"max_len must be at least the figure diameter {span}")
    if values is None:
        if alphabet_size < 1:
            raise ValueError("alphabet size must be positive")
        nsym, symval = alphabet_size, np.arange(alphabet_size, dtype=np.int64)
        mode, canonical, tgt = kernels.MODE_FORMAL, True, 0
    else:
        symval = np.array(list(values), dtype=np.int64)
        nsym = len(symval)
        if nsym < 1 or len(set(symval.tolist())) != nsym:
            raise ValueError("values must be distinct and nonempty")
        canonical = False
        mode = kernels.MODE_CONSTANT if target is None else kernels.MODE_TARGET
        tgt = 0 if target is None else int(target)
    params = {"figure": [[list(p), w] for p, w in canonicalize(fig).points],
              "alphabet": nsym, "max_len": max_len, "budget": budget}
    if values is not None:
        params["values"] = symval.tolist()
        params["target"] = target

    def task_for(length: int) -> Task:
        prob = _cyclic_problem(fig, length)

        def run(b: int):
            rows, nodes, hit = _enumerate(prob, nsym, symval, mode, tgt, canonical,
                                          np.zeros(0, dtype=np.int64), length, b)
            words = []
            for r in rows.tolist():
                word = tuple(int(symval[c]) for c in r)
                if values is None or target is None:
                    if len(set(word)) > 1:
                        words.append(word)
                elif any(word):
                    words.append(word)
            return words, nodes, hit
        return run

    t0 = time.perf_counter()
    sols, nodes, exhausted = _run_ordered([task_for(L) for L in range(1, max_len + 1)], budget, threads)
    return SearchResult(params, sols, exhausted,
                        {"nodes": nodes, "wall_time": time.perf_counter() - t0})


def _prefix_depth(ncells: int, width: int, nsym: int) -> int:
    """Cells fixed per subtree task; a function of the query only, never of threads."""
    if nsym <= 1:
        return min(ncells, 1)
    return max(1, min(ncells, width, int(math.log(4096) / math.log(nsym))))


def search_windows_2d(fig: WeightedFigure, alphabet_size: int, width: int, height: int,
                      budget: int = 0, threads: int = 1) -> SearchResult:
    """Every ``width`` x ``height`` window with one abelian class, up to letter renaming.

    Cells are filled in scanning order (row y = 0 first, x increasing); a
    branch dies as soon as a completed translate disagrees with the first
    completed one.  Solutions come out in lexicographic scanning order.
    ``budget`` caps the number of search nodes (0 = unlimited).
    """
    if fig.dim != 2:
        raise DimensionError("search_windows_2d needs a 2D figure")
    if alphabet_size < 1 or width < 1 or height < 1:
        raise ValueError("alphabet and window sizes must be positive")
    prob = _grid_problem(fig, width, height)
    symval = np.arange(alphabet_size, dtype=np.int64)
    depth = _prefix_depth(prob.ncells, width, alphabet_size)
    params = {"figure": [[list(p), w] for p, w in canonicalize(fig).points],
              "alphabet": alphabet_size, "window": [width, height], "budget": budget}
    t0 = time.perf_counter()

    def run(prefix, stop, b):
        return _enumerate(prob, alphabet_size, symval, kernels.MODE_FORMAL, 0, True, prefix, stop, b)

    prefixes, pre_nodes, pre_hit = run(np.zeros(0, dtype=np.int64), depth, budget)
    if pre_hit:
        return SearchResult(params, [], False, {"nodes": pre_nodes, "wall_time": time.perf_counter() - t0})

    def task_for(prefix: np.ndarray) -> Task:
        def task(b: int):
            rows, nodes, hit = run(prefix, prob.ncells, b)
            return [r for r in rows], nodes, hit
        return task

    remaining = budget - pre_nodes if budget > 0 else 0
    if budget > 0 and remaining <= 0:
        return SearchResult(params, [], False, {"nodes": pre_nodes, "wall_time": time.perf_counter() - t0})
    tasks = [task_for(np.ascontiguousarray(p)) for p in prefixes]
    rows, nodes, exhausted = _run_ordered(tasks, remaining, threads)
    alphabet = tuple(range(alphabet_size))
    sols = [ConfigurationWindow((0, 0), r.reshape(height, width), alphabet) for r in rows]
    return SearchResult(params, sols, exhausted,
                        {"nodes": pre_nodes + nodes, "wall_time": time.perf_counter() - t0})
