"""Hot loops of the oracle: window combinations, period scans and backtracking.

Each kernel exists twice: a numba ``@njit`` build and a pure numpy/Python
path.  The JIT path is used unless ``ABELRIGID_DISABLE_JIT=1`` is set or
numba cannot be imported.  Both paths return identical results; the test
suite runs them side by side and ``benchmarks/bench_kernels.py`` times them.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

JIT_DISABLED = os.environ.get("ABELRIGID_DISABLE_JIT", "").lower() in ("1", "true", "yes")
HAVE_NUMBA = numba is not None


def _jit(fn):
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# weighted letter counts of every fully contained translate

def combination_counts_py(cells, offsets, weights, nsym):
    """Array ``(ny, nx, nsym)``: weighted letter counts of the translate anchored at each cell.

    ``offsets`` are nonnegative ``(dx, dy)`` pairs; the translate anchored at
    window cell ``(x, y)`` covers ``cells[y + dy, x + dx]``.
    """
    h, w = cells.shape
    maxdx = offsets[:, 0].max()
    maxdy = offsets[:, 1].max()
    nx, ny = w - maxdx, h - maxdy
    out = np.zeros((max(ny, 0), max(nx, 0), nsym), dtype=np.int64)
    if nx <= 0 or ny <= 0:
        return out
    for (dx, dy), g in zip(offsets, weights):
        block = cells[dy:dy + ny, dx:dx + nx]
        for s in range(nsym):
            out[:, :, s] += g * (block == s)
    return out


def _combination_counts_loop(cells, offsets, weights, nsym):
    h, w = cells.shape
    maxdx = 0
    maxdy = 0
    for j in range(offsets.shape[0]):
        maxdx = max(maxdx, offsets[j, 0])
        maxdy = max(maxdy, offsets[j, 1])
    nx = max(w - maxdx, 0)
    ny = max(h - maxdy, 0)
    out = np.zeros((ny, nx, nsym), dtype=np.int64)
    for y in range(ny):
        for x in range(nx):
            for j in range(offsets.shape[0]):
                s = cells[y + offsets[j, 1], x + offsets[j, 0]]
                out[y, x, s] += weights[j]
    return out


combination_counts_jit = _jit(_combination_counts_loop)


def weighted_sums_py(values, offsets, weights):
    """Array ``(ny, nx)``: weighted sum of ``values`` over each contained translate."""
    h, w = values.shape
    nx = w - offsets[:, 0].max()
    ny = h - offsets[:, 1].max()
    out = np.zeros((max(ny, 0), max(nx, 0)), dtype=np.int64)
    if nx <= 0 or ny <= 0:
        return out
    for (dx, dy), g in zip(offsets, weights):
        out += g * values[dy:dy + ny, dx:dx + nx]
    return out


def _weighted_sums_loop(values, offsets, weights):
    h, w = values.shape
    maxdx = 0
    maxdy = 0
    for j in range(offsets.shape[0]):
        maxdx = max(maxdx, offsets[j, 0])
        maxdy = max(maxdy, offsets[j, 1])
    nx = max(w - maxdx, 0)
    ny = max(h - maxdy, 0)
    out = np.zeros((ny, nx), dtype=np.int64)
    for y in range(ny):
        for x in range(nx):
            acc = 0
            for j in range(offsets.shape[0]):
                acc += weights[j] * values[y + offsets[j, 1], x + offsets[j, 0]]
            out[y, x] = acc
    return out


weighted_sums_jit = _jit(_weighted_sums_loop)


# ---------------------------------------------------------------------------
# period scan

def period_mask_py(cells, vectors):
    """For each vector p: True iff cells agree at x and x + p wherever both exist.

    Vectors with no overlapping pair are reported False (no evidence).
    """
    h, w = cells.shape
    out = np.zeros(len(vectors), dtype=np.bool_)
    for i, (px, py) in enumerate(vectors):
        if abs(px) >= w or abs(py) >= h:
            continue
        a = cells[max(0, -py):h - max(0, py), max(0, -px):w - max(0, px)]
        b = cells[max(0, py):h - max(0, -py), max(0, px):w - max(0, -px)]
        out[i] = bool(np.array_equal(a, b))
    return out


def _period_mask_loop(cells, vectors):
    h, w = cells.shape
    out = np.zeros(vectors.shape[0], dtype=np.bool_)
    for i in range(vectors.shape[0]):
        px = vectors[i, 0]
        py = vectors[i, 1]
        if abs(px) >= w or abs(py) >= h:
            continue
        ok = True
        for y in range(max(0, -py), h - max(0, py)):
            for x in range(max(0, -px), w - max(0, px)):
                if cells[y, x] != cells[y + py, x + px]:
                    ok = False
                    break
            if not ok:
                break
        out[i] = ok
    return out


period_mask_jit = _jit(_period_mask_loop)


# ---------------------------------------------------------------------------
# backtracking over cells in a fixed order

MODE_FORMAL = 0     # every translate has the reference translate's letter counts
MODE_TARGET = 1     # every translate has weighted value sum == target
MODE_CONSTANT = 2   # every translate has the reference translate's value sum


def _backtrack_loop(ncells, nsym, symval, comp_ptr, comp_idx, tr_cells, weights,
                    ref, mode, target, canonical, prefix, stop, budget, out):
    """Depth-first enumeration; returns (nsol, nodes, hit_budget, overflow).

    Cells ``0..len(prefix)-1`` are fixed to ``prefix`` (assumed consistent).
    Each assignment reaching depth ``stop`` is written to ``out`` (first
    ``stop`` cells).  A node is one tentative assignment of a value to a
    cell.  ``comp_idx[comp_ptr[d]:comp_ptr[d + 1]]`` lists the translates
    whose last cell is ``d``; they are checked as soon as ``d`` is set.
    """
    m = tr_cells.shape[1]
    assign = np.zeros(ncells, dtype=np.int64)
    maxused = np.full(ncells + 1, -1, dtype=np.int64)
    nextval = np.zeros(ncells + 1, dtype=np.int64)
    buf = np.zeros(nsym, dtype=np.int64)
    start = prefix.shape[0]
    for i in range(start):
        assign[i] = prefix[i]
        maxused[i + 1] = max(maxused[i], prefix[i])
    nsol = 0
    nodes = 0
    hit_budget = False
    overflow = False
    if start >= stop:
        for i in range(stop):
            out[0, i] = assign[i]
        return 1, nodes, hit_budget, overflow
    d = start
    nextval[d] = 0
    while d >= start:
        v = nextval[d]
        limit = nsym
        if canonical and maxused[d] + 2 < limit:
            limit = maxused[d] + 2
        if v >= limit:
            d -= 1
            continue
        nextval[d] = v + 1
        if budget > 0 and nodes >= budget:
            hit_budget = True
            break
        nodes += 1
        assign[d] = v
        ok = True
        for q in range(comp_ptr[d], comp_ptr[d + 1]):
            t = comp_idx[q]
            if mode == MODE_TARGET:
                acc = 0
                for j in range(m):
                    acc += weights[j] * symval[assign[tr_cells[t, j]]]
                ok = acc == target
            elif t == ref:
                ok = True
            elif mode == MODE_CONSTANT:
                acc = 0
                for j in range(m):
                    acc += weights[j] * (symval[assign[tr_cells[t, j]]]
                                         - symval[assign[tr_cells[ref, j]]])
                ok = acc == 0
            else:
                for s in range(nsym):
                    buf[s] = 0
                for j in range(m):
                    buf[assign[tr_cells[t, j]]] += weights[j]
                    buf[assign[tr_cells[ref, j]]] -= weights[j]
                for s in range(nsym):
                    if buf[s] != 0:
                        ok = False
                        break
            if not ok:
                break
        if not ok:
            continue
        maxused[d + 1] = max(maxused[d], v)
        if d + 1 == stop:
            if nsol < out.shape[0]:
                for i in range(stop):
                    out[nsol, i] = assign[i]
            else:
                overflow = True
            nsol += 1
            continue
        d += 1
        nextval[d] = 0
    return nsol, nodes, hit_budget, overflow


backtrack_py = _backtrack_loop
backtrack_jit = _jit(_backtrack_loop)


def use_jit() -> bool:
    return HAVE_NUMBA and not JIT_DISABLED


def combination_counts(cells, offsets, weights, nsym):
    cells = np.ascontiguousarray(cells, dtype=np.int64)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.int64)
    if use_jit():
        return combination_counts_jit(cells, offsets, weights, nsym)
    return combination_counts_py(cells, offsets, weights, nsym)


def weighted_sums(values, offsets, weights):
    values = np.ascontiguousarray(values, dtype=np.int64)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    weights = np.ascontiguousarray(weights, dtype=np.int64)
    if use_jit():
        return weighted_sums_jit(values, offsets, weights)
    return weighted_sums_py(values, offsets, weights)


def period_mask(cells, vectors):
    cells = np.ascontiguousarray(cells, dtype=np.int64)
    vectors = np.ascontiguousarray(vectors, dtype=np.int64).reshape(-1, 2)
    if use_jit():
        return period_mask_jit(cells, vectors)
    return period_mask_py(cells, vectors)


def backtrack(*args):
    if use_jit():
        return backtrack_jit(*args)
    return backtrack_py(*args)
