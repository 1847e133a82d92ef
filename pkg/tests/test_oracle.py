import itertools

import numpy as np
import pytest

from abelrigid import kernels
from abelrigid.errors import DimensionError, WindowError
from abelrigid.oracle import (abelian_classes, abelian_combination, abelian_pattern_complexity,
                              constant_sum_check, minimal_period_1d, period_vectors, search_windows_2d,
                              search_words_1d)
from abelrigid.window import ConfigurationWindow, PeriodicSequence
from abelrigid.witness import build_witness_2d

from conftest import SQUARE, TRIANGLE, fig1, fig2


def checkerboard(w, h, origin=(0, 0)):
    return ConfigurationWindow(origin, [[(i + j) % 2 for i in range(w)] for j in range(h)], (0, 1))


def constant(w, h):
    return ConfigurationWindow((0, 0), np.zeros((h, w), dtype=np.int64), (0,))


def test_abelian_combination():
    assert abelian_combination(constant(4, 4), TRIANGLE, (1, 2)).multiplicities == (3,)
    cb = checkerboard(5, 5, origin=(-2, 3))
    for pos in [(-2, 3), (0, 4), (1, 6)]:
        assert abelian_combination(cb, SQUARE, pos).multiplicities == (2, 2)
    with pytest.raises(WindowError):
        abelian_combination(cb, SQUARE, (2, 6))
    witness = build_witness_2d(SQUARE, (1, 0), 1, (8, 8))
    assert abelian_combination(witness, SQUARE, (3, 5)).multiplicities == (2, 2)


def test_complexity():
    assert abelian_pattern_complexity(constant(5, 5), TRIANGLE) == 1
    cb = checkerboard(6, 6)
    assert abelian_pattern_complexity(cb, TRIANGLE) == 2
    assert [c.multiplicities for c in abelian_classes(cb, TRIANGLE)] == [(1, 2), (2, 1)]
    assert abelian_pattern_complexity(cb, SQUARE) == 1
    with pytest.raises(WindowError):
        abelian_pattern_complexity(checkerboard(1, 3), SQUARE)
    with pytest.raises(DimensionError):
        abelian_pattern_complexity(cb, fig1([1, 1]))


def test_weighted_complexity():
    # weights make 1 - x count letters with sign
    win = ConfigurationWindow.from_sequence(0, [0, 0, 1, 1, 0])
    fig = fig1([1, -1])
    assert [c.multiplicities for c in abelian_classes(win, fig)] == [(-1, 1), (0, 0), (1, -1)]


def test_constant_sum_check():
    assert constant_sum_check(PeriodicSequence((1, 0, -1)), fig1([1, 1, 1])).constant == 0
    assert constant_sum_check(PeriodicSequence((1, 1, 0, -1, -1, 0)), fig1([1, -1, 1])).constant == 0
    assert constant_sum_check(PeriodicSequence((1, 0, 0)), fig1([1, 1, 1])).constant == 1
    report = constant_sum_check(PeriodicSequence((1, 0)), fig1([1, 1, 1]))
    assert not report.is_constant
    (_, s1), (_, s2) = report.counterexample
    assert s1 != s2
    with pytest.raises(WindowError):
        constant_sum_check(ConfigurationWindow.from_symbols((0, 0), [["a", "b"]]), fig2([(0, 0)]))


def test_counterexample_positions_are_translates():
    win = ConfigurationWindow.from_symbols((3, -1), [[0, 1, 5], [2, 2, 2]])
    fig = fig2([(10, 10), (11, 10)])
    report = constant_sum_check(win, fig)
    (p1, s1), (p2, s2) = report.counterexample
    for pos, s in [(p1, s1), (p2, s2)]:
        assert sum(w * win.symbol_at((a + pos[0], b + pos[1])) for (a, b), w in fig.points) == s


def test_period_vectors():
    assert period_vectors(constant(6, 6), 1) == [(0, 1), (1, -1), (1, 0), (1, 1)]
    assert period_vectors(checkerboard(6, 6), 2) == [(0, 2), (1, -1), (1, 1), (2, -2), (2, 0), (2, 2)]
    witness = build_witness_2d(SQUARE, (1, 0), 1, (8, 8))
    vecs = period_vectors(witness, 3)
    assert (2, 0) in vecs and all(v[1] == 0 for v in vecs)
    seq = ConfigurationWindow.from_sequence(0, [1, 2, 1, 2, 1])
    assert period_vectors(seq, 3) == [(2,)]


def test_minimal_period():
    assert minimal_period_1d((1, 0, -1, 1, 0, -1)) == 3
    assert minimal_period_1d([7] * 5) == 1
    assert minimal_period_1d((0, 1, 0, 0, 1, 0)) == 3
    assert minimal_period_1d((1, 2)) == 2


def test_search_words_1d():
    res = search_words_1d(fig1([1, -1, 1]), 3, 4)
    assert res.solutions == [] and res.exhausted
    res = search_words_1d(fig1([1, 1]), 2, 6)
    assert res.solutions == [(0, 1), (0, 1, 0, 1), (0, 1, 0, 1, 0, 1)]
    res = search_words_1d(fig1([1, 1, 1]), 2, 6)
    assert all(len(w) % 3 == 0 and minimal_period_1d(w * 2) == 3 for w in res.solutions)
    assert {w for w in res.solutions if len(w) == 3} == {(0, 0, 1), (0, 1, 0), (0, 1, 1)}
    with pytest.raises(ValueError):
        search_words_1d(fig1([1, 0, 0, 1]), 2, 2)


def test_search_words_numeric():
    res = search_words_1d(fig1([1, 1, 1]), 0, 3, values=range(-1, 2), target=0)
    assert set(res.solutions) == {w for w in itertools.product(range(-1, 2), repeat=3)
                                  if sum(w) == 0 and any(w)}
    res = search_words_1d(fig1([1, 1]), 0, 2, values=[3, 5])
    assert res.solutions == [(3, 5), (5, 3)]


def test_search_budget():
    res = search_words_1d(fig1([1, 1, 1]), 3, 6, budget=50)
    assert not res.exhausted and res.stats["nodes"] == 50


def _naive_2d(fig, k, w, h):
    out = []
    for cells in itertools.product(range(k), repeat=w * h):
        seen = []
        for c in cells:
            if c not in seen:
                seen.append(c)
        if seen != list(range(len(seen))):
            continue
        win = ConfigurationWindow((0, 0), np.array(cells).reshape(h, w), tuple(range(k)))
        if abelian_pattern_complexity(win, fig) == 1:
            out.append(cells)
    return out


@pytest.mark.parametrize("fig,k,w,h", [(SQUARE, 2, 3, 3), (TRIANGLE, 2, 4, 3), (TRIANGLE, 3, 3, 3),
                                       (fig2([(0, 0), (2, 0), (1, 1)]), 2, 4, 3),
                                       (fig2([(0, 0), (1, 0)], [1, -1]), 3, 3, 2)])
def test_search_2d_matches_naive(fig, k, w, h):
    res = search_windows_2d(fig, k, w, h)
    assert res.exhausted
    assert [tuple(s.cells.reshape(-1).tolist()) for s in res.solutions] == _naive_2d(fig, k, w, h)


def test_search_2d_unary():
    res = search_windows_2d(TRIANGLE, 1, 4, 4)
    assert len(res.solutions) == 1 and res.exhausted


def test_search_2d_thread_independent():
    base = search_windows_2d(TRIANGLE, 2, 5, 5, budget=400)
    for t in (2, 4):
        other = search_windows_2d(TRIANGLE, 2, 5, 5, budget=400, threads=t)
        assert other.to_json() == base.to_json()
    assert not base.exhausted and base.stats["nodes"] == 400


def test_search_2d_fallback_backend(monkeypatch):
    expect = search_windows_2d(SQUARE, 2, 4, 3).to_json()
    monkeypatch.setattr(kernels, "JIT_DISABLED", True)
    assert search_windows_2d(SQUARE, 2, 4, 3).to_json() == expect
