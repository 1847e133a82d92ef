import numpy as np
import pytest

from abelrigid.errors import FormatError, WindowError
from abelrigid.window import (ConfigurationWindow, PeriodicSequence, parse_sequence, parse_window,
                              parse_window_or_sequence)


def test_window_roundtrip():
    win = ConfigurationWindow.from_symbols((-2, 5), [[0, 1, 2], [2, 2, 0]])
    text = win.to_text()
    assert text.splitlines()[0] == "window -2 5 3 2 alphabet=0,1,2"
    assert text.splitlines()[1] == "2 2 0"  # top row is the largest y
    assert parse_window(text) == win
    assert win.symbol_at((-1, 6)) == 2 and win.symbol_at((-1, 5)) == 1


def test_symbolic_alphabet():
    win = parse_window("window 0 0 2 1 alphabet=a,b,c\nb a\n")
    assert win.alphabet == ("a", "b", "c") and win.cells.tolist() == [[1, 0]]
    assert not win.has_integer_alphabet
    with pytest.raises(WindowError):
        win.values()


@pytest.mark.parametrize("text", [
    "", "window 0 0 2 2\n0 0\n0 0\n", "window 0 0 2 2 alphabet=0,1\n0 0\n",
    "window 0 0 2 1 alphabet=0,1\n0 2\n", "window 0 0 2 1 alphabet=0,1\n0\n", "win 0 0 1 1 alphabet=0\n0\n",
    "window 0 0 0 1 alphabet=0\n\n"])
def test_window_rejects(text):
    with pytest.raises(FormatError):
        parse_window(text)


def test_window_validation():
    with pytest.raises(WindowError):
        ConfigurationWindow((0, 0), np.array([[0, 3]]), (0, 1))
    with pytest.raises(WindowError):
        ConfigurationWindow((0, 0), np.zeros((2, 2), dtype=int), (0,), dim=1)
    win = ConfigurationWindow((0, 0), np.zeros((2, 2), dtype=int), (0,))
    with pytest.raises(WindowError):
        win.index_at((2, 0))


def test_sequence_format():
    seq = PeriodicSequence((1, 0, -1))
    assert seq.to_text() == "period 3\n1 0 -1\n"
    assert parse_sequence(seq.to_text()) == seq
    assert seq[-1] == -1 and seq[7] == 0
    assert isinstance(parse_window_or_sequence("# c\nperiod 2\n1 -1\n"), PeriodicSequence)
    with pytest.raises(FormatError):
        parse_sequence("period 3\n1 2\n")
