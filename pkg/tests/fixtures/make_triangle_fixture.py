"""Regenerate triangle_6x6_a2.json: exhaustive 2D search, each solution re-checked by the oracle."""
import json
import pathlib

from abelrigid.geometry import WeightedFigure
from abelrigid.oracle import abelian_pattern_complexity, search_windows_2d

TRIANGLE = WeightedFigure.from_points([(0, 0), (1, 0), (0, 1)])


def main():
    res = search_windows_2d(TRIANGLE, 2, 6, 6)
    assert res.exhausted
    for win in res.solutions:
        assert abelian_pattern_complexity(win, TRIANGLE) == 1
    out = pathlib.Path(__file__).with_name("triangle_6x6_a2.json")
    out.write_text(json.dumps(res.to_json(), separators=(",", ":")) + "\n")
    print(f"{len(res.solutions)} solutions -> {out}")


if __name__ == "__main__":
    main()
