import json

import pytest

from abelrigid.cli import main


@pytest.fixture
def files(tmp_path):
    paths = {}
    data = {
        "R.fig": "1 1 10\n1 2 2\n1 4 -3\n2 1 1\n2 3 1\n3 2 4\n",
        "tri.fig": "0 0\n1 0\n0 1\n",
        "square.fig": "0 0\n1 0\n0 1\n1 1\n",
        "phi6.fig": "0 1\n1 -1\n2 1\n",
        "phi3.fig": "dim 1\n0\n1\n2\n",
        "gap.fig": "0 0\n2 0\n",
        "bad.fig": "0 0\n0 0\n",
    }
    for name, text in data.items():
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_poly(files, capsys):
    code, out, _ = run(capsys, "poly", files["tri.fig"])
    assert code == 0 and out == "1 + y + x\n"
    code, out, _ = run(capsys, "poly", files["R.fig"], "--format", "json")
    assert json.loads(out)["polynomial"] == "10 + 2*y - 3*y^3 + x + x*y^2 + 4*x^2*y"


def test_canon_and_convex(files, capsys):
    code, out, _ = run(capsys, "canon", files["R.fig"])
    assert out.splitlines()[0] == "0 0 10"
    assert run(capsys, "convex-check", files["tri.fig"])[1] == "true\n"
    assert run(capsys, "convex-check", files["gap.fig"])[1] == "false\n"


def test_uv_rep(files, capsys):
    code, out, _ = run(capsys, "uv-rep", files["tri.fig"], "--u", "1,0", "--v", "0,1")
    assert code == 0 and out == "n=1 lows=0,0 highs=2,1\n"
    code, _, err = run(capsys, "uv-rep", files["gap.fig"], "--u", "0,1", "--v", "1,0")
    assert code == 3 and err


def test_rigidity(files, capsys):
    code, out, _ = run(capsys, "rigidity", files["tri.fig"], "--format", "json")
    assert code == 0 and out.startswith('{"status":"Rigid",')
    code, out, _ = run(capsys, "rigidity", files["square.fig"])
    assert out.splitlines()[0] == "NotRigid"


def test_route_disagreement_exits_4(files, capsys, monkeypatch):
    from abelrigid import rigidity
    monkeypatch.setattr(rigidity, "find_strongly_linear_divisors", lambda p, multiples=False: [])
    code, _, err = run(capsys, "rigidity", files["square.fig"])
    assert code == 4 and "disagree" in err


def test_cyclotomic(files, capsys):
    code, out, _ = run(capsys, "cyclotomic", files["phi6.fig"], "--format", "json")
    assert json.loads(out)["divisors"] == [6]
    code, out, _ = run(capsys, "cyclotomic", files["phi6.fig"], "--max-n", "5")
    assert out.startswith("divisors: none")


def test_witness_1d_and_verify(files, capsys):
    out_path = str(files["dir"] / "w.seq")
    code, _, _ = run(capsys, "witness-1d", files["phi6.fig"], "--n", "6", "-o", out_path)
    assert code == 0
    code, out, _ = run(capsys, "verify", "--figure", files["phi6.fig"], "--window-file", out_path,
                       "--format", "json")
    assert json.loads(out)["constant_sum"]["constant"] == 0
    code, _, err = run(capsys, "witness-1d", files["phi6.fig"], "--n", "3")
    assert code == 3 and "Phi_3" in err


def test_witness_2d_verify_periods(files, capsys):
    win_path = str(files["dir"] / "sq.win")
    code, _, _ = run(capsys, "witness-2d", files["square.fig"], "--v", "1,0", "--n", "1", "--window", "12x12",
                     "-o", win_path)
    assert code == 0
    code, out, _ = run(capsys, "verify", "--figure", files["square.fig"], "--window-file", win_path)
    assert out.splitlines()[0] == "abelian pattern complexity: 1"
    code, out, _ = run(capsys, "periods", win_path, "--bound", "4", "--format", "json")
    assert json.loads(out)["periods"] == [[2, 0], [4, 0]]
    code, _, err = run(capsys, "witness-2d", files["tri.fig"], "--v", "1,0", "--n", "1", "--window", "8x8")
    assert code == 3


def test_searches(files, capsys):
    code, out, _ = run(capsys, "search-1d", files["phi6.fig"], "--alphabet", "3", "--max-len", "4",
                       "--format", "json")
    data = json.loads(out)
    assert data["solutions"] == [] and data["exhausted"] is True
    code, out, _ = run(capsys, "search-1d", files["phi3.fig"], "--values=-1..1", "--target", "0",
                       "--max-len", "3")
    assert out.startswith("solutions: 6")
    code, out, _ = run(capsys, "search-2d", files["tri.fig"], "--alphabet", "2", "--window", "4x4",
                       "--format", "json")
    assert json.loads(out)["exhausted"] is True
    code, _, err = run(capsys, "search-1d", files["phi6.fig"], "--max-len", "4")
    assert code == 2


def test_bound_n(files, capsys):
    code, out, _ = run(capsys, "bound-n", files["tri.fig"], "--alphabet", "2", "--delta-cap", "2",
                       "--format", "json")
    assert abs(json.loads(out)["N"] - 14 * 2 ** 0.5) < 1e-9
    code, _, _ = run(capsys, "bound-n", files["gap.fig"], "--alphabet", "2")
    assert code == 3


@pytest.mark.parametrize("argv", [[], ["nope"], ["poly"], ["poly", "x.fig", "--bogus"],
                                  ["search-2d", "f", "--alphabet", "2", "--window", "4by4"],
                                  ["poly", "f", "--threads", "0"]])
def test_usage_errors(argv, capsys):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_malformed_input(files, capsys):
    code, out, err = run(capsys, "poly", files["bad.fig"])
    assert code == 3 and out == "" and "duplicate" in err
    code, _, _ = run(capsys, "poly", str(files["dir"] / "missing.fig"))
    assert code == 3


def test_json_stable_across_threads(files, capsys):
    outs = {run(capsys, "search-2d", files["tri.fig"], "--alphabet", "2", "--window", "5x5", "--budget", "300",
                "--format", "json", "--threads", str(t))[1] for t in (1, 2, 8)}
    assert len(outs) == 1
