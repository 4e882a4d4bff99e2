import csv
import io
import json

import numpy as np
import pytest

from stardisc import cli
from stardisc.core import PointSet
from stardisc.errors import InputError
from stardisc.io import dumps_pointset, loads_brackets, loads_pointset, read_pointset, write_pointset


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def run_json(argv):
    code, text = run(argv + ["--format", "json"])
    return code, json.loads(text) if text else None


def test_pointset_round_trip(tmp_path, rng):
    P = PointSet(rng.random((17, 3)))
    path = tmp_path / "p.txt"
    write_pointset(P, path, comment="hello\nworld")
    Q = read_pointset(path)
    assert Q.points.tobytes() == P.points.tobytes()
    text = path.read_text(encoding="utf-8")
    assert text.startswith("# hello\n# world\n3 17\n")


def test_pointset_parsing_errors():
    with pytest.raises(InputError):
        loads_pointset("")
    with pytest.raises(InputError):
        loads_pointset("2 2\n0.1 0.2\n")
    with pytest.raises(InputError):
        loads_pointset("2 1\n0.1\n")
    with pytest.raises(InputError):
        loads_pointset("2 1\n0.1 abc\n")
    with pytest.raises(InputError):
        loads_pointset("2 1\n0.1 1.5\n")
    with pytest.raises(InputError):
        loads_pointset("2  1\n0.1 0.5\n")
    assert loads_pointset("# c\n1 2\n# mid\n0.25\n1\n").n == 2


def test_seventeen_digits():
    P = PointSet([[0.1, 1 / 3]])
    line = dumps_pointset(P).splitlines()[1]
    assert line == "0.10000000000000001 0.33333333333333331"


def test_bound_cli():
    code, d = run_json(["bound", "--q", "0.9", "--s", "10", "--n", "1000"])
    assert code == 0
    assert d["schema"] == "stardisc/1"
    assert d["bound"] == pytest.approx(1.292, abs=1e-3)
    assert d["coefficient"] == pytest.approx(5.7 * np.sqrt(4.9 + np.log(10) / 10), rel=1e-12)
    code, d = run_json(["bound", "--q", "0.9", "--s", "1", "--n", "1"])
    assert round(d["coefficient"], 2) == 15.30
    assert d["regime"] == "trivial"
    code, d = run_json(["bound", "--q", "0.9", "--s", "10", "--n", "5", "--uniform"])
    assert d["form"] == "corollary"
    assert d["coefficient"] == pytest.approx(5.7 * np.sqrt(4.9 + np.log(10)))


def test_bound_cli_rejects_q(capsys):
    code, _ = run(["bound", "--q", "1.0", "--s", "1", "--n", "1"])
    assert code == 2
    assert "open interval" in capsys.readouterr().err


def test_table_cli_default():
    code, d = run_json(["table"])
    assert code == 0
    assert d["display"][1] == [12.62, 12.63, 12.65, 12.68, 12.71]
    assert len(d["display"]) == 2 and len(d["display"][0]) == 5
    code, d = run_json(["table", "--q-list", "0.9", "--s-list", "3"])
    assert len(d["coefficients"]) == 1 and len(d["coefficients"][0]) == 1


def test_table_csv_round_trip():
    code, text = run(["table", "--format", "csv"])
    _, d = run_json(["table"])
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 10
    for row in rows:
        i = d["s"].index(int(row["s"]))
        j = d["q"].index(float(row["q"]))
        assert float(row["coefficient"]) == d["coefficients"][i][j]


def test_table_text_runs():
    code, text = run(["table"])
    assert code == 0 and "c(q,100)" in text


def test_inverse_cli():
    code, d = run_json(["inverse", "--s", "15", "--eps", "0.25"])
    assert code == 0 and d["existence_N"] == 24000 and "theorem_N" not in d
    code, d = run_json(["inverse", "--s", "1", "--eps", "1", "--q", "1e-12"])
    assert d["theorem_N"] == 160


def _centered_file(tmp_path, n):
    path = tmp_path / f"centered{n}.txt"
    write_pointset(PointSet([[(2 * i - 1) / (2 * n)] for i in range(1, n + 1)]), path)
    return path


def test_disc_cli(tmp_path):
    path = _centered_file(tmp_path, 10)
    code, d = run_json(["disc", "--input", str(path)])
    assert code == 0 and d["value"] == pytest.approx(0.05, abs=1e-15)
    code, d = run_json(["disc", "--input", str(path), "--method", "cover", "--delta", "0.01"])
    assert code == 0 and d["value"] - 1e-12 <= 0.05 <= d["value"] + 0.01
    code, _ = run(["disc", "--input", str(tmp_path / "missing.txt")])
    assert code == 2
    code, _ = run(["disc", "--input", str(path), "--method", "cover"])
    assert code == 2


def test_disc_budget_refusal(tmp_path, monkeypatch):
    path = tmp_path / "p.txt"
    write_pointset(PointSet(np.full((40, 3), 0.5)), path)
    code, _ = run(["disc", "--input", str(path), "--budget", "1000"])
    assert code == 3
    monkeypatch.setenv("STARDISC_BUDGET", "1000")
    code, _ = run(["disc", "--input", str(path)])
    assert code == 3


def test_cover_cli(tmp_path):
    code, text = run(["cover", "--s", "2", "--delta", "0.5"])
    assert code == 0
    P = loads_pointset(text)
    assert P.n == 16 and P.dim == 2
    out = tmp_path / "b.txt"
    code, _ = run(["cover", "--s", "1", "--delta", "0.5", "--bracket", "--output", str(out)])
    lower, upper = loads_brackets(out.read_text())
    assert lower.ravel().tolist() == [0.0, 0.5] and upper.ravel().tolist() == [0.5, 1.0]
    code, _ = run(["cover", "--s", "6", "--delta", "0.01", "--budget", "100"])
    assert code == 3


def test_chain_cli():
    code, d = run_json(["chain", "--s", "2", "--k", "3", "--x", "0.37,0.81"])
    assert code == 0
    assert len(d["chain"]) == 5
    assert all(m <= b + 1e-12 for m, b in zip(d["measures"], d["measure_bounds"]))
    code, _ = run(["chain", "--s", "3", "--k", "3", "--x", "0.37,0.81"])
    assert code == 2
    code, _ = run(["chain", "--s", "1", "--k", "2", "--x", "1.5"])
    assert code == 2


def test_audit_cli(capsys):
    code, d = run_json(["audit", "--q", "0.9", "--s", "10", "--n", "1000000"])
    assert code == 0 and d["overall"] is True
    code, _ = run(["audit", "--q", "0.9", "--s", "10", "--n", "100"])
    assert code == 3
    err = capsys.readouterr().err
    assert "trivial regime" in err and "393.68" in err


def test_generate_then_disc(tmp_path):
    out = tmp_path / "g.txt"
    code, _ = run(["generate", "--s", "2", "--n", "30", "--seed", "4", "--output", str(out)])
    assert code == 0
    from stardisc.montecarlo import generate_uniform

    assert read_pointset(out).points.tobytes() == generate_uniform(2, 30, 4).points.tobytes()
    code, d = run_json(["disc", "--input", str(out)])
    assert code == 0 and 0 < d["value"] < 1


def test_verify_cli(tmp_path):
    csv_path = tmp_path / "trials.csv"
    code, d = run_json(["verify", "--s", "2", "--n", "128", "--q", "0.5", "--trials", "200",
                        "--seed", "7", "--csv", str(csv_path)])
    assert code == 0
    assert d["empirical_probability"] == 1.0
    rows = list(csv.DictReader(csv_path.open()))
    assert len(rows) == 200 and rows[0].keys() == {"trial_index", "D", "upper", "pass"}


def test_verify_cli_refusal():
    code, _ = run(["verify", "--s", "2", "--n", "4096", "--q", "0.9", "--trials", "1", "--seed", "1"])
    assert code == 3


@pytest.mark.parametrize("argv", [
    [],
    ["nonsense"],
    ["bound", "--q", "0.5", "--s", "0", "--n", "1"],
    ["verify", "--s", "2", "--n", "10", "--q", "0.5", "--trials", "1", "--seed", "1",
     "--method", "cover"],
    ["cover", "--s", "1", "--delta", "0"],
    ["table", "--q-list", "0.5,x"],
])
def test_usage_errors(argv):
    code, _ = run(argv)
    assert code == 2


def test_internal_error_code(monkeypatch):
    def boom(*a, **k):
        raise ZeroDivisionError("x")

    monkeypatch.setattr(cli.bounds, "theorem_bound", boom)
    code, _ = run(["bound", "--q", "0.5", "--s", "1", "--n", "1"])
    assert code == 1
