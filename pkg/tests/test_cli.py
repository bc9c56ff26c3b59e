import json

import pytest

from hstarlab.cli import build_from_spec, main
from hstarlab.errors import InvalidSpecError


@pytest.fixture
def triangle(tmp_path):
    p = tmp_path / "tri.txt"
    p.write_text("0 0\n3 0\n0 3\n")
    return p


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hstar_triangle(capsys, triangle):
    code, out, _ = run(capsys, "hstar", str(triangle))
    assert code == 0
    assert out == "h* = 1 + 7t + t^2, vol 9, degree 2, not pyramid\n"


def test_hstar_json(capsys, triangle):
    code, out, _ = run(capsys, "hstar", str(triangle), "--format", "json")
    data = json.loads(out)
    assert data["hstar"] == [1, 7, 1] and data["vol"] == 9
    assert data["routes"] == ["counting", "group"]


def test_hstar_segment(capsys, tmp_path):
    p = tmp_path / "seg.txt"
    p.write_text("0\n1\n")
    code, out, _ = run(capsys, "hstar", str(p))
    assert code == 0 and out.startswith("h* = 1,")


def test_hstar_random_is_deterministic(capsys):
    _, a, _ = run(capsys, "hstar", "--random", "3", "--seed", "4")
    _, b, _ = run(capsys, "hstar", "--random", "3", "--seed", "4")
    assert a == b


def test_hstar_mismatch_is_hard_error(capsys, triangle, monkeypatch):
    import hstarlab.cli as cli
    monkeypatch.setattr(cli, "hstar_by_counting", lambda S: (1, 6, 2))
    code, out, err = run(capsys, "hstar", str(triangle))
    assert code == 2
    assert out == ""
    assert "disagree" in err and "[1, 6, 2]" in err


def test_build_then_hstar(capsys, tmp_path):
    out_dir = tmp_path / "c"
    code, out, _ = run(capsys, "build", "c:2:2:2", "--out", str(out_dir))
    assert code == 0 and out.startswith("k=2 m=9 d=5")
    assert (out_dir / "group.txt").read_text() == "6 3\n1 2 0 1 2 0\n1 1 1 1 1 1\n"
    code, out, _ = run(capsys, "hstar", str(out_dir / "simplex.txt"))
    assert out.startswith("h* = 1 + 7t^2 + t^4, vol 9, degree 4, not pyramid")
    code, out, _ = run(capsys, "hstar", "--group", str(out_dir / "group.txt"))
    assert out.startswith("h* = 1 + 7t^2 + t^4")


def test_build_json_roundtrip(capsys, tmp_path):
    run(capsys, "build", "a6:2", "--out", str(tmp_path), "--format", "json")
    code, out, _ = run(capsys, "hstar", str(tmp_path / "group.json"), "--format", "json")
    assert json.loads(out)["hstar"] == [1, 0, 4, 0, 1]
    code, out, _ = run(capsys, "hstar", str(tmp_path / "simplex.json"), "--format", "json")
    assert json.loads(out)["hstar"] == [1, 0, 4, 0, 1]


def test_build_stdout(capsys):
    code, out, err = run(capsys, "build", "b:2:2:3")
    assert out == "8 2\n1 0 1 0 1 0 1 0\n0 1 1 0 0 1 1 0\n1 1 1 1 1 1 1 1\n"
    assert "m=8 d=7" in err
    _, out, _ = run(capsys, "build", "white:2:5:1,2")
    assert out == "4 5\n1 4 2 3\n"
    _, out, _ = run(capsys, "build", "a6:2")
    assert out == "6 6\n1 1 2 2 3 3\n"


def test_build_specs():
    G, info = build_from_spec("binomial:2:3:2")
    assert info == {"k": 2, "m": 8, "d": 6}
    for bad in ["white:2:5", "white:2:5:1,x", "binomial:2:3", "q:2", "b:2:1:3"]:
        with pytest.raises(InvalidSpecError):
            build_from_spec(bad)


def test_build_canonical(capsys):
    code, out, _ = run(capsys, "build", "white:2:5:1,2", "--canonical")
    assert code == 0 and out.startswith("4 5\n")


def test_feasible(capsys):
    assert run(capsys, "feasible", "scott", "7", "1")[1] == 'yes ("b=1 and a=7")\n'
    assert run(capsys, "feasible", "gorenstein2", "4", "5")[1] == 'yes ("d=5 and m=4")\n'
    assert run(capsys, "feasible", "trinomial", "2", "6", "5")[1].startswith("yes")
    assert run(capsys, "feasible", "scott", "8", "1")[1] == "no\n"
    out = run(capsys, "feasible", "trinomial", "2", "9", "5", "--format", "json")[1]
    data = json.loads(out)
    assert data["feasible"] and "missing" in data["note"]
    assert run(capsys, "feasible", "scott", "7")[0] == 1


def test_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--k", "2", "--d", "5", "--max-order", "9",
                       "--max-rank", "2")
    assert code == 0 and "m-set [3, 4, 6, 8, 9]" in out
    code, out, _ = run(capsys, "verify", "--k", "2", "--d", "4")
    assert code == 0 and "m-set []" in out
    report = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "verify", "--k", "2", "--d", "5", "--format", "json",
                       "--out", str(report))
    lines = [json.loads(x) for x in report.read_text().splitlines()]
    assert sorted(x["m"] for x in lines) == [3, 4, 6, 8, 9]
    assert all(x["case"] != "UNEXPECTED" for x in lines)


def test_verify_budget(capsys):
    code, _, err = run(capsys, "verify", "--k", "2", "--d", "7", "--elementary", "2",
                       "--budget", "100")
    assert code == 3 and "progress" in err


def test_conjecture(capsys):
    code, out, _ = run(capsys, "conjecture", "--max-n", "4", "--max-order", "8")
    assert code == 0 and "counterexample: none" in out


def test_usage_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1
    assert run(capsys, "hstar", str(tmp_path / "missing.txt"))[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n1 x\n")
    assert run(capsys, "hstar", str(bad))[0] == 1
    assert run(capsys, "verify", "--k", "3", "--d", "4")[0] == 1
    assert run(capsys, "verify", "--k", "2", "--d", "5", "--elementary", "4")[0] == 1
