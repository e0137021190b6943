import json

import pytest

from zamolod.catalog import FamilySpec, build, fixtures
from zamolod.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tropical_table(capsys):
    code, out, _ = run(capsys, "tropical", "--family", "B3bowtie1G2", "--lambda", "e5", "--steps", "14", "--format", "table")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 15
    assert lines[9].split() == ["8", "3", "4"]


def test_tropical_is_byte_stable(capsys):
    args = ("tropical", "--family", "A2xA3-tensor", "--lambda", "2,0,-9/10,1,-1,4", "--steps", "8", "--json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    obj = json.loads(a)
    assert obj["states"][2]["values"]["3"] == "49/10"


def test_period(capsys):
    code, out, _ = run(capsys, "period", "--family", "A2xA3-tensor", "--mode", "exact")
    assert code == 0 and out.strip() == "7"
    code, out, _ = run(capsys, "period", "--family", "A2xA3-tensor", "--mode", "tropical", "--lambda", "1,2,3,4,5,6", "--json")
    assert json.loads(out)["period"] in (1, 7)


def test_check_bad_figure_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(fixtures()["fig:admissible-left"].bg.to_json()))
    code, out, _ = run(capsys, "check", "--in", str(path), "--json")
    assert code == 2
    rep = json.loads(out)
    assert rep["admissible"] is False
    assert rep["witness"] == [2, 7]


def test_check_good(capsys):
    code, out, _ = run(capsys, "check", "--family", "BltD", "--n", "3")
    assert code == 0 and "admissible: True" in out


def test_catalog_build_and_flip(capsys, tmp_path):
    out_path = tmp_path / "bg.json"
    assert main(["catalog", "build", "--family", "BltD", "--n", "3", "--out", str(out_path)]) == 0
    code, out, _ = run(capsys, "flip", "--in", str(out_path))
    assert code == 0
    flipped = json.loads(out)
    assert flipped["gamma"] == [list(r) for r in zip(*build(FamilySpec("BltD", 3)).gamma)]


def test_fold_and_violation(capsys, tmp_path):
    path = tmp_path / "a3.json"
    path.write_text(json.dumps({"n": 3, "b": [[0, 1, 0], [-1, 0, -1], [0, 1, 0]], "eps": ["w", "b", "w"]}))
    code, out, _ = run(capsys, "fold", "--in", str(path), "--perm", "3 2 1")
    assert code == 0
    assert json.loads(out)["b"] == [[0, 2], [-1, 0]]
    a2 = tmp_path / "a2.json"
    a2.write_text(json.dumps({"n": 2, "b": [[0, 1], [-1, 0]], "eps": ["w", "b"]}))
    code, out, _ = run(capsys, "fold", "--in", str(a2), "--perm", "2 1", "--json")
    assert code == 2 and json.loads(out)["condition"] == "iv"


def test_wcell(capsys):
    code, out, _ = run(capsys, "wcell", "--family", "A2xA3-tensor", "--seed", "1,3", "--verify", "--json")
    assert code == 0
    rep = json.loads(out)
    assert all(v is None for v in rep["relations"].values())
    code, _, _ = run(capsys, "wcell", "--family", "A2xA3-tensor", "--seed", "1,3", "--p", "5", "--q", "3", "--verify")
    assert code == 2


def test_evolve_print(capsys):
    code, out, _ = run(capsys, "evolve", "--family", "B3bowtie1G2", "--steps", "3", "--print", "2,2")
    assert code == 0 and out.strip() == "T_2(2) = x1*x2^-1*x3^2 + x2^-1*x4^3"


def test_conjecture(capsys):
    code, out, _ = run(capsys, "conjecture", "--family", "A2xA3-tensor", "--trials", "5", "--seed", "3", "--json")
    assert code == 0 and json.loads(out)["expected"] == [24, 18]


def test_sweep_csv(capsys, tmp_path):
    path = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", "--max-rank", "5", "--trials", "1", "--csv", str(path))
    assert code == 0
    assert path.read_text().startswith("name,n,h_gamma,h_delta,admissible,recurrent\n")


def test_catalog_list_json(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--json")
    assert code == 0 and any(f["id"] == "B3bowtie1G2" for f in json.loads(out))


@pytest.mark.parametrize(
    "argv",
    [["bogus"], ["period"], ["period", "--family", "nope"], ["tropical", "--family", "B3bowtie1G2", "--lambda", "1,2"],
     ["check", "--in", "/nonexistent.json"], ["period", "--bad-flag"]],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 1
