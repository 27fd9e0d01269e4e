import json
import shutil
import subprocess
import sys
from importlib import resources

import pytest

from dcfactor.cli import SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, json.loads(out.out) if out.out else None, out.err


def strip_time(report):
    report = dict(report)
    report.pop("generated")
    return report


def test_report_layout(capsys):
    code, rep, _ = run(capsys, "coxeter-table", "--types", "A3,B2")
    assert code == 0
    assert rep["schema"] == SCHEMA and rep["command"] == "coxeter-table" and rep["pass"]
    assert rep["config"]["types"] == "A3,B2"
    rows = {r["type"]: r for r in rep["result"]["rows"]}
    assert rows["A3"]["verdict"] and not rows["B2"]["verdict"]


def test_runs_are_identical_apart_from_timestamp(capsys):
    args = ("square-dc", "alt6", "alt6_stab", "--probabilistic", "--trials", "200", "--seed", "3")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert strip_time(first) == strip_time(second)


def test_seed_does_not_change_exact_answers(capsys):
    results = []
    for seed in ("0", "17"):
        _, rep, _ = run(capsys, "square-dc", "m12", "m12_stab", "--probabilistic", "--seed", seed)
        results.append(rep["result"])
    assert results[0]["squaring_suborbits"] == results[1]["squaring_suborbits"]
    assert results[0]["witness_suborbit"] == results[1]["witness_suborbit"] is not None


@pytest.mark.parametrize("argv, code", [
    (["triple-check", "psl27", "psl27_borel"], 0),
    (["triple-check", "psl27", "psl27_borel", "--x", "()"], 1),
    (["square-dc", "m11", "m11_stab", "--involution"], 0),
    (["hecke", "alt5", "alt5_stab"], 0),
    (["coxeter-table", "--types", "G2"], 2),
    (["hecke", "psl27", "no_such_group"], 2),
    (["triple-check", "psl27", "psl27_borel", "--x", "(1,9)"], 2),
    (["coxeter-table", "--types", "E6", "--bound", "10"], 3),
    (["square-dc", "m11", "m11_stab", "--trials", "-1"], 2),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    err = capsys.readouterr().err
    if code in (2, 3):
        assert err.startswith("dcfactor: ")


def test_hecke_report(capsys):
    code, rep, _ = run(capsys, "hecke", "alt5", "alt5_stab")
    assert code == 0
    assert rep["result"]["matrices"][1] == [[0, 4], [1, 3]]
    assert rep["result"]["squares"] == [False, True]


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    assert main(["coxeter-table", "--types", "A2", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["pass"]


def test_corrupted_data_dir_names_the_file(tmp_path, capsys):
    data = resources.files("dcfactor") / "data"
    for name in ("psl27.perm", "psl27_borel.perm"):
        shutil.copy(data / name, tmp_path / name)
    bad = tmp_path / "psl27.perm"
    text = bad.read_text().replace("order 168", "order 169")
    assert text != bad.read_text()
    bad.write_text(text)
    code, rep, err = run(capsys, "triple-check", "psl27", "psl27_borel", "--data-dir", str(tmp_path))
    assert code == 2 and rep["result"]["error"] == "DataError"
    assert "psl27.perm" in err


def test_data_dir_is_reset_after_run(tmp_path, capsys):
    main(["hecke", "psl27", "psl27_borel", "--data-dir", str(tmp_path)])
    capsys.readouterr()
    assert main(["hecke", "psl27", "psl27_borel"]) == 0


def test_perm_file_arguments(tmp_path, capsys):
    g = tmp_path / "s4.perm"
    g.write_text("degree 4\ngen (1,2,3,4)\ngen (1,2)\norder 24\n")
    a = tmp_path / "s3.perm"
    a.write_text("degree 4\ngen (1,2,3)\ngen (1,2)\n")
    code, rep, _ = run(capsys, "hecke", str(g), str(a))
    assert code == 0 and rep["result"]["matrices"][1] == [[0, 3], [1, 2]]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "dcfactor", "coxeter-table", "--types", "A2"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0 and json.loads(out.stdout)["pass"]
