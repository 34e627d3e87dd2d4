import json
import subprocess
import sys

import pytest

from nicholscy.cli import main

EXAMPLE2 = ["builtin", "example2"]


def run_main(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_builtin_prints_a_parseable_document(capsys):
    code, out, _ = run_main(capsys, *EXAMPLE2)
    assert code == 0
    doc = json.loads(out)
    assert doc["dimension"] == 4
    assert len(doc["braiding"]) == 16


def test_builtin_diagonal_takes_a_qmatrix(capsys):
    code, out, _ = run_main(
        capsys, "builtin", "diagonal", "--qmatrix", '[["1","2"],["1/2","1"]]'
    )
    assert code == 0
    assert json.loads(out)["dimension"] == 2


def test_validate_exit_codes(tmp_path, capsys):
    good = write_doc(
        tmp_path,
        "good.json",
        {
            "name": "p",
            "dimension": 1,
            "braiding": [["1"]],
        },
    )
    code, out, _ = run_main(capsys, "validate", good)
    assert code == 0
    assert json.loads(out)["valid"] is True

    bad = write_doc(
        tmp_path,
        "bad.json",
        {
            "name": "b",
            "dimension": 2,
            "braiding": [
                ["1", "0", "0", "0"],
                ["0", "0", "2", "0"],
                ["0", "1/2", "0", "0"],
                ["0", "0", "0", "2"],
            ],
        },
    )
    code, out, _ = run_main(capsys, "validate", bad)
    assert code == 2
    assert json.loads(out)["failure"]["code"] == "NotHecke"


def test_analyze_completes_and_reports(tmp_path, capsys):
    code, out, _ = run_main(capsys, *EXAMPLE2)
    doc = write_doc(tmp_path, "ex2.json", json.loads(out))
    code, out, _ = run_main(capsys, "analyze", doc, "--cap", "5")
    assert code == 0
    rep = json.loads(out)
    assert rep["completed"] is True
    assert rep["gldim"] == 4
    assert rep["dims_dual"] == [1, 4, 6, 4, 1, 0]
    assert rep["descriptor"]["text"] == "_phi R[4](-4)"


def test_analyze_rejects_with_exit_two(tmp_path, capsys):
    doc = write_doc(
        tmp_path,
        "dual.json",
        {"family": "diagonal", "qmatrix": [["-1", "1"], ["1", "-1"]]},
    )
    code, out, _ = run_main(capsys, "analyze", doc, "--cap", "4")
    assert code == 2
    rep = json.loads(out)
    assert rep["completed"] is False
    assert rep["failure"]["code"] == "CapExceeded"
    assert "exceeds cap" in rep["failure"]["message"]


def test_analyze_text_format(tmp_path, capsys):
    doc = write_doc(
        tmp_path, "qp.json", {"family": "diagonal", "qmatrix": [["1", "2"], ["1/2", "1"]]}
    )
    code, out, _ = run_main(capsys, "analyze", doc, "--cap", "4", "--format", "text")
    assert code == 0
    assert "CALABI-YAU: no" in out


def test_analyze_renders_figures(tmp_path, capsys):
    doc = write_doc(
        tmp_path, "qp.json", {"family": "diagonal", "qmatrix": [["1", "3"], ["1/3", "1"]]}
    )
    outdir = tmp_path / "figs"
    code, out, err = run_main(
        capsys, "analyze", doc, "--cap", "4", "--figures", str(outdir)
    )
    assert code == 0
    files = sorted(p.name for p in outdir.iterdir())
    assert files == ["braiding.png", "dims.csv", "dims.png"]
    assert (outdir / "braiding.png").stat().st_size > 0
    lines = (outdir / "dims.csv").read_text().splitlines()
    assert lines[0] == "degree,dim_R,dim_dual"
    assert lines[1] == "0,1,1"
    assert all(str(outdir) in line for line in err.splitlines())


def test_oracle_prints_agreement(tmp_path, capsys):
    code, out, _ = run_main(capsys, *EXAMPLE2)
    doc = write_doc(tmp_path, "ex2.json", json.loads(out))
    code, out, _ = run_main(capsys, "oracle", doc, "--cap", "5")
    assert code == 0
    assert json.loads(out)["agreement"] is True


def test_oracle_rejected_input_exits_two(tmp_path, capsys):
    doc = write_doc(tmp_path, "mi.json", {"name": "m", "dimension": 1, "braiding": [["-1"]]})
    code, out, _ = run_main(capsys, "oracle", doc)
    assert code == 2
    assert json.loads(out)["failure"]["code"] == "LabelAmbiguous"


def test_unreadable_input_exits_two(capsys):
    code, _, err = run_main(capsys, "analyze", "/nonexistent/input.json")
    assert code == 2
    assert err.strip()


def test_convention_flag_overrides(tmp_path, capsys):
    table = [
        ["1", "0", "0", "0"],
        ["0", "0", "1/2", "0"],
        ["0", "2", "0", "0"],
        ["0", "0", "0", "1"],
    ]
    doc = write_doc(tmp_path, "t.json", {"name": "t", "dimension": 2, "braiding": table})
    code, out, _ = run_main(capsys, "analyze", doc, "--cap", "4", "--convention", "transpose")
    assert code == 0
    rep = json.loads(out)
    assert rep["convention"] == "transpose"
    assert rep["D"] == [["2", "0"], ["0", "1/2"]]


def test_stdin_dash_and_garbage_via_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "nicholscy.cli", "validate", "-"],
        input='{"name":"p","dimension":1,"braiding":[["1"]]}',
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0

    garbage = subprocess.run(
        [sys.executable, "-m", "nicholscy.cli", "analyze", "-"],
        input="not json",
        capture_output=True,
        text=True,
    )
    assert garbage.returncode == 2
    assert "error" in garbage.stderr
