import json
import subprocess
import sys

import pytest

from dimerstrip.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_newton_all_agree(capsys):
    code, out, _ = run(capsys, "newton", "--shape", "square", "--n", "4", "--method", "all")
    assert code == 0
    assert out.splitlines() == ["z^-2 - 8z^-1 + 16 - 8z + z^2 - w - w^-1", "AGREE(4 methods)"]


def test_newton_hex(capsys):
    code, out, _ = run(capsys, "newton", "--shape", "hex", "--n", "2")
    assert (code, out) == (0, "2 - z - w - w^-1\n")


@pytest.mark.parametrize("cmd", ["newton", "count", "fas"])
def test_odd_n_is_usage_error(capsys, cmd):
    code, _, err = run(capsys, cmd, "--n", "3")
    assert code == 2 and "even" in err


def test_bad_flag_is_usage_error(capsys):
    assert main(["newton", "--shape", "triangle", "--n", "4"]) == 2
    assert main(["fas", "--n", "10", "--verify"]) == 2
    assert main(["newton", "--n", "4", "--m", "4", "--method", "formula"]) == 2


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--shape", "square", "--n", "2")
    assert code == 0
    assert out.splitlines()[:2] == ["Z = 8", "A = (0, 2, 2, 4)"]
    code, out, _ = run(capsys, "count", "--shape", "square", "--n", "4")
    assert out.startswith("Z = 36\n")


def test_count_n20_product_agrees(capsys):
    code, out, _ = run(capsys, "count", "--n", "20", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["agree"] and obj["Z"] == obj["product_Z"] == 45239076
    assert obj["product_drift"] < 1e-6
    assert obj["convention"]


def test_count_torus(capsys):
    code, out, _ = run(capsys, "count", "--n", "4", "--m", "4")
    assert code == 0 and out.startswith("Z = 272\n")


def test_fas(capsys):
    code, out, _ = run(capsys, "fas", "--n", "6")
    assert (code, out) == (0, "196\n")
    code, out, _ = run(capsys, "fas", "--n", "4", "--verify")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "32 verified; 4 boundary matchings each preserve 2 zig-zag paths"
    assert len(lines) == 5


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--shape", "square", "--rows", "5")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 6
    assert lines[3].split() == ["6", "1", "12", "48", "76", "48", "12", "1"]
    assert lines[5].split() == ["10", "1", "20", "160", "660", "1520", "2004", "1520", "660", "160", "20", "1"]
    code, out, _ = run(capsys, "table", "--shape", "hex", "--rows", "5", "--format", "csv", "--method", "all")
    assert code == 0
    assert out.splitlines()[-1] == "10,2,25,50,35,10,1"


def test_series_fas(capsys):
    code, out, _ = run(capsys, "series", "--target", "fas", "--order", "10")
    assert code == 0
    assert out.splitlines()[0] == "even coefficients: 0, 4, 32, 196, 1152, 6724"


def test_check_all(capsys):
    code, out, _ = run(capsys, "check", "--all")
    assert code == 0
    assert "FAIL" not in out
    assert "documented deviation" in out


def test_json_has_convention_and_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "newton", "--shape", "hex", "--n", "6", "--format", "json")
        outs.append(out)
    assert outs[0] == outs[1]
    obj = json.loads(outs[0])
    assert obj["convention"] == "(-1)^(nz+nw+nz*nw)"
    code, out, _ = run(capsys, "newton", "--shape", "hex", "--n", "6", "--paper-signs", "--format", "json")
    assert json.loads(out)["text"] == "-2 + 9z - 6z^2 + z^3 - w - w^-1"


def test_output_and_dump(tmp_path, capsys):
    out = tmp_path / "p.csv"
    graph = tmp_path / "g.json"
    code = main(["newton", "--n", "2", "--format", "csv", "--output", str(out), "--dump-graph", str(graph)])
    assert code == 0
    assert out.read_text().splitlines()[0] == "nz,nw,coefficient"
    assert len(json.loads(graph.read_text())["edges"]) == 8


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dimerstrip", "newton", "--shape", "hex", "--n", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "2 - z - w - w^-1\n"
    res = subprocess.run([sys.executable, "-m", "dimerstrip", "newton", "--n", "3"], capture_output=True, text=True)
    assert res.returncode == 2
