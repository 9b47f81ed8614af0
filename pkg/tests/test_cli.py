import json

import pytest

from coxpop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_max_orbit_h3(capsys):
    code, out = run(capsys, "max-orbit", "--type", "H3")
    assert code == 0
    assert out.out.splitlines()[0] == "10"
    assert "witness" in out.out


def test_orbit_one_line(capsys):
    code, out = run(capsys, "orbit", "--type", "A", "--rank", "4", "--element", "42351", "--json")
    assert code == 0
    assert json.loads(out.out) == {"orbit": ["42351", "24315", "21345", "12345"], "size": 4}


def test_orbit_affine_window(capsys):
    code, out = run(capsys, "orbit", "--type", "Atilde", "--rank", "4", "--element", "[0,3,2,6,4]", "--json")
    assert code == 0 and json.loads(out.out)["size"] == 3


def test_orbit_matrix_file(capsys, tmp_path):
    f = tmp_path / "m.json"
    f.write_text(json.dumps({"m": [[1, 5], [5, 1]]}))
    code, out = run(capsys, "max-orbit", "--type", f"matrix:{f}")
    assert code == 0 and out.out.splitlines()[0] == "5"


def test_gf_type_b(capsys):
    code, out = run(capsys, "gf", "--family", "B", "-t", "2", "--json")
    assert code == 0
    data = json.loads(out.out)
    assert data["num"] == [0, 2, 2, 2] and data["den"] == [1, -2, -1, -2]


def test_count_json_and_csv(capsys):
    code, out = run(capsys, "count", "--family", "B", "-t", "2", "--n-max", "3", "--json")
    assert code == 0 and json.loads(out.out)["counts"] == {"1": 2, "2": 6, "3": 16}
    code, out = run(capsys, "count", "--family", "A", "-t", "1", "--n-max", "3", "--csv")
    assert code == 0 and out.out.splitlines()[0] == "n,brute,automaton,status"


def test_verify_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "prop1", "--seed", "0")
    assert code == 0 and "[PASS] prop1" in out.out


def test_lattice_pop(capsys, tmp_path):
    f = tmp_path / "l.json"
    f.write_text(json.dumps({"elements": [0, 1, 2, 3, 4, 5], "covers": [[0, 1], [1, 2], [2, 4], [4, 5], [0, 3], [3, 4]]}))
    code, out = run(capsys, "lattice-pop", "--file", str(f), "--search-compulsive", "--json")
    data = json.loads(out.out)
    assert code == 0 and data["max_pop_orbit"] == 3 and data["compulsive"]["max_orbit"] == 4


def test_forbidden(capsys, tmp_path):
    f = tmp_path / "c.json"
    code, out = run(capsys, "forbidden", "-t", "2", "--l-max", "6", "--out", str(f))
    assert code == 0
    assert len(json.loads(f.read_text())["segments"]) == 20


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["max-orbit", "--type", "D"],
        ["max-orbit", "--type", "Atilde", "--rank", "3"],
        ["orbit", "--type", "B", "--rank", "2", "--element", "1243"],
        ["count", "--family", "C", "-t", "1", "--n-max", "3"],
        ["lattice-pop", "--file", "/nonexistent.json"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2
