import json
import re
import subprocess
import sys

import jsonschema
import pytest

from awlattice import report
from awlattice.cli import main
from awlattice.instances import sample

E3 = ["--family", "E", "--d", "3", "--params=1/4,3,5,7"]
O4_UNIT = ["--family", "O", "--d", "4", "--params=1,3,5,1/480"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def dot_nodes(text):
    return re.findall(r"^\s+n(\d+) \[label=", text, re.M)


def test_build_ok(capsys):
    code, out, _ = run(capsys, "build", *E3)
    assert code == 0
    assert "relations:" in out and "FAILED" not in out


def test_build_bad_constraint_exits_1(capsys):
    code, _, err = run(capsys, "build", "--family", "E", "--d", "3", "--params=1/2,3,5,7")
    assert code == 1
    assert "k0" in err


def test_build_show_matrices_rationals(capsys):
    code, out, _ = run(capsys, "build", *E3, "--show-matrices")
    assert code == 0
    entries = re.findall(r"-?\d+/\d+", out)
    assert len(entries) >= 4 * 16
    assert "t0 =" in out and "A =" in out


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["lattice", "--family", "E"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["build", *E3, "--q", "abc"])
    assert exc.value.code == 1
    code, _, _ = run(capsys, "build", *E3[:-1], "--params=1/4,3,5,7", "--q", "1")
    assert code == 1


def test_lattice_E3_dot_diamond(capsys):
    code, out, _ = run(capsys, "lattice", *E3, "--dot", "-")
    assert code == 0
    assert out.startswith("digraph")
    assert len(dot_nodes(out)) == 4
    assert len(re.findall(r"->", out)) == 4


def test_lattice_O0_two_nodes(capsys):
    code, out, _ = run(capsys, "lattice", "--family", "O", "--d", "0", "--params=3,5,1/7,7/30", "--dot", "-")
    assert code == 0
    assert len(dot_nodes(out)) == 2


def test_lattice_O4_chain(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "lattice", *O4_UNIT, "--json", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["lattice"]["shape"] == "chain4"
    assert [n["dim"] for n in doc["lattice"]["nodes"]] == [0, 2, 3, 5]
    assert "chain4" in out


def test_json_validates_and_is_deterministic(capsys):
    schema = report.load_schema()
    for argv in (["lattice", *E3], ["lattice", *O4_UNIT], ["build", *E3, "--show-matrices"],
                 ["lattice", "--family", "VD", "--d", "2", "--params=3,5,7"],
                 ["lattice", "--family", "E", "--d", "5", "--params=1/8,3,5/2,-7", "--twist", "2"]):
        code, first, _ = run(capsys, *argv, "--json", "-")
        assert code == 0
        code, second, _ = run(capsys, *argv, "--json", "-")
        assert first == second
        jsonschema.validate(json.loads(first), schema)
        assert json.loads(first)["schema_version"] == report.SCHEMA_VERSION


def test_json_scalars_are_strings(capsys):
    _, out, _ = run(capsys, "lattice", *E3, "--json", "-")
    doc = json.loads(out)
    assert doc["instance"]["params"]["k0"] == "1/4"
    for node in doc["lattice"]["nodes"]:
        for row in node["basis"]:
            assert all(re.fullmatch(r"-?\d+/\d+", x) for x in row)


def test_json_and_dot_both_stdout_refused(capsys):
    code, _, err = run(capsys, "lattice", *E3, "--json", "-", "--dot", "-")
    assert code == 1 and "stdout" in err


def test_timing_is_opt_in(capsys):
    _, out, _ = run(capsys, "lattice", *E3, "--json", "-")
    assert "timing" not in json.loads(out)
    _, out, _ = run(capsys, "lattice", *E3, "--json", "-", "--timing")
    assert json.loads(out)["timing"]["seconds"] >= 0


def test_relation_failure_exits_2(capsys, monkeypatch):
    import awlattice.cli as cli
    from awlattice.aw import RelationCheck, RelationReport

    real = cli.check_h_relations

    def broken(h, ctx):
        rep = real(h, ctx)
        return rep + RelationReport((RelationCheck("forced failure", False),))

    monkeypatch.setattr(cli, "check_h_relations", broken)
    code, out, _ = run(capsys, "build", *E3)
    assert code == 2 and "FAILED forced failure" in out
    assert run(capsys, "lattice", *E3)[0] == 2


def test_mismatch_exits_3(capsys, monkeypatch):
    import awlattice.lattice as lat

    monkeypatch.setattr(lat, "expected_shape", lambda h: ("chain2", ()))
    assert run(capsys, "lattice", *E3)[0] == 3


def test_inconclusive_exits_4(capsys, monkeypatch):
    import awlattice.lattice as lat

    def refuse(*a, **k):
        raise lat.SeedPropertyError("forced")

    monkeypatch.setattr(lat, "_minimal", refuse)
    code, out, _ = run(capsys, "lattice", *E3)
    assert code == 4 and "INCONCLUSIVE" in out


def test_sample_round_trips_to_build(capsys):
    code, out, _ = run(capsys, "sample", "--family", "O", "--d", "2", "--count", "3", "--mode", "k0sq1")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    for line in lines:
        assert run(capsys, "lattice", *line.split())[0] == 0


def test_sample_json_matches_library(capsys):
    _, out, _ = run(capsys, "sample", "--family", "E", "--d", "3", "--count", "4", "--seed", "9", "--json", "-")
    doc = json.loads(out)
    assert doc["instances"] == [s.to_dict() for s in sample("E", 3, 4, seed=9)]


def test_sample_impossible_mode(capsys):
    code, _, err = run(capsys, "sample", "--family", "E", "--d", "3", "--mode", "k0sq1")
    assert code == 1 and "impossible" in err


def test_verify_paper_scopes(capsys):
    code, out, _ = run(capsys, "verify-paper", "--scope", "E0", "--dmax", "5", "--count", "2")
    assert code == 0 and "all checks passed" in out
    code, out, _ = run(capsys, "verify-paper", "--scope", "corollaries", "--dmax", "3", "--count", "2")
    assert code == 0 and "completely reducible" in out


def test_verify_paper_empty_scope(capsys):
    assert run(capsys, "verify-paper")[0] == 1
    assert run(capsys, "verify-paper", "--scope", "bogus")[0] == 1


def test_console_script_module_entry():
    res = subprocess.run([sys.executable, "-m", "awlattice.cli", "build", *E3],
                         capture_output=True, text=True)
    assert res.returncode == 0
