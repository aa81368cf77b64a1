import json

import pytest

from reflexlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_group_subcommand(capsys):
    code, out, _ = run(capsys, "group", "--family", "b2")
    assert code == 0
    assert "order: 8" in out
    assert "result: PASS" in out


def test_group_json(capsys):
    code, out, _ = run(capsys, "group", "--family", "b3", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == "reflexlab-report/1"
    assert report["order"] == 48
    assert report["pass"] is True
    assert report["wall_time_ms"] is None


def test_orbits_subcommand(capsys):
    code, out, _ = run(capsys, "orbits", "--family", "iota_c3", "--json")
    assert code == 0
    report = json.loads(out)
    sizes = sorted(o["orbit_size"] for o in report["orbits"])
    assert sizes == [2, 6]


def test_verify_norms_pass(capsys):
    code, out, _ = run(capsys, "verify", "norms", "--family", "b2", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert {c["check"] for c in report["checks"]} == {
        "prop_2N1",
        "prop_2N1_general",
    }


def test_json_reports_are_byte_identical(capsys):
    _, out1, _ = run(capsys, "verify", "norms", "--family", "b2", "--json")
    _, out2, _ = run(capsys, "verify", "norms", "--family", "b2", "--json")
    assert out1 == out2


def test_timings_break_nothing(capsys):
    code, out, _ = run(
        capsys, "verify", "norms", "--family", "b2", "--json", "--timings"
    )
    assert code == 0
    assert isinstance(json.loads(out)["wall_time_ms"], int)


def test_unknown_family_exit_2(capsys):
    code, _, err = run(capsys, "verify", "norms", "--family", "nosuch")
    assert code == 2
    assert "unknown catalog group" in err


def test_no_target_exit_2(capsys):
    code, _, err = run(capsys, "verify", "norms")
    assert code == 2
    assert "--family or --file" in err


def test_dihedral_needs_n_exit_2(capsys):
    code, _, err = run(capsys, "verify", "dihedral")
    assert code == 2
    assert "--n" in err


def test_pfister_cap_exit_3(capsys):
    code, _, err = run(capsys, "verify", "pfister", "--family", "dihedral8")
    assert code == 3
    assert "capped" in err


def test_dihedral_suite(capsys):
    code, out, _ = run(capsys, "verify", "dihedral", "--n", "4", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert {c["check"] for c in report["checks"]} == {
        "dihedral_shimura",
        "dihedral_counts",
    }


def test_generator_file_target(tmp_path, capsys):
    path = tmp_path / "gens.txt"
    path.write_text("degree 2\nsigns=10 perm=1 2\nsigns=00 perm=2 1\n")
    code, out, _ = run(capsys, "group", "--file", str(path), "--json")
    assert code == 0
    assert json.loads(out)["order"] == 8


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "group", "--file", "/nonexistent/gens.txt")
    assert code == 2
    assert "cannot read" in err


def test_run_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps({"targets": [{"family": "b2"}], "suites": ["norms"]})
    )
    code, out, _ = run(capsys, "run", "--config", str(cfg), "--json")
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert len(report["checks"]) == 2


def test_run_config_bad_json_exit_2(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{not json")
    code, _, err = run(capsys, "run", "--config", str(cfg))
    assert code == 2
    assert "bad JSON" in err
