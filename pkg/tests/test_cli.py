import json
from pathlib import Path

import pytest

from matchgates import cli

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    rc = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return rc, out.out, out.err


def run_json(capsys, *argv):
    rc, out, _ = run(capsys, "--json", *argv)
    return rc, json.loads(out)


def test_empty_circuit_gives_one(capsys):
    rc, data = run_json(capsys, "simulate", FIX / "empty.json", "--line", 0)
    assert rc == 0 and data["z"] == 1.0 and data["p0"] == 1.0


def test_gxx_flips_line(capsys):
    rc, data = run_json(capsys, "simulate", FIX / "gxx.json")
    assert rc == 0 and abs(data["z"] + 1) <= 1e-12


def test_random_fixture_against_oracle(capsys):
    rc, data = run_json(capsys, "simulate", FIX / "random_circuit.json", "--oracle")
    assert rc == 0
    assert data["difference"] <= 1e-9


def test_text_output(capsys):
    rc, out, _ = run(capsys, "simulate", FIX / "gxx.json", "--oracle")
    assert rc == 0
    assert "<Z_0> = -1.000000000000" in out and "oracle" in out


def test_tolerance_failure_exit_code(capsys):
    rc, _, _ = run(capsys, "simulate", FIX / "random_circuit.json", "--oracle", "--tolerance", "1e-30")
    assert rc == cli.EXIT_TOLERANCE


def test_non_nn_file_falls_back_to_oracle(tmp_path, capsys):
    x = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]
    p = tmp_path / "far.json"
    p.write_text(json.dumps({"n": 3, "gates": [{"kind": "G", "lines": [0, 2], "A": x, "B": x}]}))
    rc, data = run_json(capsys, "simulate", p, "--oracle")
    assert rc == 0 and "z" not in data and abs(data["oracle"] + 1) <= 1e-12
    rc, _, err = run(capsys, "simulate", p)
    assert rc == cli.EXIT_VALIDATION and "error" in err


def test_validation_exit_codes(tmp_path, capsys):
    assert run(capsys, "simulate", tmp_path / "missing.json")[0] == cli.EXIT_VALIDATION
    bad = tmp_path / "bad.json"
    bad.write_text("{\n oops\n}")
    rc, _, err = run(capsys, "simulate", bad)
    assert rc == cli.EXIT_VALIDATION and "line 2" in err
    assert run(capsys, "simulate", FIX / "gxx.json", "--line", 5)[0] == cli.EXIT_VALIDATION


def test_resource_exit_code(tmp_path, capsys):
    p = tmp_path / "wide.json"
    p.write_text(json.dumps({"n": 20, "gates": []}))
    rc, _, _ = run(capsys, "simulate", p, "--oracle")
    assert rc == cli.EXIT_RESOURCE


def test_compile_single_h(capsys, tmp_path):
    out = tmp_path / "c.json"
    rc, _, _ = run(capsys, "compile", FIX / "single_h.json", "-o", out)
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["n"] == 4 and len(data["gates"]) == 5
    assert data["measure_map"] == [0]


def test_compile_cz_pair(capsys):
    rc, out, _ = run(capsys, "compile", FIX / "cz_pair.json")
    data = json.loads(out)
    assert rc == 0 and data["measure_map"] == [0, 3]
    assert data["permutation"] == [0, 1, 2, 4, 3, 5, 6, 7]


def test_decompose_zero_hamiltonian(capsys):
    rc, out, _ = run(capsys, "decompose", FIX / "zero_hamiltonian.json")
    assert rc == 0 and json.loads(out)["gates"] == []


def test_decompose_random_hamiltonian(capsys):
    rc, out, _ = run(capsys, "decompose", FIX / "random_hamiltonian.json")
    data = json.loads(out)
    assert rc == 0 and data["n"] == 3
    assert all(abs(g["lines"][1] - g["lines"][0]) == 1 for g in data["gates"])


def test_intertwine_with_oracle(capsys):
    rc, data = run_json(capsys, "intertwine", FIX / "example3_n5.json", FIX / "base_n5.json", "--target", "IZIII", "--oracle")
    assert rc == 0 and data["difference"] <= 1e-9


def test_intertwine_degree_cap(capsys):
    rc, _, err = run(capsys, "intertwine", FIX / "example3_n5.json", FIX / "base_n5.json", "--target", "IZIII", "--degree-cap", 4)
    assert rc == cli.EXIT_RESOURCE and "degree-6" in err


def test_verify_negative_controls(capsys):
    rc, out, _ = run(capsys, "verify", "--suite", "negative-controls")
    assert rc == 0 and out.startswith("PASS negative-controls")


def test_verify_reports_failed_checks(capsys):
    rc, data = run_json(capsys, "verify", "--suite", "identities")
    checks = {c["label"]: c["ok"] for c in data["suites"][0]["checks"]}
    assert checks["c_2 c_6 = i X Z Y"] and not checks["c_2 c_6 = X Z Y (phase-free, exact)"]
    assert rc == cli.EXIT_TOLERANCE


def test_verify_is_deterministic(capsys):
    a = run_json(capsys, "verify", "--suite", "decomposer", "--seed", 3)[1]
    b = run_json(capsys, "verify", "--suite", "decomposer", "--seed", 3)[1]
    for s in a["suites"] + b["suites"]:
        s.pop("elapsed", None)
    assert a == b


def test_flags_before_and_after_subcommand(capsys):
    rc1, _, _ = run(capsys, "--tolerance", "1e-30", "simulate", FIX / "random_circuit.json", "--oracle")
    rc2, _, _ = run(capsys, "simulate", FIX / "random_circuit.json", "--oracle", "--tolerance", "1e-30")
    assert rc1 == rc2 == cli.EXIT_TOLERANCE


def test_bad_tolerance(capsys):
    assert run(capsys, "--tolerance", "0", "simulate", FIX / "gxx.json")[0] == cli.EXIT_VALIDATION


def test_unknown_suite_is_rejected():
    with pytest.raises(SystemExit):
        cli.main(["verify", "--suite", "nope"])
