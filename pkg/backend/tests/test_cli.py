import json

import pytest
from click.testing import CliRunner

from app.cli import spinorlab


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def error_of(result):
    return json.loads(result.stderr.strip().splitlines()[-1])


def invoke(runner, *args):
    return runner.invoke(spinorlab, list(args))


def test_clifford_build_outputs_envelope(runner):
    result = invoke(runner, "clifford", "build", "--n", "1", "--json")
    assert result.exit_code == 0, result.stderr
    envelope = json.loads(result.stdout)
    assert envelope["tool"] == "spinorlab"
    assert envelope["status"] == "ok"
    assert envelope["timing"] is None
    assert envelope["result"]["spinor_dim"] == 2
    assert envelope["result"]["B_minus"] == [[[0.0, 0.0], [-1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]]
    assert envelope["config"]["effective_tolerances"]["tol_null"] == 1e-10


def test_clifford_check_passes(runner):
    result = invoke(runner, "clifford", "check", "--n", "2", "--sig", "1,3")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)["result"]
    assert payload["passed"]
    assert [solve["solution_dimension"] for solve in payload["antiautomorphisms"]] == [1, 1]


def test_same_seed_gives_identical_output(runner):
    args = ("spinor", "check-pure", "--n", "4", "--random", "--seed", "7", "--json")
    first = invoke(runner, *args)
    second = invoke(runner, *args)
    assert first.exit_code == 0, first.stderr
    assert first.stdout == second.stdout
    assert json.loads(first.stdout)["result"]["is_pure"] is False


def test_random_pure_spinor_is_pure(runner):
    result = invoke(runner, "spinor", "check-pure", "--n", "5", "--random-pure", "--seed", "3")
    assert result.exit_code == 0, result.stderr
    assert json.loads(result.stdout)["result"]["is_pure"] is True


def test_tolerance_override_is_echoed(runner):
    result = invoke(runner, "spinor", "check-pure", "--n", "3", "--basis", "0", "--tol-null", "1e-8")
    assert result.exit_code == 0, result.stderr
    envelope = json.loads(result.stdout)
    assert envelope["config"]["tolerances"]["tol_null"] == 1e-8
    assert envelope["result"]["tolerance"] == 1e-8


def test_unsupported_size_exits_with_2(runner):
    result = invoke(runner, "clifford", "build", "--n", "7")
    assert result.exit_code == 2
    assert error_of(result)["code"] == "unsupported-size"
    assert result.stdout == ""


def test_mixed_chirality_exits_with_2(runner):
    result = invoke(runner, "spinor", "check-pure", "--n", "2", "--components", "1,0,1,0")
    assert result.exit_code == 2
    assert error_of(result)["code"] == "chirality-required"


def test_bad_choice_is_usage_error(runner):
    result = invoke(runner, "fields", "kernel", "--p", "1,0,0,1", "--chirality", "left")
    assert result.exit_code == 2


def test_conflicting_formats_rejected(runner):
    result = invoke(runner, "const", "wyler", "--json", "--csv")
    assert result.exit_code == 2


def test_real_null_defaults_to_lorentzian(runner):
    result = invoke(runner, "spinor", "real-null", "--n", "3", "--random-pure", "--seed", "11")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)["result"]
    assert payload["signature"] == [1, 5]
    assert payload["is_null"]


def test_vector_two_dimensional_example(runner):
    result = invoke(runner, "spinor", "vector", "--n", "1", "--phi", "1,0", "--psi", "1,0", "--sign", "-1")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)["result"]
    assert payload["components"] == [[-1.0, 0.0], [0.0, -1.0]]
    assert payload["is_null"]


def test_maxwell_command(runner):
    result = invoke(runner, "fields", "maxwell", "--p", "1,0,0,1")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)["result"]
    assert payload["satisfied"]
    assert payload["F_plus"]["rank"] == 2


def test_mass_sphere_not_on_cone(runner):
    result = invoke(runner, "fields", "mass-sphere", "--p", "1,0,0,0,1,1")
    assert result.exit_code == 2
    assert error_of(result)["code"] == "not-on-cone"


def test_fock_levels_in_electron_volts(runner):
    result = invoke(runner, "fock", "levels", "--levels", "2")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)["result"]
    assert payload["energy_unit"] == "eV"
    assert payload["levels"][0]["E"] == pytest.approx(-13.6057, abs=1e-3)
    assert payload["levels"][0]["lambda"] == pytest.approx(19.7392088, rel=1e-8)


def test_funk_hecke_csv(runner):
    result = invoke(runner, "fock", "funk-hecke", "--levels", "3", "--csv")
    assert result.exit_code == 0, result.stderr
    lines = result.stdout.strip().splitlines()
    assert lines[0].startswith("n,lambda,degeneracy")
    assert len(lines) == 4


def test_fock_solve_with_wyler_alpha(runner):
    result = invoke(runner, "fock", "solve", "--levels", "1", "--grid", "8,8,16",
                    "--alpha", "wyler", "--cluster-tol", "0.01")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)["result"]
    assert payload["route"] == "nystrom"
    assert payload["levels"][0]["relative_error"] <= 1e-10
    assert payload["params"]["alpha"] == pytest.approx(1 / 137.03608, rel=1e-6)


def test_fock_residual(runner):
    result = invoke(runner, "fock", "residual", "--lambda", "19.739208802178716",
                    "--alpha", "0.5", "--mc-over-p0", "2")
    assert result.exit_code == 0, result.stderr
    assert json.loads(result.stdout)["result"]["residual"] == pytest.approx(0, abs=1e-12)


def test_const_commands(runner):
    torus = json.loads(invoke(runner, "const", "torus", "--n", "4", "--t", "1", "--h", "1").stdout)
    assert torus["result"]["product"] == pytest.approx(0.5)
    assert torus["warnings"]

    dirac = json.loads(invoke(runner, "const", "dirac").stdout)
    assert dirac["result"]["delta_t_s"] == pytest.approx(4.41e-24, rel=1e-2)

    ratio = json.loads(invoke(runner, "const", "ratio").stdout)
    assert ratio["result"]["ratio"] == pytest.approx(9.87e40, rel=1e-2)

    wyler = json.loads(invoke(runner, "const", "wyler").stdout)
    assert wyler["result"]["inverse_alpha"] == pytest.approx(137.03608, abs=1e-4)


def test_timing_and_out_file(runner, tmp_path):
    out = tmp_path / "wyler.json"
    result = invoke(runner, "const", "wyler", "--timing", "--out", str(out))
    assert result.exit_code == 0, result.stderr
    assert result.stdout == ""
    envelope = json.loads(out.read_text(encoding="utf-8"))
    assert envelope["timing"]["elapsed_s"] >= 0


def test_corrupted_constants_file_fails_selftest(runner, tmp_path):
    broken = tmp_path / "constants.json"
    broken.write_text("{}", encoding="utf-8")
    result = invoke(runner, "selftest", "--quick", "--constants", str(broken))
    assert result.exit_code == 3
    envelope = json.loads(result.stdout)
    assert envelope["status"] == "failed"
    assert envelope["result"]["failed"] == ["constants_file"]


def test_corrupted_constants_file_for_const_command(runner, tmp_path):
    broken = tmp_path / "constants.json"
    broken.write_text("not json", encoding="utf-8")
    result = invoke(runner, "const", "dirac", "--constants", str(broken))
    assert result.exit_code == 3
    assert error_of(result)["code"] == "constants-file"


def test_schema_export(runner):
    result = invoke(runner, "schema", "spectrum")
    assert result.exit_code == 0
    schema = json.loads(result.stdout)
    assert "levels" in schema["properties"]


def test_spinor_decompose_random_pure(runner):
    result = invoke(runner, "spinor", "decompose", "--n", "3", "--random", "--seed", "5")
    assert result.exit_code == 0, result.stderr
    payload = json.loads(result.stdout)["result"]
    assert payload["cartan_satisfied"] is True
    assert payload["reconstruction_error"] <= 1e-12
    assert len(payload["grade_norms"]) == 7


def test_spinor_decompose_needs_both_spinors(runner):
    result = invoke(runner, "spinor", "decompose", "--n", "1", "--phi", "1,0")
    assert result.exit_code == 2
    assert error_of(result)["code"] == "invalid-argument"


def test_funk_hecke_convergence_tolerance_flag(runner):
    args = ("fock", "funk-hecke", "--levels", "6", "--quad-order", "2")
    strict = invoke(runner, *args)
    assert strict.exit_code == 3
    assert error_of(strict)["code"] == "accuracy-not-reached"

    relaxed = invoke(runner, *args, "--tol-convergence", "100", "--json")
    assert relaxed.exit_code == 0, relaxed.stderr
    envelope = json.loads(relaxed.stdout)
    assert envelope["config"]["effective_tolerances"]["tol_convergence"] == 100.0
