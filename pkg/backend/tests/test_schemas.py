import json

import pytest
from click.testing import CliRunner

from app.cli import spinorlab
from app.schemas import SCHEMA_DIR, SCHEMAS


def shipped(name):
    return json.loads((SCHEMA_DIR / f"{name}.json").read_text(encoding="utf-8"))


def test_every_schema_is_shipped():
    assert sorted(path.stem for path in SCHEMA_DIR.glob("*.json")) == sorted(SCHEMAS)


@pytest.mark.parametrize("name", sorted(SCHEMAS))
def test_shipped_schema_matches_model(name):
    expected = SCHEMAS[name].model_json_schema()
    actual = shipped(name)
    assert actual["title"] == expected["title"]
    assert list(actual["properties"]) == list(expected["properties"])
    assert sorted(actual.get("required", [])) == sorted(expected.get("required", []))
    assert sorted(actual.get("$defs", {})) == sorted(expected.get("$defs", {}))
    for key, prop in expected["properties"].items():
        assert actual["properties"][key].get("type") == prop.get("type"), key


def test_schema_export_writes_every_file(tmp_path):
    result = CliRunner(mix_stderr=False).invoke(spinorlab, ["schema", "--out-dir", str(tmp_path)])
    assert result.exit_code == 0, result.stderr
    assert sorted(path.stem for path in tmp_path.glob("*.json")) == sorted(SCHEMAS)
    exported = json.loads((tmp_path / "maxwell.json").read_text(encoding="utf-8"))
    assert exported == SCHEMAS["maxwell"].model_json_schema()


def test_schema_command_needs_a_name():
    result = CliRunner(mix_stderr=False).invoke(spinorlab, ["schema"])
    assert result.exit_code == 2


@pytest.mark.parametrize(
    "args,name",
    [
        (["clifford", "build", "--n", "2"], "gamma-rep"),
        (["spinor", "check-pure", "--n", "4", "--random-pure", "--seed", "1"], "purity"),
        (["spinor", "decompose", "--n", "2", "--random", "--seed", "1"], "bilinear-decomposition"),
        (["fields", "maxwell", "--p", "1,0,0,1"], "maxwell"),
        (["fields", "mass-sphere", "--p", "3,2,0,0,2,0,1,0"], "mass-sphere"),
        (["fock", "levels", "--levels", "3"], "spectrum"),
        (["const", "wyler"], "wyler"),
    ],
)
def test_cli_output_follows_shipped_schema(args, name):
    result = CliRunner(mix_stderr=False).invoke(spinorlab, args + ["--json"])
    assert result.exit_code == 0, result.stderr
    envelope = json.loads(result.stdout)
    SCHEMAS["envelope"].model_validate(envelope)
    assert set(shipped("envelope")["required"]) <= set(envelope)

    payload = envelope["result"]
    SCHEMAS[name].model_validate(payload)
    schema = shipped(name)
    assert set(schema["required"]) <= set(payload)
    assert set(payload) <= set(schema["properties"])
