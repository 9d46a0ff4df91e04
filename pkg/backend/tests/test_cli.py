"""
Tests de los ficheros de escenario y de la línea de comandos
"""
import json

import pandas as pd
import pytest

from backend.cli import (
    load_scenario,
    main,
    parse_scenario,
    preset_scenario,
    run_scenarios,
    serialize_scenario,
)
from backend.cli.commands import EXIT_ABORTED, EXIT_IO, EXIT_OK, EXIT_VALIDATION, cmd_run
from backend.errors import ScenarioValidationError
from backend.reports import ERROR_SENTINEL

UNSTABLE_SCENARIO = {
    "plant": {
        "immersion": {"zeros": [], "poles": [1000.0, -1.0], "gain": 1.0},
        "inclination": {"zeros": [], "poles": [0.0, -40.0], "gain": 7660.0},
    },
    "controller": {"kind": "smc1"},
    "duration": 2.0,
}


def _write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_parse_scenario_fills_preset_gains_and_defaults():
    scenario = parse_scenario('{"controller": {"kind": "pid-smc1"}}')
    c = scenario.controller

    assert (c.alpha1, c.alpha2, c.alpha3) == (1.0, 4.0, 0.04)
    assert (c.law, c.lam, c.phi) == ("saturation", 1.0, 2.0)
    assert scenario.dt == 0.001
    assert scenario.duration == 60.0
    assert scenario.reference.amplitude == 10.0
    assert scenario.step_count == 60000
    assert scenario.name == "pid-smc1"


@pytest.mark.parametrize("name, gains", [
    ("smc1", {"k1": 1.0, "k2": 2.5, "k": 3.0}),
    ("smc2", {"beta1": 2.0, "beta2": 5.0, "beta3": 2.0, "k": 1.8}),
])
def test_relay_presets(name, gains):
    controller = preset_scenario(name).controller
    assert controller.law == "relay"
    assert {key: getattr(controller, key) for key in gains} == gains


@pytest.mark.parametrize("document, key", [
    ('{"controller": {"kind": "smc1"}, "dt": -1}', "dt"),
    ('{"controller": {"kind": "smc1"}, "duration": 0}', "duration"),
    ('{"controller": {"kind": "smc1"}, "foo": 1}', "foo"),
    ('{"controller": {"kind": "smc3"}}', "controller.kind"),
    ('{"controller": {"kind": "smc1", "beta1": 2}}', "controller"),
    ('{"controller": {"kind": "smc1", "k": 0}}', "controller"),
    ('{"controller": {"kind": "smc1"}, "disturbance": {"enabled": true, "M": -1}}', "disturbance.M"),
    ('{}', "controller"),
])
def test_invalid_scenarios_name_the_offending_key(document, key):
    with pytest.raises(ScenarioValidationError) as info:
        parse_scenario(document)
    assert key in info.value.keys
    assert key in str(info.value)


def test_malformed_json_is_a_validation_error():
    with pytest.raises(ScenarioValidationError):
        parse_scenario('{"controller": ')
    with pytest.raises(ScenarioValidationError):
        parse_scenario('[1, 2, 3]')


def test_invalid_utf8_is_a_validation_error(tmp_path):
    path = tmp_path / "latin.json"
    path.write_bytes(b'{"name": "\xff\xfe"}')

    with pytest.raises(ScenarioValidationError) as info:
        load_scenario(path)
    assert "UTF-8" in str(info.value)
    with pytest.raises(ScenarioValidationError):
        parse_scenario(path)
    with pytest.raises(ScenarioValidationError):
        parse_scenario(b'{"controller": {"kind": "\xff"}}')

    assert main(["run", "--scenario", str(path), "--out", str(tmp_path / "x.csv")]) == EXIT_VALIDATION


def test_initial_state_must_match_plant_order(tmp_path):
    plant = {
        "immersion": {"zeros": [], "poles": [0.0, -1.0], "gain": 1.0},
        "inclination": {"zeros": [], "poles": [0.0, -40.0], "gain": 7660.0},
    }
    document = {"plant": plant, "controller": {"kind": "smc1"}, "initial_state": [0.0] * 6}
    with pytest.raises(ScenarioValidationError) as info:
        parse_scenario(json.dumps(document))
    assert "initial_state" in info.value.keys

    path = _write_json(tmp_path / "small.json", document)
    assert main(["run", "--scenario", str(path), "--out", str(tmp_path / "x.csv")]) == EXIT_VALIDATION

    document["initial_state"] = [0.5, 0.0, 0.0, 0.0]
    scenario = parse_scenario(json.dumps(document))
    assert list(scenario.build_plant().state) == [0.5, 0.0, 0.0, 0.0]

    with pytest.raises(ScenarioValidationError) as info:
        parse_scenario('{"controller": {"kind": "smc1"}, "initial_state": [0, 0, 0, 0]}')
    assert "initial_state" in info.value.keys


def test_serialization_round_trip():
    for name in ("smc1", "smc2", "pid-smc1"):
        text = serialize_scenario(preset_scenario(name))
        assert serialize_scenario(parse_scenario(text)) == text
        assert '"lambda"' in text or name != "pid-smc1"


def test_load_scenario_from_file_and_preset(tmp_path):
    path = _write_json(tmp_path / "deep_dive.json", {"controller": {"kind": "smc1"}, "duration": 5.0})
    scenario = load_scenario(path)
    assert scenario.name == "deep_dive"
    assert scenario.duration == 5.0

    replaced = load_scenario(path, preset="smc2", overrides={"dt": 0.002})
    assert replaced.controller.kind == "smc2"
    assert replaced.controller.k == 1.8
    assert replaced.dt == 0.002
    assert replaced.duration == 5.0

    with pytest.raises(ScenarioValidationError):
        load_scenario()


def test_run_writes_full_default_trace(tmp_path, capsys):
    out = tmp_path / "pid.csv"
    assert main(["run", "--preset", "pid-smc1", "--out", str(out)]) == EXIT_OK

    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "t,z,theta,e,s,u"
    assert len(lines) == 60001 + 1

    printed = capsys.readouterr().out
    assert "scenario: pid-smc1" in printed
    assert "switch_count:" in printed


def test_run_with_zero_amplitude_writes_zero_columns(tmp_path):
    out = tmp_path / "flat.csv"
    assert main(["run", "--preset", "smc1", "--amplitude", "0", "--duration", "1", "--out", str(out)]) == EXIT_OK

    frame = pd.read_csv(out)
    assert len(frame) == 1001
    for column in ("z", "e", "s", "u"):
        assert (frame[column] == 0.0).all()


def test_run_is_byte_identical(tmp_path):
    args = ["run", "--preset", "smc2", "--duration", "2", "--disturbance", "0.1", "--seed", "5"]
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(first)]) == EXIT_OK
    assert main(args + ["--out", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_run_aborted_scenario_flags_partial_trace(tmp_path):
    path = _write_json(tmp_path / "unstable.json", UNSTABLE_SCENARIO)
    out = tmp_path / "unstable.csv"
    assert main(["run", "--scenario", str(path), "--out", str(out)]) == EXIT_ABORTED

    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "t,z,theta,e,s,u"
    assert lines[-1].startswith("# aborted:")
    assert 2 < len(lines) < 2002


def test_run_reports_io_errors(tmp_path):
    scenario = preset_scenario("smc1", {"duration": 0.01})
    assert cmd_run(scenario, tmp_path / "missing" / "out.csv") == EXIT_IO
    assert main(["run", "--scenario", str(tmp_path / "nope.json"), "--out", str(tmp_path / "x.csv")]) == EXIT_IO


def test_validation_and_usage_errors_exit_with_one(tmp_path):
    out = str(tmp_path / "x.csv")
    assert main(["run", "--preset", "smc1", "--dt", "-1", "--out", out]) == EXIT_VALIDATION
    assert main(["run", "--preset", "smc1"]) == EXIT_VALIDATION
    assert main(["run", "--preset", "smc4", "--out", out]) == EXIT_VALIDATION
    assert main(["run", "--out", out]) == EXIT_VALIDATION
    assert main(["compare", "--preset", "smc1", "--out", out]) == EXIT_VALIDATION
    assert main(["fly"]) == EXIT_VALIDATION


def test_compare_presets(tmp_path):
    out = tmp_path / "summary.csv"
    args = ["compare", "--preset", "smc1", "--preset", "smc2", "--preset", "pid-smc1", "--duration", "10"]
    assert main(args + ["--out", str(out)]) == EXIT_OK

    frame = pd.read_csv(out)
    assert list(frame["name"]) == ["smc1", "smc2", "pid-smc1"]
    assert list(frame.columns)[:3] == ["name", "switch_count", "total_variation"]
    tv = frame.set_index("name")["total_variation"]
    assert tv["pid-smc1"] < tv["smc1"]
    assert tv["pid-smc1"] < tv["smc2"]


def test_compare_duplicate_scenarios_gives_identical_rows(tmp_path):
    out = tmp_path / "dup.csv"
    args = ["compare", "--preset", "pid-smc1", "--preset", "pid-smc1", "--duration", "2", "--workers", "2"]
    assert main(args + ["--out", str(out)]) == EXIT_OK

    rows = out.read_text(encoding="utf-8").splitlines()
    assert len(rows) == 3
    assert rows[1] == rows[2]


def test_compare_marks_failed_scenarios(tmp_path):
    path = _write_json(tmp_path / "unstable.json", UNSTABLE_SCENARIO)
    out = tmp_path / "summary.csv"
    args = ["compare", "--scenario", str(path), "--preset", "smc1", "--duration", "2", "--out", str(out)]
    assert main(args) == EXIT_ABORTED

    frame = pd.read_csv(out, dtype=str)
    assert list(frame["name"]) == ["unstable", "smc1"]
    assert (frame.iloc[0, 1:] == ERROR_SENTINEL).all()
    assert ERROR_SENTINEL not in frame.iloc[1].tolist()


def test_config_file_changes_defaults(tmp_path):
    config = _write_json(tmp_path / "config.json", {"simulation": {"dt": 0.01, "duration": 2.0}})
    out = tmp_path / "short.csv"
    assert main(["--config", str(config), "run", "--preset", "pid-smc1", "--out", str(out)]) == EXIT_OK
    assert len(out.read_text(encoding="utf-8").splitlines()) == 201 + 1

    assert main(["--config", str(tmp_path / "absent.json"), "presets"]) == EXIT_VALIDATION


def test_presets_command(capsys):
    assert main(["presets"]) == EXIT_OK
    printed = capsys.readouterr().out
    for name in ("smc1", "smc2", "pid-smc1"):
        assert f"# {name}" in printed


@pytest.mark.asyncio
async def test_run_scenarios_preserves_order():
    scenarios = [
        preset_scenario("pid-smc1", {"duration": 0.5}),
        preset_scenario("smc1", {"duration": 0.2}),
        preset_scenario("smc2", {"duration": 0.3}),
    ]
    traces = await run_scenarios(scenarios, workers=3)
    assert [trace.scenario.name for trace in traces] == ["pid-smc1", "smc1", "smc2"]
    assert [len(trace) for trace in traces] == [501, 201, 301]
