import io
import json
import random
from contextlib import redirect_stdout
from importlib import resources
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")

from qauto.cli import list_fixtures, load_fixture, main
from qauto.games.arena import arena_to_json
from qauto.model import automaton_to_json
from qauto.randgen import random_automaton


@pytest.fixture(scope="session")
def schema():
    text = resources.files("qauto.schema").joinpath("output.schema.json").read_text()
    return json.loads(text)


def run_cli(argv, schema=None):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    payload = json.loads(buf.getvalue())
    if schema is not None:
        jsonschema.validate(payload, schema)
    return code, payload


@pytest.fixture()
def fixture_path(tmp_path):
    def write(name):
        a = load_fixture(name)
        p = tmp_path / name
        p.write_text(json.dumps(automaton_to_json(a)))
        return str(p)
    return write


def test_value_command(fixture_path, schema):
    code, payload = run_cli(
        ["value", fixture_path("fig-thdA.json"), "--word", "aa"], schema)
    assert code == 0
    assert payload["value"] == "2"
    code, payload = run_cli(
        ["value", fixture_path("fig-limavg.json"),
         "--word", '{"prefix": "", "cycle": "aaab"}'], schema)
    assert code == 0
    assert payload["value"] == "1/2"


def test_check_command_exit_codes(fixture_path, schema):
    code, payload = run_cli(
        ["check", fixture_path("fig-hdinf.json"), "--property", "hd"], schema)
    assert (code, payload["verdict"]) == (0, "yes")
    code, payload = run_cli(
        ["check", fixture_path("fig-thdA.json"), "--property", "hd"], schema)
    assert (code, payload["verdict"]) == (1, "no")
    code, payload = run_cli(
        ["check", fixture_path("fig-thdA.json"), "--property", "threshold-hd",
         "--t", "2"], schema)
    assert (code, payload["verdict"]) == (0, "yes")
    code, payload = run_cli(
        ["check", fixture_path("fig-limavg.json"), "--property", "hd"], schema)
    assert code in (1, 3)


def test_check_missing_threshold_is_error(fixture_path, schema):
    code, payload = run_cli(
        ["check", fixture_path("fig-thdA.json"), "--property", "threshold-hd"],
        schema)
    assert code == 2
    assert "error" in payload


def test_determinize_command(fixture_path, schema):
    code, payload = run_cli(
        ["determinize", fixture_path("fig-hdinf.json")], schema)
    assert code == 0
    assert payload["verdict"] == "yes"
    states = payload["automaton"]["states"]
    assert set(states) == set(load_fixture("fig-hdinf.json").states)
    code, payload = run_cli(
        ["determinize", fixture_path("fig-thdA.json")], schema)
    assert code == 1


def test_oracle_command(fixture_path, schema):
    code, payload = run_cli(
        ["oracle", fixture_path("fig-thdA.json"), "--side", "eve",
         "--t", "1", "--depth", "3"], schema)
    assert code == 3  # threshold 1 is realizable, so no refutation exists
    code, payload = run_cli(
        ["oracle", fixture_path("fig-dbpalt.json"), "--side", "adam",
         "--depth", "3"], schema)
    assert (code, payload["verdict"]) == (1, "no")


def test_synthesize_command(tmp_path, schema):
    spec = {
        "alphabet": ["0|x", "0|y", "1|x", "1|y"],
        "states": ["q"],
        "initial": "q",
        "value_function": {"type": "Sup"},
        "mode": "finite",
        "delta": {"q": {"0|x": {"weight": "1", "to": "q"},
                        "0|y": {"weight": "0", "to": "q"},
                        "1|x": {"weight": "0", "to": "q"},
                        "1|y": {"weight": "2", "to": "q"}}},
    }
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(spec))
    code, payload = run_cli(
        ["synthesize", str(p), "--mode", "global-threshold", "--t", "1"],
        schema)
    assert code == 0
    assert payload["transducer"]["delta"]
    code, payload = run_cli(
        ["synthesize", str(p), "--mode", "global-value"], schema)
    assert code == 0
    assert payload["value"] == "1"
    code, payload = run_cli(
        ["synthesize", str(p), "--mode", "global-threshold", "--t", "3"],
        schema)
    assert code == 1


def test_solve_game_command(tmp_path, schema):
    arena = {
        "positions": {"p": "E", "q": "A"},
        "initial": "p",
        "edges": [
            {"src": "p", "dst": "q", "weight": "1"},
            {"src": "q", "dst": "p", "weight": "-1"},
            {"src": "q", "dst": "q", "weight": "2"},
        ],
    }
    p = tmp_path / "arena.json"
    p.write_text(json.dumps(arena))
    code, payload = run_cli(["solve-game", str(p), "--objective", "energy"],
                            schema)
    assert code == 0
    code, payload = run_cli(
        ["solve-game", str(p), "--objective", "mean-payoff"], schema)
    assert code == 0
    assert payload["value"] == "0"


def test_fixtures_command(schema):
    code, payload = run_cli(["fixtures"], schema)
    assert code == 0
    assert set(payload["fixtures"]) == set(list_fixtures())


def test_bad_input_is_error(tmp_path, schema):
    p = tmp_path / "bad.json"
    p.write_text("{\"nonsense\": true}")
    code, payload = run_cli(["value", str(p), "--word", "a"], schema)
    assert code == 2
    assert "error" in payload


def test_schema_accepts_all_outputs(fixture_path, schema):
    """Every emitted payload in the scenarios above already validates; this
    adds verdict outputs across random automata."""
    rng = random.Random(51)
    import tempfile
    for tag in ("Sum", "Sup"):
        a = random_automaton(rng, tag, max_states=3)
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
            json.dump(automaton_to_json(a), fh)
            path = fh.name
        code, payload = run_cli(["check", path, "--property", "dbp"], schema)
        assert code in (0, 1, 3)
