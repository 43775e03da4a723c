"""Command-line behaviour: exit codes, determinism, serve startup errors."""

import io
import json
import socket
import subprocess
import sys
import time
import urllib.request
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from normcase.cli import main
from normcase.policy import bundled_policy_path

SCENARIO_DIR = Path(__file__).parent / "data" / "scenarios"
NORM_DIR = Path(__file__).parent / "data" / "norms"


def run_cli(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def spec_path(label: str) -> str:
    if label == "iit":
        return str(bundled_policy_path())
    if label == "broken":
        return str(SCENARIO_DIR / "broken.norm")
    if label == "missing":
        return str(SCENARIO_DIR / "does-not-exist.norm")
    raise AssertionError(label)


# --- validate ---------------------------------------------------------------


def test_validate_bundled_policy_is_clean():
    code, out, _ = run_cli("validate", str(bundled_policy_path()))
    assert code == 0
    assert "OK" in out


def test_validate_reports_diagnostics_with_exit_2():
    code, _, err = run_cli("validate", str(SCENARIO_DIR / "broken.norm"))
    assert code == 2
    assert "unresolved identifier" in err


def test_validate_missing_path_is_exit_2():
    code, _, err = run_cli("validate", "/nope/missing.norm")
    assert code == 2
    assert "geen specificatie" in err


# --- run: the whole corpus against its manifest --------------------------------


def manifest_rows():
    rows = json.loads((SCENARIO_DIR / "manifest.json").read_text(encoding="utf-8"))
    return [pytest.param(r, id=f"{r['spec']}-{r['scenario']}-exit{r['exit']}") for r in rows]


@pytest.mark.parametrize("row", manifest_rows())
def test_scenario_corpus_exit_codes(row):
    code, _, _ = run_cli(
        "run", spec_path(row["spec"]), str(SCENARIO_DIR / row["scenario"])
    )
    assert code == row["exit"]


def test_corpus_is_large_enough_and_covers_all_exit_codes():
    rows = json.loads((SCENARIO_DIR / "manifest.json").read_text(encoding="utf-8"))
    scenario_files = {r["scenario"] for r in rows}
    assert len(scenario_files & {p.name for p in SCENARIO_DIR.glob("*.json")}) >= 10
    assert {r["exit"] for r in rows} == {0, 1, 2}


def test_run_report_is_byte_identical_across_runs():
    args = (
        "run",
        spec_path("iit"),
        str(SCENARIO_DIR / "late_decision.json"),
    )
    first = run_cli(*args)
    second = run_cli(*args)
    assert first == second
    json_first = run_cli(*args, "--json")
    json_second = run_cli(*args, "--json")
    assert json_first == json_second


def test_run_violation_report_names_the_breach():
    code, out, _ = run_cli(
        "run", spec_path("iit"), str(SCENARIO_DIR / "override_not_allowed.json")
    )
    assert code == 1
    assert "SCHENDINGEN" in out
    assert "grant-iit-single" in out


def test_run_expected_mismatch_prints_a_diff():
    code, out, _ = run_cli(
        "run", spec_path("iit"), str(SCENARIO_DIR / "expected_mismatch.json")
    )
    assert code == 1
    assert "AFWIJKING" in out


def test_run_json_mode_is_machine_readable():
    code, out, _ = run_cli(
        "run", spec_path("iit"), str(SCENARIO_DIR / "late_decision.json"), "--json"
    )
    assert code == 1
    doc = json.loads(out)
    assert doc["violations"]
    assert doc["finalStatuses"]


# --- tree ------------------------------------------------------------------------


def test_tree_empty_spec_is_single_node(tmp_path):
    spec = tmp_path / "empty.norm"
    spec.write_text("# leeg\n", encoding="utf-8")
    state = tmp_path / "state.json"
    state.write_text('{"assignments": {}}', encoding="utf-8")
    code, out, _ = run_cli("tree", str(spec), str(state), "--depth", "2")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["nodes"]) == 1


def test_tree_depth_zero_is_exit_2(tmp_path):
    state = tmp_path / "state.json"
    state.write_text('{"assignments": {}}', encoding="utf-8")
    code, _, err = run_cli("tree", spec_path("iit"), str(state), "--depth", "0")
    assert code == 2


def test_tree_output_is_the_wire_contract(tmp_path):
    state = tmp_path / "state.json"
    state.write_text(
        json.dumps(
            {
                "assignments": {
                    "registered-in-municipality": True,
                    "age": 30,
                    "long-term-low-income": True,
                    "single": True,
                    "child-at-home": True,
                    "income": 1000,
                    "wealth": 4000,
                },
                "clock": "2026-08-10",
            }
        ),
        encoding="utf-8",
    )
    code, out, _ = run_cli("tree", spec_path("iit"), str(state), "--depth", "2", "--json")
    assert code == 0
    doc = json.loads(out)
    for node in doc["nodes"]:
        assert set(node) == {"id", "parent", "act", "status", "motivationRequired", "digest"}
    allowed = [n["act"] for n in doc["nodes"] if n["status"] == "toegestaan" and n["parent"] == 0]
    assert allowed == ["grant-iit-single-parent"]


# --- serve ------------------------------------------------------------------------


def free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def test_serve_missing_config_is_exit_2():
    code, _, err = run_cli("serve", "--config", "/nope/none.toml")
    assert code == 2


def test_serve_missing_spec_is_exit_2(tmp_path):
    config = tmp_path / "conf.toml"
    config.write_text(
        f'data_dir = "{tmp_path / "data"}"\nspec = "/nope/none.norm"\n', encoding="utf-8"
    )
    code, _, err = run_cli("serve", "--config", str(config))
    assert code == 2
    assert "none.norm" in err


def test_serve_port_conflict_is_exit_2(tmp_path):
    port = free_port()
    blocker = socket.socket()
    blocker.bind(("0.0.0.0", port))
    blocker.listen(1)
    try:
        config = tmp_path / "conf.toml"
        config.write_text(
            f'data_dir = "{tmp_path / "data"}"\nport = {port}\n', encoding="utf-8"
        )
        code, _, err = run_cli("serve", "--config", str(config))
        assert code == 2
        assert "poort" in err
    finally:
        blocker.close()


def test_serve_answers_health_endpoint(tmp_path):
    port = free_port()
    config = tmp_path / "conf.toml"
    config.write_text(
        f'data_dir = "{tmp_path / "data"}"\nport = {port}\n\n'
        "[cases]\nseed_fixtures = false\n",
        encoding="utf-8",
    )
    proc = subprocess.Popen(
        [sys.executable, "-m", "normcase.cli", "serve", "--config", str(config)],
        stdout=subprocess.PIPE,
        stderr=subprocess.STDOUT,
    )
    try:
        deadline = time.time() + 15
        body = None
        while time.time() < deadline:
            try:
                with urllib.request.urlopen(
                    f"http://127.0.0.1:{port}/api/health", timeout=1
                ) as response:
                    body = json.loads(response.read())
                break
            except OSError:
                time.sleep(0.2)
        assert body is not None, "service never became healthy"
        assert body["status"] == "ok"
        assert body["acts"] == 7
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def test_data_dir_env_override(tmp_path, monkeypatch):
    from normcase.service.config import load_config

    monkeypatch.setenv("NORMCASE_DATA_DIR", str(tmp_path / "elders"))
    config = load_config(None)
    assert config.data_dir == tmp_path / "elders"
