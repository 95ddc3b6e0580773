import json

import pytest
from click.testing import CliRunner

from toricpos import WorkspaceError, load_workspace, parse_workspace, serialize_workspace
from toricpos.cli import main
from toricpos.workspace import BUILTIN_WORKSPACES


def test_builtin_workspaces_load():
    for name in ("p1", "p2", "p1xp1", "totaro-x"):
        ws = load_workspace(name)
        assert ws.fan.properties.complete
        assert "H" in ws.divisors


def test_totaro_workspace_contents():
    ws = load_workspace("totaro-x")
    assert len(ws.fan.rays) == 6
    assert len(ws.fan.max_cones) == 8
    assert set(ws.divisors) == {"F1", "F2", "F3", "F4", "F5", "F6", "H", "L"}
    assert ws.divisors["L"].coeffs == (3, 3, -1, -1, -1, -1)
    assert ws.sign_convention == "paper"


def test_roundtrip_is_identity():
    for name in BUILTIN_WORKSPACES:
        ws = load_workspace(name)
        text = serialize_workspace(ws)
        again = parse_workspace(text)
        assert serialize_workspace(again) == text


def test_divisor_vector_length_mismatch_rejected():
    data = json.loads(serialize_workspace(load_workspace("totaro-x")))
    data["divisors"]["bad"] = [1, 2, 3, 4, 5]
    with pytest.raises(WorkspaceError, match="6 coefficients"):
        parse_workspace(json.dumps(data))


def test_unknown_fields_rejected():
    data = json.loads(serialize_workspace(load_workspace("p1")))
    data["surprise"] = 1
    with pytest.raises(WorkspaceError, match="unknown field"):
        parse_workspace(json.dumps(data))
    data = json.loads(serialize_workspace(load_workspace("p1")))
    data["fan"]["extra"] = []
    with pytest.raises(WorkspaceError, match="unknown field"):
        parse_workspace(json.dumps(data))


def test_degenerate_fan_rejected_with_reason():
    data = json.loads(serialize_workspace(load_workspace("totaro-x")))
    data["fan"]["max_cones"][3] = [0, 3, 5]  # the degenerate printed triple
    with pytest.raises(WorkspaceError, match="not simplicial"):
        parse_workspace(json.dumps(data))


def test_divisor_expressions():
    ws = load_workspace("totaro-x")
    assert ws.divisor("L").coeffs == (3, 3, -1, -1, -1, -1)
    assert ws.divisor("-L").coeffs == (-3, -3, 1, 1, 1, 1)
    assert ws.divisor("F1+F2").coeffs == (1, 1, 0, 0, 0, 0)
    assert ws.divisor("2L - 3H").coeffs == (3, 3, -5, -5, -5, -5)
    assert ws.divisor("1/2H").coeffs[0].denominator == 2
    with pytest.raises(WorkspaceError, match="unknown divisor"):
        ws.divisor("Q")
    with pytest.raises(WorkspaceError):
        ws.divisor("L L")


def run_cli(*args):
    return CliRunner().invoke(main, list(args))


def test_cli_validate():
    result = run_cli("validate", "-w", "totaro-x")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["result"]["smooth"] is True
    assert payload["result"]["picard_rank"] == 3
    assert payload["sign_convention"] == "paper"


def test_cli_cohomology_matches_serre_value():
    result = run_cli("cohomology", "-w", "p2", "--divisor=-4H")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["result"]["dims"] == [0, 0, 3]


def test_cli_qample_certificate():
    result = run_cli("qample", "-w", "totaro-x", "-d", "L", "--q", "1")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["result"]["verdict"] is False
    assert payload["result"]["certificate"]["subset"] == ["f3", "f4", "f5", "f6"]


def test_cli_qample_both_modes():
    result = run_cli("qample", "-w", "totaro-x", "-d", "L", "--q", "1", "--mode", "both")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["result"]["scan"]["obstructed_pattern"] is True
    assert payload["result"]["scan"]["realized"] == [1, 1, 2]


def test_cli_connectivity():
    result = run_cli("connectivity", "-w", "totaro-x", "-d", "F1+F2")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["result"]["applies"] is True
    assert payload["result"]["conclusion"] == "not 1-ample"


def test_cli_restrict():
    result = run_cli("restrict", "-w", "totaro-x", "-d", "L", "-c", "f1")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["result"]["class"] == [1, -5]
    assert payload["result"]["witness_m"] == [0, 0, -3]
    assert payload["result"]["negative_restriction_big"] is False


def test_cli_qnef():
    result = run_cli("qnef", "-w", "totaro-x", "-d", "L", "--q", "1")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["result"]["verdict"] is True
    assert payload["result"]["scope"] == "torus-invariant"


def test_cli_baselocus():
    result = run_cli("baselocus", "-w", "totaro-x", "-d", "H", "--kind", "stable")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["result"]["empty"] is True


def test_cli_chambers_with_plot(tmp_path):
    plot = tmp_path / "chambers.svg"
    result = run_cli(
        "chambers", "-w", "totaro-x", "--dir1", "H", "--dir2", "L",
        "--resolution", "1", "--emit-plot", str(plot),
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    samples = {tuple(s["coords"]): s for s in payload["result"]["samples"]}
    assert samples[(1, 0)]["smallest_q"] == 0
    assert samples[(0, 1)]["smallest_q"] == 2
    assert samples[(-1, 0)]["smallest_q"] == 3
    assert samples[(0, 1)]["pseudoeffective"] is False
    assert plot.exists() and plot.read_text().startswith("<svg")


def test_cli_reports_are_byte_stable():
    first = run_cli("classify", "-w", "totaro-x", "-d", "L")
    second = run_cli("classify", "-w", "totaro-x", "-d", "L")
    assert first.output == second.output


def test_cli_timings_flag_is_marked_unstable():
    result = run_cli("classify", "-w", "totaro-x", "-d", "L", "--timings")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["timings"]["byte_stable"] is False
    assert payload["timings"]["wall_seconds"] >= 0


def test_cli_input_error_exit_code():
    result = run_cli("validate", "-w", "no-such-workspace")
    assert result.exit_code == 2
    result = run_cli("cohomology", "-w", "totaro-x", "-d", "UNKNOWN")
    assert result.exit_code == 2


def test_cli_replicate_paper_passes_within_a_minute():
    import time

    start = time.monotonic()
    result = run_cli("replicate-paper")
    elapsed = time.monotonic() - start
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["result"]["all_pass"] is True
    assert len(payload["result"]["checks"]) >= 20
    assert elapsed < 60
