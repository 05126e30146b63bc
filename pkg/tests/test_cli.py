import json
import math
import subprocess
import sys

import pytest

from filtration_sym.cli import main
from filtration_sym.suites import CSV_HEADER


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.startswith("{")]


def summary(out):
    return records(out)[-1]


def test_verify_group_passes(capsys):
    code, out, err = run(capsys, "verify-group", "--case", "g1", "--trials", "100", "--seed", "7")
    assert code == 0
    s = summary(out)
    assert s["record"] == "summary" and s["passed"] and s["failed"] == 0
    assert "wall_time" in err and "wall_time" not in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-group", "--case", "g1", "--trials", "1", "--seed", "3"],
        ["verify-action", "--case", "g2", "--field", "t + x^2", "--trials", "5", "--seed", "11"],
        ["verify-generators", "--case", "g3", "--n", "2", "--seed", "5"],
        ["case4", "--field", "x^2", "--eps-steps", "9"],
    ],
)
def test_reports_are_deterministic(capsys, argv):
    first = run(capsys, *argv)[1]
    second = run(capsys, *argv)[1]
    assert first == second and first


def test_entry_point_output_is_byte_identical():
    cmd = [sys.executable, "-m", "filtration_sym", "verify-group", "--case", "g3", "--n", "-1", "--trials", "50"]
    a = subprocess.run(cmd, capture_output=True, check=True)
    b = subprocess.run(cmd, capture_output=True, check=True)
    assert a.stdout == b.stdout and a.stdout


def test_seed_changes_inputs_but_not_verdict(capsys):
    a = run(capsys, "verify-group", "--case", "g2", "--trials", "20", "--seed", "1")
    b = run(capsys, "verify-group", "--case", "g2", "--trials", "20", "--seed", "2")
    assert a[0] == b[0] == 0 and a[1] != b[1]


def test_g3_requires_n(capsys):
    code, out, err = run(capsys, "verify-group", "--case", "g3")
    assert code == 2 and "--n" in err and out == ""


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify-group", "--case", "g4"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_parse_error_reports_position(capsys):
    code, out, err = run(capsys, "verify-action", "--case", "g1", "--field", "t +")
    assert code == 2 and "position 3" in err


def test_verify_action_identity_is_exact(capsys):
    code, out, _ = run(capsys, "verify-action", "--case", "g1", "--field", "t + x^2", "--trials", "10")
    assert code == 0
    identity = [r for r in records(out) if r.get("name", "").startswith("identity")]
    assert identity and all(r["value"] == 0 for r in identity)


def test_generator_eps_controls_verdict(capsys):
    code, out, _ = run(capsys, "verify-generators", "--case", "g2")
    assert code == 0
    checks = {r["name"]: r for r in records(out) if r["record"] == "check"}
    xi3 = [r for name, r in checks.items() if name.startswith("generator[xi3")]
    assert xi3[0]["value"] <= 1e-12  # only rounding in (f + eps) - (f - eps)
    assert all(r["value"] <= 1e-5 for r in checks.values())
    code, out, _ = run(capsys, "verify-generators", "--case", "g2", "--eps", "0.1")
    assert code == 1
    assert summary(out)["failed"] > 0  # well-formed report despite failures
    code, _, _ = run(capsys, "verify-generators", "--case", "g1", "--eps", "0")
    assert code == 2


def test_invariance_commands(capsys):
    code, out, _ = run(capsys, "invariance", "--case", "g1", "--k", "generic:p^3 + p", "--solution", "linear:3,4",
                       "--q", "2", "--t0", "1", "--x0", "-1", "--s0", "0.5")
    assert code == 0
    values = {r["name"]: r["value"] for r in records(out) if r["record"] == "check"}
    assert values == {"residual_before": 0, "residual_after": 0}
    code, out, _ = run(capsys, "invariance", "--case", "g2", "--k", "exp", "--solution", "sep-exp:1,1",
                       "--q", "2", "--r", "1", "--t0", "1", "--s0", "3", "--stencil")
    assert code == 0
    assert all(r["value"] <= 1e-6 for r in records(out) if r["record"] == "check")
    code, _, err = run(capsys, "invariance", "--case", "g2", "--k", "power", "--n", "1", "--solution", "sep-exp:1,1")
    assert code == 2 and "not a symmetry" in err
    code, _, err = run(capsys, "invariance", "--case", "g1", "--k", "exp", "--solution", "sep-exp:1,1", "--box", "0,1,-3,0")
    assert code == 2


def csv_rows(out):
    lines = out.splitlines()
    start = lines.index(CSV_HEADER)
    rows = []
    for line in lines[start + 1:]:
        if not line:
            break
        rows.append(dict(zip(CSV_HEADER.split(","), line.split(","))))
    return rows


def test_case4_line_sweep_flags_singular_row(capsys):
    code, out, _ = run(capsys, "case4", "--line", "1,1", "--eps-steps", "9", "--include", repr(3 * math.pi / 4))
    assert code == 0
    rows = csv_rows(out)
    singular = [r for r in rows if r["notes"] == "singular"]
    assert len(singular) == 1 and float(singular[0]["eps"]) == pytest.approx(3 * math.pi / 4)
    assert singular[0]["a_prime"] == ""
    first = rows[0]
    assert float(first["eps"]) == 0 and first["single_valued"] == "true"
    assert float(first["a_prime"]) == 1 and float(first["b_prime"]) == 1
    assert any(r["notes"] == "past_singularity" for r in rows)


def test_case4_field_sweep_reports_threshold(capsys, tmp_path):
    target = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "case4", "--field", "x^2", "--eps-min", "0", "--eps-max", "0.49", "--eps-steps", "50",
                       "--csv", str(target))
    assert code == 0
    assert CSV_HEADER not in out
    threshold = [r for r in records(out) if r.get("name") == "fold_threshold"][0]["value"]
    assert threshold == pytest.approx(math.atan(0.25), abs=1e-8)
    rows = csv_rows(target.read_text())
    flagged = [r for r in rows if r["notes"] == "fold_threshold"]
    assert len(flagged) == 1 and abs(float(flagged[0]["eps"]) - threshold) <= 0.005
    assert rows[0]["single_valued"] == "true"
    for r in rows:
        assert (r["single_valued"] == "true") == (float(r["eps"]) < threshold)


def test_case4_needs_one_source(capsys):
    assert run(capsys, "case4")[0] == 2
    assert run(capsys, "case4", "--line", "1,1", "--field", "x")[0] == 2
    assert run(capsys, "case4", "--line", "1")[0] == 2
