import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

import pytest

SQRT3 = math.sqrt(3.0)

TINY_SWEEP = [
    "sweep", "--class", "I",
    "--r-min", "0", "--r-max", "0.005", "--r-step", "0.0025",
    "--angle-min", "0", "--angle-max", "0", "--angle-step", "1",
]
CSV_HEADER = "class,r,angle_deg,nc_cost,route_cost,feasible,ca"
CSV_ROW_CENTER = "I,0.000000000,0.000000000,4.56772729,4.64002362,true,1.01582764"
CSV_ROW_NEXT = "I,0.002500000,0.000000000,4.56772943,4.6391769,true,1.01564179"


def run_cli(*args, expect=0):
    out = subprocess.run(
        [sys.executable, "-m", "sifca", *map(str, args)],
        capture_output=True,
        text=True,
    )
    assert out.returncode == expect, (
        f"exit {out.returncode}, wanted {expect}\nstderr: {out.stderr[:2000]}"
    )
    return out


# ---------------------------------------------------------------------------
# single point


def test_ca_regular_class_ii():
    out = run_cli("ca", "--class", "II", "--r", "1", "--angle", "0")
    payload = json.loads(out.stdout)
    assert payload["class"] == "II"
    assert payload["feasible"] is True
    assert payload["ca"] == 1.01582764
    assert payload["nc_cost"] == 4.56772729
    assert payload["route_cost"] == 4.64002362
    assert "violations" not in payload


def test_ca_center_class_i():
    out = run_cli("ca", "--class", "I", "--r", "0", "--angle", "0")
    payload = json.loads(out.stdout)
    assert payload["ca"] == 1.01582764


def test_ca_folds_angle():
    a = json.loads(run_cli("ca", "--class", "I", "--r", "0.2", "--angle", "70").stdout)
    b = json.loads(run_cli("ca", "--class", "I", "--r", "0.2", "--angle", "2").stdout)
    assert a["ca"] == b["ca"]
    assert a["nc_cost"] == b["nc_cost"]


def test_ca_infeasible_exit_2():
    out = run_cli("ca", "--class", "I", "--r", "0.48", "--angle", "0", expect=2)
    payload = json.loads(out.stdout)
    assert payload["feasible"] is False
    assert "ca" not in payload
    names = [v["constraint"] for v in payload["violations"]]
    assert "angle_AOB" in names
    for v in payload["violations"]:
        assert v["measured"] > v["threshold"]


def test_ca_outside_circle_names_radius():
    out = run_cli("ca", "--class", "I", "--r", "1.2", "--angle", "0", expect=2)
    names = [v["constraint"] for v in json.loads(out.stdout)["violations"]]
    assert names == ["source_inside_circumcircle"]


def test_ca_rejects_negative_radius():
    out = run_cli("ca", "--class", "I", "--r", "-1", "--angle", "0", expect=1)
    assert out.stderr.strip()


def test_ca_out_file_matches_stdout(tmp_path):
    target = tmp_path / "point.json"
    direct = run_cli("ca", "--class", "II", "--r", "1", "--angle", "0")
    run_cli("ca", "--class", "II", "--r", "1", "--angle", "0", "--out", target)
    assert target.read_text() == direct.stdout


# ---------------------------------------------------------------------------
# sweeps


def test_sweep_csv_frozen_rows():
    out = run_cli(*TINY_SWEEP)
    lines = out.stdout.splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[1] == CSV_ROW_CENTER
    assert lines[2] == CSV_ROW_NEXT
    assert len(lines) == 4
    assert out.stdout.endswith("\n")


def test_sweep_deterministic_and_out_file(tmp_path):
    first = run_cli(*TINY_SWEEP)
    second = run_cli(*TINY_SWEEP)
    assert first.stdout == second.stdout
    target = tmp_path / "sweep.csv"
    run_cli(*TINY_SWEEP, "--out", target)
    assert target.read_text() == first.stdout


def test_sweep_csv_infeasible_cells_empty_ca():
    out = run_cli(
        "sweep", "--class", "I",
        "--r-min", "0.46", "--r-max", "0.48", "--r-step", "0.01",
        "--angle-min", "0", "--angle-max", "0", "--angle-step", "1",
    )
    rows = [line.split(",") for line in out.stdout.splitlines()[1:]]
    assert [(row[5], row[6] == "") for row in rows] == [
        ("true", False),
        ("false", True),
        ("false", True),
    ]


def test_sweep_class_ii_center_row():
    out = run_cli(
        "sweep", "--class", "II",
        "--r-min", "0", "--r-max", "0", "--r-step", "1",
        "--angle-min", "0", "--angle-max", "0", "--angle-step", "1",
    )
    lines = out.stdout.splitlines()
    assert lines[1] == "II,0.000000000,0.000000000,3.74063637,3.65418183,false,"


def test_sweep_json():
    out = run_cli(
        "sweep", "--class", "I",
        "--r-min", "0.46", "--r-max", "0.48", "--r-step", "0.01",
        "--angle-min", "0", "--angle-max", "36", "--angle-step", "36",
        "--format", "json",
    )
    payload = json.loads(out.stdout)
    assert payload["class"] == "I"
    samples = payload["samples"]
    assert len(samples) == 6
    by_cell = {(s["r"], s["angle_deg"]): s for s in samples}
    assert by_cell[(0.46, 0.0)]["feasible"] is True
    assert by_cell[(0.48, 0.0)]["feasible"] is False
    assert by_cell[(0.48, 0.0)]["ca"] is None
    assert by_cell[(0.46, 0.0)]["ca"] is not None


def test_sweep_rejects_bad_grid():
    out = run_cli(
        "sweep", "--class", "I", "--r-min", "0.4", "--r-max", "0.1", expect=1
    )
    assert out.stderr.strip()


# ---------------------------------------------------------------------------
# region summaries


def test_region_class_i_json():
    out = run_cli("region", "--class", "I")
    payload = json.loads(out.stdout)
    assert payload["class"] == "I"
    assert payload["empty"] is False
    assert payload["maxCA"] == 1.01582764
    assert payload["argmax"] == {"r": 0.0, "angleDeg": 0.0}
    assert payload["meanBoundaryRadius"] == 0.229837853
    assert payload["maxBoundaryDeviation"] == 0.0106705891
    assert "minCADistance" not in payload


def test_region_class_i_svg():
    out = run_cli("region", "--class", "I", "--format", "svg")
    root = ET.fromstring(out.stdout)
    assert root.tag.endswith("svg")
    tags = [el.tag.split("}")[-1] for el in root.iter()]
    assert tags.count("polygon") >= 1
    assert tags.count("circle") >= 6  # five sinks plus the circumcircle


# ---------------------------------------------------------------------------
# tree instances from a points file


def _write_points(tmp_path, name, pts, header=""):
    body = header + "\n".join(f"{x} {y}" for x, y in pts) + "\n"
    target = tmp_path / name
    target.write_text(body)
    return target


def test_esmt_equilateral(tmp_path):
    pts = [(0.0, 0.0), (1.0, 0.0), (0.5, SQRT3 / 2.0)]
    path = _write_points(tmp_path, "tri.txt", pts, header="# unit triangle\n")
    payload = json.loads(run_cli("esmt", path).stdout)
    assert payload["totalCost"] == 1.73205081
    assert len(payload["terminals"]) == 3
    assert len(payload["steinerPoints"]) == 1
    hub_x, hub_y = payload["steinerPoints"][0]
    assert hub_x == 0.5
    assert math.isclose(hub_y, SQRT3 / 6.0, abs_tol=1e-7)
    assert len(payload["edges"]) == 3
    for edge in payload["edges"]:
        assert set(edge) == {"i", "j", "length"}


def test_esmt_square(tmp_path):
    pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    path = _write_points(tmp_path, "sq.txt", pts)
    payload = json.loads(run_cli("esmt", path).stdout)
    assert payload["totalCost"] == 2.73205081
    assert len(payload["steinerPoints"]) == 2


def test_esmt_svg(tmp_path):
    pts = [(0.0, 0.0), (1.0, 0.0), (0.5, SQRT3 / 2.0)]
    path = _write_points(tmp_path, "tri.txt", pts)
    out = run_cli("esmt", path, "--format", "svg")
    root = ET.fromstring(out.stdout)
    tags = [el.tag.split("}")[-1] for el in root.iter()]
    assert tags.count("line") == 3
    assert tags.count("circle") == 4  # three terminals, one hub


def test_esmt_bad_file_reports_line(tmp_path):
    target = tmp_path / "bad.txt"
    target.write_text("0 0\n1 0\noops\n")
    out = run_cli("esmt", target, expect=1)
    assert "bad.txt:3" in out.stderr


def test_esmt_duplicate_points(tmp_path):
    path = _write_points(tmp_path, "dup.txt", [(0, 0), (1, 0), (0, 0)])
    out = run_cli("esmt", path, expect=1)
    assert out.stderr.strip()


def test_esmt_missing_file():
    run_cli("esmt", "/nonexistent/points.txt", expect=1)


def test_esmt_wrong_count(tmp_path):
    path = _write_points(tmp_path, "one.txt", [(0, 0)])
    out = run_cli("esmt", path, expect=1)
    assert out.stderr.strip()


# ---------------------------------------------------------------------------
# plot


def test_plot_svg():
    out = run_cli(
        "plot", "--class", "I",
        "--r-min", "0", "--r-max", "0.45", "--r-step", "0.045",
        "--angle-min", "0", "--angle-max", "36", "--angle-step", "6",
    )
    root = ET.fromstring(out.stdout)
    assert root.tag.endswith("svg")
    tags = [el.tag.split("}")[-1] for el in root.iter()]
    assert tags.count("polygon") >= 60  # one wedge per grid cell


# ---------------------------------------------------------------------------
# the self-check report


@pytest.mark.slow
def test_validate_report():
    out = run_cli("validate", expect=1)
    report = out.stdout
    assert "result:" in report
    assert "FAIL" in report
    # known informational notes about the published-formula quirks
    assert "4-3" in report
    assert "5-2" in report
    assert "undercut" in report
    ok_lines = [l for l in report.splitlines() if l.startswith("ok")]
    assert len(ok_lines) >= 4


@pytest.mark.slow
def test_validate_fault_injection():
    out = run_cli("validate", "--perturb-case", "1:-0.01", expect=1)
    fail_lines = [l for l in out.stdout.splitlines() if l.startswith("FAIL")]
    assert any("case 1" in l for l in fail_lines)


def test_validate_rejects_bad_perturbation():
    run_cli("validate", "--perturb-case", "7:0.1", expect=1)
    run_cli("validate", "--perturb-case", "nonsense", expect=1)


# ---------------------------------------------------------------------------
# parser behaviour


def test_no_command_exits_1():
    run_cli(expect=1)


def test_unknown_command_exits_1():
    run_cli("frobnicate", expect=1)


def test_missing_required_flag_exits_1():
    run_cli("ca", "--class", "I", "--r", "0.1", expect=1)
