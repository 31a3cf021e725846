import json
import math
import subprocess
import sys

import numpy as np
import pytest

from schurkit.cli import main

STEP = ["--step", "2e-3"]  # coarser grid keeps the CLI suite quick


def write_spec(path, payload) -> str:
    path.write_text(json.dumps(payload, indent=1))
    return str(path)


@pytest.fixture
def specs(tmp_path):
    def make(name, payload):
        return write_spec(tmp_path / name, payload)

    return {
        "circle": make("circle.json", {
            "geometry": "plane",
            "length": math.pi,
            "curvature": {"preset": "constant", "value": 1.0},
        }),
        "square": make("square.json", {
            "geometry": "plane",
            "length": 4.0,
            "curvature": {"preset": "constant", "value": 0.0},
            "jumps": [[0.5, math.pi / 2], [1.5, math.pi / 2],
                      [2.5, math.pi / 2], [3.5, math.pi / 2]],
        }),
        "line": make("line.json", {
            "geometry": "space3",
            "length": math.pi,
            "curvature": {"preset": "constant", "value": 0.0},
        }),
        "helix": make("helix.json", {
            "geometry": "space3",
            "length": math.pi,
            "curvature": {"preset": "constant", "value": 0.5},
            "torsion": {"preset": "constant", "value": 0.5},
        }),
        "steep_helix": make("steep_helix.json", {
            "geometry": "space3",
            "length": math.pi,
            "curvature": {"preset": "constant", "value": 2.0},
            "torsion": {"preset": "constant", "value": 0.5},
        }),
        "sphere_small": make("sphere_small.json", {
            "geometry": "sphere",
            "length": math.pi / 2,
            "curvature": {"preset": "constant", "value": 1.0},
        }),
        "sphere_great": make("sphere_great.json", {
            "geometry": "sphere",
            "length": math.pi / 2,
            "curvature": {"preset": "constant", "value": 0.0},
        }),
        "mink_bent": make("mink_bent.json", {
            "geometry": "minkowski2",
            "length": 1.0,
            "curvature": {"preset": "constant", "value": 1.0},
        }),
        "mink_spun": make("mink_spun.json", {
            "geometry": "minkowski3",
            "length": 1.0,
            "curvature": {"preset": "constant", "value": 0.5},
            "spin": {"preset": "linear", "intercept": 0.0, "slope": 1.0},
        }),
        "overturned": make("overturned.json", {
            "geometry": "plane",
            "length": 3.0 * math.pi,
            "curvature": {"preset": "constant", "value": 1.0},
        }),
    }


def read_csv(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


# ---------------------------------------------------------------------------
# reconstruct
# ---------------------------------------------------------------------------

def test_reconstruct_circle_closes(tmp_path, specs):
    out = tmp_path / "circle.csv"
    spec = write_spec(tmp_path / "full_circle.json", {
        "geometry": "plane",
        "length": 2.0 * math.pi,
        "curvature": {"preset": "constant", "value": 1.0},
    })
    assert main(["reconstruct", spec, "-o", str(out), *STEP]) == 0
    header, rows = read_csv(out)
    assert header[:3] == ["s", "x", "y"]
    first = np.array([float(v) for v in rows[0][1:3]])
    last = np.array([float(v) for v in rows[-1][1:3]])
    assert np.linalg.norm(last - first) <= 1e-5


def test_reconstruct_square_marks_jumps(tmp_path, specs):
    out = tmp_path / "square.csv"
    assert main(["reconstruct", specs["square"], "-o", str(out), *STEP]) == 0
    header, rows = read_csv(out)
    flags = [r[header.index("jump")] for r in rows]
    assert flags.count("1") == 4
    # flagged rows duplicate the next row's s and position
    idx = [i for i, f in enumerate(flags) if f == "1"]
    for i in idx:
        assert rows[i][0] == rows[i + 1][0]
        assert rows[i][1:3] == rows[i + 1][1:3]


def test_reconstruct_helix_curvature_column(tmp_path, specs):
    out = tmp_path / "helix.csv"
    assert main(["reconstruct", specs["helix"], "-o", str(out), *STEP]) == 0
    header, rows = read_csv(out)
    col = header.index("curvature")
    vals = np.array([float(r[col]) for r in rows])
    assert np.max(np.abs(vals - 0.5)) < 1e-4


def test_reconstruct_minkowski(tmp_path, specs):
    out = tmp_path / "mink.csv"
    assert main(["reconstruct", specs["mink_bent"], "-o", str(out), *STEP]) == 0
    header, _ = read_csv(out)
    assert header[:3] == ["s", "t", "x"]


# ---------------------------------------------------------------------------
# project
# ---------------------------------------------------------------------------

def test_project_emits_table(tmp_path, specs):
    out = tmp_path / "proj.csv"
    assert main(["project", specs["sphere_small"], "-o", str(out), *STEP]) == 0
    header, rows = read_csv(out)
    assert header[:3] == ["s", "R", "tau"]
    taus = np.array([float(r[2]) for r in rows])
    assert np.all(np.diff(taus) > 0)


def test_project_with_companion(tmp_path, specs):
    out = tmp_path / "proj2.csv"
    code = main([
        "project", specs["sphere_small"], "--companion", specs["sphere_great"],
        "-o", str(out), *STEP,
    ])
    assert code == 0
    header, _ = read_csv(out)
    assert "k_companion" in header


def test_project_rejects_plane_spec(tmp_path, specs):
    assert main(["project", specs["circle"], "-o", str(tmp_path / "x.csv"), *STEP]) == 2


# ---------------------------------------------------------------------------
# verify: exit-code contract
# ---------------------------------------------------------------------------

def test_verify_monotonicity_passes(tmp_path, specs):
    rep = tmp_path / "rep.json"
    code = main([
        "verify", "--theorem", "monotonicity", specs["circle"], specs["line"],
        "--report", str(rep), *STEP,
    ])
    assert code == 0
    data = json.loads(rep.read_text())
    assert data["conclusion"]["passed"] is True
    assert all(h["passed"] for h in data["hypotheses"])
    mono = data["conclusion"]["checks"][0]
    assert mono["slack"] >= -1e-6


def test_verify_hypothesis_violation_censused(tmp_path, specs):
    rep = tmp_path / "rep.json"
    code = main([
        "verify", "--theorem", "monotonicity", specs["circle"], specs["steep_helix"],
        "--report", str(rep), *STEP,
    ])
    assert code == 0  # violated hypotheses are censused, not an error
    data = json.loads(rep.read_text())
    assert data["conclusion"]["evaluated"] is False
    names = [h["name"] for h in data["hypotheses"] if not h["passed"]]
    assert "curvature_dominance" in names


def test_verify_schema_error_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"geometry": "plane", "length": 1, "curvature": {"preset": "constant"}, "bogus": 1}')
    assert main(["verify", "--theorem", "budget", str(bad)]) == 2


def test_verify_malformed_json_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", "--theorem", "budget", str(bad)]) == 2


def test_verify_geometry_mismatch_exit_2(specs):
    assert main(["verify", "--theorem", "spherical", specs["circle"], specs["line"]]) == 2


def test_verify_budget_overturned_exit_1(tmp_path, specs):
    rep = tmp_path / "rep.json"
    code = main(["verify", "--theorem", "budget", specs["overturned"], "--report", str(rep), *STEP])
    assert code == 1
    data = json.loads(rep.read_text())
    assert data["conclusion"]["passed"] is False
    assert data["conclusion"]["checks"][0]["slack"] < -math.pi + 1e-6


def test_verify_budget_square_exact(tmp_path, specs):
    rep = tmp_path / "rep.json"
    assert main(["verify", "--theorem", "budget", specs["square"], "--report", str(rep), *STEP]) == 0
    data = json.loads(rep.read_text())
    assert data["conclusion"]["checks"][0]["slack"] == 0.0


def test_verify_chord_includes_expansion(tmp_path, specs):
    rep = tmp_path / "rep.json"
    code = main([
        "verify", "--theorem", "chord", specs["circle"], specs["helix"],
        "--report", str(rep), "--pairs", "20", *STEP,
    ])
    assert code == 0
    data = json.loads(rep.read_text())
    names = [c["name"] for c in data["conclusion"]["checks"]]
    assert {"chord", "nested_chord", "expansion_bound"} <= set(names)


def test_verify_global_monotonicity_pivot_flag(tmp_path, specs):
    rep = tmp_path / "rep.json"
    code = main([
        "verify", "--theorem", "global-monotonicity", specs["circle"], specs["line"],
        "--s-star", "0.8", "--report", str(rep), *STEP,
    ])
    assert code == 0


def test_verify_spherical(tmp_path, specs):
    rep = tmp_path / "rep.json"
    code = main([
        "verify", "--theorem", "spherical", specs["sphere_small"], specs["sphere_great"],
        "--report", str(rep), *STEP,
    ])
    assert code == 0
    data = json.loads(rep.read_text())
    assert data["config"]["plane"]["auto"] is True
    by_name = {c["name"]: c for c in data["conclusion"]["checks"]}
    assert by_name["spherical_chord"]["slack"] >= -1e-6


def test_verify_minkowski(tmp_path, specs):
    rep = tmp_path / "rep.json"
    code = main([
        "verify", "--theorem", "minkowski", specs["mink_bent"], specs["mink_spun"],
        "--s-star", "0.5", "--report", str(rep), *STEP,
    ])
    assert code == 0
    data = json.loads(rep.read_text())
    by_name = {c["name"]: c for c in data["conclusion"]["checks"]}
    assert by_name["reversed_chord"]["slack"] >= -1e-6
    assert by_name["reversed_cauchy_schwarz"]["slack"] >= -1e-9


def test_verify_range_flag(tmp_path, specs):
    rep = tmp_path / "rep.json"
    code = main([
        "verify", "--theorem", "monotonicity", specs["circle"], specs["helix"],
        "--range", "0.5:2.5", "--report", str(rep), *STEP,
    ])
    assert code == 0
    data = json.loads(rep.read_text())
    assert data["config"]["range"] == [0.5, 2.5]


def test_verify_bad_range_exit_2(specs):
    assert main([
        "verify", "--theorem", "monotonicity", specs["circle"], specs["helix"],
        "--range", "2.5:0.5",
    ]) == 2


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def test_sweep_circle_vs_line(tmp_path, specs):
    out = tmp_path / "sweep.csv"
    rep = tmp_path / "agg.json"
    code = main([
        "sweep", "--theorem", "monotonicity", specs["circle"], specs["line"],
        "--grid", "6", "-o", str(out), "--report", str(rep), *STEP,
    ])
    assert code == 0
    header, rows = read_csv(out)
    assert len(rows) == 15  # 6 choose 2 ordered pairs
    passed_col = header.index("passed")
    assert all(r[passed_col] == "1" for r in rows)
    data = json.loads(rep.read_text())
    assert data["conclusion"]["passed"] is True


def test_sweep_needs_windowed_theorem(tmp_path, specs):
    assert main([
        "sweep", "--theorem", "spherical", specs["sphere_small"], specs["sphere_great"],
        "--grid", "4", "-o", str(tmp_path / "x.csv"),
    ]) == 2


# ---------------------------------------------------------------------------
# determinism
# ---------------------------------------------------------------------------

def test_reports_are_byte_identical(tmp_path, specs):
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    argv = ["verify", "--theorem", "chord", specs["circle"], specs["helix"], *STEP]
    assert main(argv + ["--report", str(r1)]) == 0
    assert main(argv + ["--report", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()


def test_sweep_outputs_byte_identical(tmp_path, specs):
    outs = []
    for name in ("a", "b"):
        out = tmp_path / f"{name}.csv"
        rep = tmp_path / f"{name}.json"
        main([
            "sweep", "--theorem", "monotonicity", specs["circle"], specs["line"],
            "--grid", "4", "-o", str(out), "--report", str(rep), *STEP,
        ])
        outs.append((out.read_bytes(), rep.read_bytes()))
    assert outs[0] == outs[1]


def test_module_entry_point(tmp_path, specs):
    rep = tmp_path / "rep.json"
    proc = subprocess.run(
        [sys.executable, "-m", "schurkit", "verify", "--theorem", "budget",
         specs["circle"], "--report", str(rep), *STEP],
        capture_output=True,
    )
    assert proc.returncode == 0
    assert json.loads(rep.read_text())["check"] == "budget"


def test_verify_seed_env_echoed(tmp_path, specs, monkeypatch):
    monkeypatch.setenv("SCHURKIT_SEED", "7")
    rep = tmp_path / "rep.json"
    code = main([
        "verify", "--theorem", "chord", specs["circle"], specs["helix"],
        "--report", str(rep), "--pairs", "10", *STEP,
    ])
    assert code == 0
    assert json.loads(rep.read_text())["config"]["seed"] == 7


def test_verify_plane_vs_plane_identical(tmp_path, specs):
    rep = tmp_path / "rep.json"
    code = main([
        "verify", "--theorem", "monotonicity", specs["circle"], specs["circle"],
        "--report", str(rep), *STEP,
    ])
    assert code == 0
    data = json.loads(rep.read_text())
    mono = data["conclusion"]["checks"][0]
    assert abs(mono["slack"]) < 1e-9  # identical curves: exact equality


def test_verify_minkowski_plane_pair(tmp_path, specs):
    flat = write_spec(tmp_path / "mink_flat.json", {
        "geometry": "minkowski2",
        "length": 1.0,
        "curvature": {"preset": "constant", "value": 0.5},
    })
    rep = tmp_path / "rep.json"
    code = main([
        "verify", "--theorem", "minkowski", specs["mink_bent"], flat,
        "--report", str(rep), *STEP,
    ])
    assert code == 0


def test_verify_spherical_explicit_plane(tmp_path, specs):
    rep = tmp_path / "rep.json"
    code = main([
        "verify", "--theorem", "spherical", specs["sphere_small"], specs["sphere_great"],
        "--plane", "0.6,0.0,0.8:1.0", "--report", str(rep), *STEP,
    ])
    assert code == 0
    data = json.loads(rep.read_text())
    assert data["config"]["plane"]["auto"] is False


def test_verify_bad_plane_flag_exit_2(specs):
    code = main([
        "verify", "--theorem", "spherical", specs["sphere_small"], specs["sphere_great"],
        "--plane", "nonsense",
    ])
    assert code == 2


def test_tabulated_curvature_spec(tmp_path):
    spec = write_spec(tmp_path / "tab.json", {
        "geometry": "plane",
        "length": 2.0,
        "curvature": {"samples": [[0.0, 1.0], [1.0, 0.5], [2.0, 1.0]]},
    })
    out = tmp_path / "tab.csv"
    assert main(["reconstruct", spec, "-o", str(out), *STEP]) == 0
    header, rows = read_csv(out)
    col = header.index("curvature")
    mid = min(rows, key=lambda r: abs(float(r[0]) - 1.0))
    assert abs(float(mid[col]) - 0.5) < 1e-3


def test_reconstruct_sphere_table(tmp_path, specs):
    out = tmp_path / "sphere.csv"
    assert main(["reconstruct", specs["sphere_small"], "-o", str(out), *STEP]) == 0
    header, rows = read_csv(out)
    assert header[:4] == ["s", "x", "y", "z"]
    pos = np.array([[float(v) for v in r[1:4]] for r in rows])
    assert np.max(np.abs(np.linalg.norm(pos, axis=1) - 1.0)) < 1e-9
