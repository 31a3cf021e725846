"""Batch front-end: ingest curve specs, run pipelines, emit reports.

Curve specifications are JSON files (schema below); verification reports are
JSON, sample tables are CSV. Reports are byte-for-byte deterministic for
identical inputs and flags.

Spec schema (unknown fields are rejected)::

    {
      "geometry": "plane" | "space3" | "sphere" | "minkowski2" | "minkowski3",
      "length": <float>,
      "curvature": {"preset": "constant", "value": k}
                 | {"preset": "linear", "intercept": a, "slope": b}
                 | {"preset": "sinusoidal", "offset": a, "amplitude": b,
                    "frequency": w, "phase": p}
                 | {"samples": [[s, k], ...]},
      "jumps": [[s_j, alpha_j], ...],           # space3 entries may append a
                                                 # rotation direction [dx,dy,dz]
      "initial": {...},                          # per-geometry start data
      "torsion": {...},                          # space3 only, curvature-like
      "spin": {...},                             # minkowski3 only
      "convex": true                             # plane only, default true
    }

Exit codes: 0 pass (or hypothesis-violation censused), 1 conclusion slack
below -tol with hypotheses satisfied, 2 input/schema error, 3 numeric
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .curves import (
    CurvatureProfile,
    Jump,
    check_convex_budget,
    constant_curvature,
    curvature_magnitude,
    embed_plane_curve,
    linear_curvature,
    reconstruct_plane,
    reconstruct_space_profile,
    sinusoidal_curvature,
    tabulated_curvature,
)
from .errors import SchurkitError, SpecError
from .minkowski import (
    embed_timelike_2d,
    reconstruct_timelike_2d,
    reconstruct_timelike_3d,
    reversed_chord_inequality,
    timelike_monotonicity,
)
from .numerics import SampledFunction, StepControl, unit
from .reports import Census, _json_float
from .schur import (
    chord_inequality,
    expansion_module_check,
    full_range_monotonicity,
    monotonicity_profile,
    nested_chord_inequality,
)
from .sphere import (
    ProjectionConfig,
    auto_projection_config,
    geodesic_curvature_of,
    project_pair,
    reconstruct_spherical,
    spherical_schur_verify,
)

GEOMETRIES = ("plane", "space3", "sphere", "minkowski2", "minkowski3")
THEOREMS = (
    "budget",
    "monotonicity",
    "global-monotonicity",
    "chord",
    "spherical",
    "minkowski",
)


# ---------------------------------------------------------------------------
# spec parsing
# ---------------------------------------------------------------------------

def _require_keys(d: dict, allowed: dict[str, bool], where: str) -> None:
    if not isinstance(d, dict):
        raise SpecError(f"{where}: expected an object, got {type(d).__name__}")
    unknown = sorted(set(d) - set(allowed))
    if unknown:
        raise SpecError(f"{where}: unknown field(s) {unknown}")
    missing = [k for k, required in allowed.items() if required and k not in d]
    if missing:
        raise SpecError(f"{where}: missing required field(s) {missing}")


def _number(value, where: str) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise SpecError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _vector(value, n: int, where: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != n:
        raise SpecError(f"{where}: expected a list of {n} numbers")
    return np.array([_number(v, where) for v in value])


def curvature_from_spec(d, where: str):
    _require_keys(
        d,
        {"preset": False, "value": False, "intercept": False, "slope": False,
         "offset": False, "amplitude": False, "frequency": False, "phase": False,
         "samples": False},
        where,
    )
    if "samples" in d:
        if "preset" in d:
            raise SpecError(f"{where}: give either a preset or samples, not both")
        return tabulated_curvature(d["samples"])
    preset = d.get("preset")
    if preset == "constant":
        return constant_curvature(_number(d.get("value", 0.0), f"{where}.value"))
    if preset == "linear":
        return linear_curvature(
            _number(d.get("intercept", 0.0), f"{where}.intercept"),
            _number(d.get("slope", 0.0), f"{where}.slope"),
        )
    if preset == "sinusoidal":
        return sinusoidal_curvature(
            _number(d.get("offset", 0.0), f"{where}.offset"),
            _number(d.get("amplitude", 0.0), f"{where}.amplitude"),
            _number(d.get("frequency", 1.0), f"{where}.frequency"),
            _number(d.get("phase", 0.0), f"{where}.phase"),
        )
    raise SpecError(f"{where}: unknown curvature preset {preset!r}")


def _jumps_from_spec(entries, length: float, geometry: str, where: str) -> tuple[Jump, ...]:
    if entries is None:
        return ()
    if geometry.startswith("minkowski") and entries:
        raise SpecError(f"{where}: jumps are not supported for {geometry} curves")
    if not isinstance(entries, list):
        raise SpecError(f"{where}: jumps must be a list of [s, alpha] entries")
    jumps = []
    for i, e in enumerate(entries):
        loc = f"{where}[{i}]"
        if not isinstance(e, list) or len(e) not in (2, 3):
            raise SpecError(f"{loc}: expected [s, alpha] (space3 may append a direction)")
        s_j = _number(e[0], f"{loc}.s")
        alpha = _number(e[1], f"{loc}.alpha")
        direction = None
        if len(e) == 3:
            if geometry != "space3":
                raise SpecError(f"{loc}: a rotation direction is only valid for space3")
            direction = tuple(_vector(e[2], 3, f"{loc}.direction"))
        if not 0.0 < s_j < length:
            raise SpecError(f"{loc}: jump location {s_j} must lie strictly inside (0, {length})")
        if not 0.0 <= alpha <= math.pi + 1e-12:
            raise SpecError(f"{loc}: jump angle {alpha} outside [0, pi]")
        jumps.append(Jump(s_j, alpha, direction))
    locs = [j.location for j in jumps]
    if any(b <= a for a, b in zip(locs, locs[1:])):
        raise SpecError(f"{where}: jump locations must be strictly increasing")
    return tuple(jumps)


def load_spec(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise SpecError(f"{path}: no such spec file")
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise SpecError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise SpecError(f"{path}: top level must be an object")
    return data


TOP_KEYS = {
    "plane": {"geometry": True, "length": True, "curvature": True, "jumps": False,
              "initial": False, "convex": False},
    "space3": {"geometry": True, "length": True, "curvature": True, "jumps": False,
               "initial": False, "torsion": False},
    "sphere": {"geometry": True, "length": True, "curvature": True, "jumps": False,
               "initial": False},
    "minkowski2": {"geometry": True, "length": True, "curvature": True,
                   "jumps": False, "initial": False},
    "minkowski3": {"geometry": True, "length": True, "curvature": True,
                   "jumps": False, "initial": False, "spin": False},
}


@dataclass
class BuiltCurve:
    geometry: str
    length: float
    curve: object
    profile: CurvatureProfile | None = None


def _merge_jumps(jumps: tuple[Jump, ...], extra_locs, length: float) -> tuple[Jump, ...]:
    """Insert zero-angle jumps at foreign locations so grids line up."""
    locs = {j.location: j for j in jumps}
    for x in extra_locs:
        x = float(x)
        if 0.0 < x < length and not any(abs(x - l) <= 1e-12 for l in locs):
            locs[x] = Jump(x, 0.0)
    return tuple(locs[k] for k in sorted(locs))


def build_curve(spec: dict, control: StepControl, path: str, extra_jump_locs=()) -> BuiltCurve:
    geometry = spec.get("geometry")
    if geometry not in GEOMETRIES:
        raise SpecError(f"{path}: geometry must be one of {list(GEOMETRIES)}, got {geometry!r}")
    _require_keys(spec, TOP_KEYS[geometry], path)
    length = _number(spec["length"], f"{path}.length")
    if not length > 0:
        raise SpecError(f"{path}.length must be positive")
    k = curvature_from_spec(spec["curvature"], f"{path}.curvature")
    jumps = _jumps_from_spec(spec.get("jumps"), length, geometry, f"{path}.jumps")
    jumps = _merge_jumps(jumps, extra_jump_locs, length)
    initial = spec.get("initial", {})

    if geometry == "plane":
        _require_keys(initial, {"point": False, "angle": False}, f"{path}.initial")
        start = _vector(initial.get("point", [0.0, 0.0]), 2, f"{path}.initial.point")
        theta0 = _number(initial.get("angle", 0.0), f"{path}.initial.angle")
        convex = spec.get("convex", True)
        if not isinstance(convex, bool):
            raise SpecError(f"{path}.convex must be a boolean")
        profile = CurvatureProfile(length, k, jumps, convex=convex)
        return BuiltCurve(geometry, length, reconstruct_plane(profile, start, theta0, control), profile)

    if geometry == "space3":
        _require_keys(initial, {"point": False, "frame": False}, f"{path}.initial")
        start = _vector(initial.get("point", [0.0, 0.0, 0.0]), 3, f"{path}.initial.point")
        frame = initial.get("frame", {})
        _require_keys(frame, {"tangent": False, "normal": False}, f"{path}.initial.frame")
        t = unit(_vector(frame.get("tangent", [1.0, 0.0, 0.0]), 3, f"{path}.initial.frame.tangent"))
        n_raw = _vector(frame.get("normal", [0.0, 1.0, 0.0]), 3, f"{path}.initial.frame.normal")
        n = unit(n_raw - np.dot(n_raw, t) * t)
        b = np.cross(t, n)
        torsion = curvature_from_spec(spec.get("torsion", {"preset": "constant", "value": 0.0}),
                                      f"{path}.torsion")
        profile = CurvatureProfile(length, k, jumps, convex=False)
        curve = reconstruct_space_profile(profile, torsion, start, (t, n, b), control)
        return BuiltCurve(geometry, length, curve, profile)

    if geometry == "sphere":
        _require_keys(initial, {"position": False, "tangent": False}, f"{path}.initial")
        c0 = unit(_vector(initial.get("position", [1.0, 0.0, 0.0]), 3, f"{path}.initial.position"))
        t_raw = _vector(initial.get("tangent", [0.0, 1.0, 0.0]), 3, f"{path}.initial.tangent")
        t0 = unit(t_raw - np.dot(t_raw, c0) * c0)
        if length > math.pi + 1e-9:
            raise SpecError(f"{path}.length: spherical curves are limited to length <= pi")
        curve = reconstruct_spherical(k, jumps, length, (c0, t0), control)
        return BuiltCurve(geometry, length, curve)

    if geometry == "minkowski2":
        _require_keys(initial, {"point": False, "rapidity": False}, f"{path}.initial")
        start = _vector(initial.get("point", [0.0, 0.0]), 2, f"{path}.initial.point")
        phi0 = _number(initial.get("rapidity", 0.0), f"{path}.initial.rapidity")
        return BuiltCurve(geometry, length, reconstruct_timelike_2d(k, length, phi0, start, control))

    # minkowski3
    _require_keys(initial, {"point": False, "frame": False}, f"{path}.initial")
    start = _vector(initial.get("point", [0.0, 0.0, 0.0]), 3, f"{path}.initial.point")
    frame = initial.get("frame", {})
    _require_keys(frame, {"tangent": False, "e1": False, "e2": False}, f"{path}.initial.frame")
    frame0 = None
    if frame:
        frame0 = (
            _vector(frame.get("tangent", [1.0, 0.0, 0.0]), 3, f"{path}.initial.frame.tangent"),
            _vector(frame.get("e1", [0.0, 1.0, 0.0]), 3, f"{path}.initial.frame.e1"),
            _vector(frame.get("e2", [0.0, 0.0, 1.0]), 3, f"{path}.initial.frame.e2"),
        )
    spin = curvature_from_spec(spec.get("spin", {"preset": "constant", "value": 0.0}),
                               f"{path}.spin")
    curve = reconstruct_timelike_3d(k, spin, length, start, frame0, control)
    return BuiltCurve(geometry, length, curve)


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    if x is None:
        return ""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def write_csv(path: str, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if not isinstance(v, str) else v for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def write_report(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _expand_collapsed(curve, sf: SampledFunction) -> np.ndarray:
    """Map collapsed-grid samples back onto curve rows (NaN on both jump rows)."""
    out = np.empty(len(curve.s))
    keep = np.ones(len(curve.s), dtype=bool)
    for i in curve.jump_marks:
        keep[i + 1] = False
    out[keep] = sf.values
    for i in curve.jump_marks:
        out[i + 1] = out[i]
    return out


def _census_dicts(census: Census) -> list[dict]:
    return census.to_list()


def _conclusion_dict(checks: list[tuple], evaluated: bool) -> dict:
    entries = [
        {"name": n, "passed": bool(p), "slack": _json_float(s), "location": _json_float(loc)}
        for (n, p, s, loc) in checks
    ]
    passed = all(e["passed"] for e in entries) if evaluated and entries else None
    return {"evaluated": evaluated, "checks": entries, "passed": passed}


def _finish_verify(report: dict, checks: list[tuple], args, label: str) -> int:
    """Write the report and map the conclusion onto the exit code.

    A failing conclusion under satisfied hypotheses is exit 1 and announced
    on stderr: it means either a toolkit defect or a genuine counterexample
    candidate, and should never pass silently.
    """
    report["conclusion"] = _conclusion_dict(checks, True)
    write_report(report, args.report)
    failing = [(n, s) for (n, p, s, _) in checks if not p]
    if failing:
        detail = ", ".join(f"{n} (slack {s:.3e})" for n, s in failing)
        print(
            f"schurkit: CONCLUSION FAILED for {label} with hypotheses satisfied: "
            f"{detail}; toolkit defect or counterexample candidate",
            file=sys.stderr,
        )
        return 1
    return 0


# ---------------------------------------------------------------------------
# subcommand: reconstruct
# ---------------------------------------------------------------------------

def cmd_reconstruct(args) -> int:
    control = StepControl(step_h=args.step, tol=args.tol)
    built = build_curve(load_spec(args.spec), control, args.spec)
    curve = built.curve
    jump_flags = np.zeros(len(curve.s), dtype=int)
    if hasattr(curve, "jump_marks"):
        for i in curve.jump_marks:
            jump_flags[i] = 1

    if built.geometry in ("plane", "space3"):
        kappa = _expand_collapsed(curve, curvature_magnitude(curve))
        dims = "xy" if built.geometry == "plane" else "xyz"
    elif built.geometry == "sphere":
        kappa = _expand_collapsed(curve, geodesic_curvature_of(curve))
        dims = "xyz"
    else:
        kappa = curve.curvature.values
        dims = "tx" if built.geometry == "minkowski2" else "txy"

    header = ["s", *dims, *(f"t{d}" for d in dims), "curvature", "jump"]
    rows = (
        [curve.s[i], *curve.position[i], *curve.tangent[i], kappa[i], str(int(jump_flags[i]))]
        for i in range(len(curve.s))
    )
    write_csv(args.out, header, rows)
    return 0


# ---------------------------------------------------------------------------
# subcommand: project
# ---------------------------------------------------------------------------

def _parse_plane(text: str) -> ProjectionConfig:
    try:
        upart, dpart = text.split(":")
        ux, uy, uz = (float(v) for v in upart.split(","))
        return ProjectionConfig(tuple(unit(np.array([ux, uy, uz]))), float(dpart))
    except (ValueError, SchurkitError) as e:
        raise SpecError(f"--plane must look like ux,uy,uz:d ({e})") from e


def cmd_project(args) -> int:
    control = StepControl(step_h=args.step, tol=args.tol)
    built = build_curve(load_spec(args.spec), control, args.spec)
    if built.geometry != "sphere":
        raise SpecError("project requires a sphere-geometry spec")
    curve = built.curve

    companion = None
    if args.companion:
        built_t = build_curve(
            load_spec(args.companion), control, args.companion,
            extra_jump_locs=[j.location for j in curve.jumps],
        )
        if built_t.geometry != "sphere":
            raise SpecError("companion spec must also be sphere geometry")
        if abs(built_t.length - built.length) > 1e-12:
            raise SpecError("curves must have equal length")
        # rebuild the primary with the companion's jump locations merged in
        built = build_curve(
            load_spec(args.spec), control, args.spec,
            extra_jump_locs=[j.location for j in built_t.curve.jumps],
        )
        curve, companion = built.curve, built_t.curve

    if args.plane:
        config = _parse_plane(args.plane)
    else:
        config, _ = auto_projection_config(curve)

    if companion is not None:
        pair = project_pair(curve, companion, config)
    else:
        pair = project_pair(curve, curve, config)

    r_rows = _expand_collapsed(curve, pair.R)
    tau_rows = _expand_collapsed(curve, pair.tau)
    k_rows = _expand_collapsed(curve, pair.plane_curvature)
    header = ["s", "R", "tau", "px", "py", "pz", "k_projected"]
    cols = [curve.s, r_rows, tau_rows, *pair.plane_curve.position.T, k_rows]
    if companion is not None:
        kq_rows = _expand_collapsed(curve, pair.space_curvature)
        header += ["qx", "qy", "qz", "k_companion"]
        cols += [*pair.space_curve.position.T, kq_rows]
    rows = ([c[i] for c in cols] for i in range(len(curve.s)))
    write_csv(args.out, header, rows)
    return 0


# ---------------------------------------------------------------------------
# subcommand: verify
# ---------------------------------------------------------------------------

_THEOREM_GEOMETRY = {
    "budget": ("plane",),
    "monotonicity": ("plane",),
    "global-monotonicity": ("plane",),
    "chord": ("plane",),
    "spherical": ("sphere",),
    "minkowski": ("minkowski2",),
}
_TILDE_GEOMETRY = {
    "monotonicity": ("plane", "space3"),
    "global-monotonicity": ("plane", "space3"),
    "chord": ("plane", "space3"),
    "spherical": ("sphere",),
    "minkowski": ("minkowski2", "minkowski3"),
}


def _parse_range(text: str | None, length: float):
    if text is None:
        return None
    try:
        a, b = (float(v) for v in text.split(":"))
    except ValueError as e:
        raise SpecError("--range must look like s1:s2") from e
    if not 0.0 <= a < b <= length + 1e-12:
        raise SpecError(f"--range [{a}, {b}] must satisfy 0 <= s1 < s2 <= L={length}")
    return (a, b)


def _build_pair(args, control, theorem):
    spec_c = load_spec(args.spec_c)
    geometry = spec_c.get("geometry")
    if geometry not in _THEOREM_GEOMETRY[theorem]:
        raise SpecError(
            f"theorem {theorem!r} needs a {_THEOREM_GEOMETRY[theorem]} primary curve, got {geometry!r}"
        )
    if theorem == "budget":
        return build_curve(spec_c, control, args.spec_c), None

    if not args.spec_c_tilde:
        raise SpecError(f"theorem {theorem!r} needs a comparison spec")
    spec_t = load_spec(args.spec_c_tilde)
    geo_t = spec_t.get("geometry")
    if geo_t not in _TILDE_GEOMETRY[theorem]:
        raise SpecError(
            f"theorem {theorem!r} accepts {_TILDE_GEOMETRY[theorem]} comparison curves, got {geo_t!r}"
        )
    jumps_c = spec_c.get("jumps") or []
    jumps_t = spec_t.get("jumps") or []
    locs_c = [float(j[0]) for j in jumps_c if isinstance(j, list) and len(j) >= 2]
    locs_t = [float(j[0]) for j in jumps_t if isinstance(j, list) and len(j) >= 2]
    built_c = build_curve(spec_c, control, args.spec_c, extra_jump_locs=locs_t)
    built_t = build_curve(spec_t, control, args.spec_c_tilde, extra_jump_locs=locs_c)
    if abs(built_c.length - built_t.length) > 1e-12:
        raise SpecError(
            f"curves must have equal length: {built_c.length} vs {built_t.length}"
        )
    return built_c, built_t


def _comparison_curves(built_c, built_t):
    c = built_c.curve
    ct = built_t.curve
    if built_t.geometry == "plane":
        ct = embed_plane_curve(ct)
    elif built_t.geometry == "minkowski2":
        ct = embed_timelike_2d(ct)
    return c, ct


def cmd_verify(args) -> int:
    control = StepControl(step_h=args.step, tol=args.tol)
    theorem = args.theorem
    seed = int(os.environ.get("SCHURKIT_SEED", "0"))
    built_c, built_t = _build_pair(args, control, theorem)
    s_range = _parse_range(args.range, built_c.length)

    config_echo = {
        "step": args.step,
        "tol": args.tol,
        "range": list(s_range) if s_range else None,
        "s_star": args.s_star,
        "plane": args.plane,
        "pairs": args.pairs,
        "seed": seed,
        "spec_c": args.spec_c,
        "spec_c_tilde": args.spec_c_tilde,
        "resampling": "shared segment grid at ingestion",
    }
    report = {
        "check": theorem,
        "tool": {"name": "schurkit", "version": __version__},
        "config": config_echo,
        "notes": [],
    }

    if theorem == "budget":
        profile = built_c.profile
        census = Census()
        census.add("convex_flag", profile.convex)
        budget = check_convex_budget(profile, args.tol, control)
        report["hypotheses"] = _census_dicts(census)
        report["notes"].append(f"total turning = {budget.total:.12g}")
        return _finish_verify(
            report, [("turning_budget", budget.passed, budget.slack, None)], args, theorem
        )

    c, ct = _comparison_curves(built_c, built_t)

    if theorem == "spherical":
        config = _parse_plane(args.plane) if args.plane else "auto"
        verification = spherical_schur_verify(c, ct, config, control, args.tol)
        report["hypotheses"] = _census_dicts(verification.census)
        report["config"]["plane"] = {
            "u": [float(v) for v in verification.config.normal],
            "d": verification.config.d,
            "auto": verification.auto_plane,
        }
        if not verification.census.all_passed:
            report["conclusion"] = _conclusion_dict([], False)
            report["notes"].append("hypotheses violated; conclusion not evaluated")
            write_report(report, args.report)
            return 0
        checks = [
            ("plane_monotonicity", verification.monotonicity.conclusion_passed,
             verification.monotonicity.min_slack, verification.monotonicity.argmin_s),
            ("plane_chord", verification.chords.chord_slack >= -args.tol,
             verification.chords.chord_slack, None),
            ("spherical_chord", verification.conclusion_passed,
             verification.conclusion_slack, None),
        ]
        report["notes"].append(
            f"hinge apex angles: {verification.hinge.angle_first:.12g} <= "
            f"{verification.hinge.angle_second:.12g}"
        )
        return _finish_verify(report, checks, args, theorem)

    if theorem == "minkowski":
        s_star = built_c.length / 2 if args.s_star is None else float(args.s_star)
        mono = timelike_monotonicity(c, ct, s_star, args.tol)
        report["hypotheses"] = _census_dicts(mono.census)
        if not mono.census.all_passed:
            report["conclusion"] = _conclusion_dict([], False)
            report["notes"].append("hypotheses violated; conclusion not evaluated")
            write_report(report, args.report)
            return 0
        chord = reversed_chord_inequality(c, ct, args.tol)
        checks = [
            ("monotonicity", mono.conclusion_passed, mono.min_slack, mono.argmin_s),
            ("reversed_chord", chord.slack >= -args.tol, chord.slack, None),
            ("reversed_cauchy_schwarz", chord.cauchy_schwarz_slack >= -1e-9,
             chord.cauchy_schwarz_slack, None),
        ]
        return _finish_verify(report, checks, args, theorem)

    # plane-versus-space family
    if theorem == "global-monotonicity":
        pivot = "auto" if args.s_star is None else float(args.s_star)
        mono = full_range_monotonicity(c, ct, pivot, args.tol)
    else:
        mono = monotonicity_profile(c, ct, s_range, args.tol)
    report["hypotheses"] = _census_dicts(mono.census)
    if mono.note:
        report["notes"].append(mono.note)
    if not mono.census.all_passed:
        report["conclusion"] = _conclusion_dict([], False)
        report["notes"].append("hypotheses violated; conclusion not evaluated")
        write_report(report, args.report)
        return 0

    checks = [("monotonicity", mono.conclusion_passed, mono.min_slack, mono.argmin_s)]
    if theorem in ("monotonicity", "chord"):
        chord = chord_inequality(c, ct, s_range, args.tol)
        checks.append(("chord", chord.chord_slack >= -args.tol, chord.chord_slack, None))
        checks.append(
            ("chord_bound", chord.bound_slack >= -args.tol * max(chord.plane_chord, 1.0),
             chord.bound_slack, None)
        )
    if theorem == "chord":
        lo, hi = s_range if s_range else (0.0, built_c.length)
        quarter = (hi - lo) / 4.0
        nested = nested_chord_inequality(c, ct, lo, hi, lo + quarter, hi - quarter, args.tol)
        checks.append(("nested_chord", nested.passed, nested.slack, None))
        expansion = expansion_module_check(c, ct, args.pairs, seed, args.tol)
        checks.append(
            ("expansion_bound", expansion.passed, expansion.min_slack, expansion.worst_pair[0])
        )
    return _finish_verify(report, checks, args, theorem)


# ---------------------------------------------------------------------------
# subcommand: sweep
# ---------------------------------------------------------------------------

def cmd_sweep(args) -> int:
    if args.theorem not in ("monotonicity", "chord"):
        raise SpecError("sweep supports the windowed checks: monotonicity, chord")
    if args.grid < 2:
        raise SpecError("--grid must be at least 2")
    control = StepControl(step_h=args.step, tol=args.tol)
    built_c, built_t = _build_pair(args, control, args.theorem)
    c, ct = _comparison_curves(built_c, built_t)

    anchors = np.linspace(0.0, built_c.length, args.grid)
    snapped = sorted({float(c.s[c.nearest_row(a, side="minus")]) for a in anchors})
    rows, worst_mono, worst_chord, all_passed = [], math.inf, math.inf, True
    census = None
    for i, s1 in enumerate(snapped):
        for s2 in snapped[i + 1 :]:
            mono = monotonicity_profile(c, ct, (s1, s2), args.tol)
            chord = chord_inequality(c, ct, (s1, s2), args.tol)
            if census is None:
                census = mono.census
            ok = mono.conclusion_passed and chord.passed
            all_passed &= ok
            worst_mono = min(worst_mono, mono.min_slack)
            worst_chord = min(worst_chord, chord.chord_slack)
            rows.append([
                s1, s2, mono.s_star, str(int(mono.jump_interior)), mono.min_slack,
                chord.plane_chord, chord.space_chord, chord.chord_slack,
                chord.bound_slack, str(int(ok)),
            ])

    header = ["s1", "s2", "s_star", "jump_interior", "min_slack",
              "plane_chord", "space_chord", "chord_slack", "bound_slack", "passed"]
    write_csv(args.out, header, rows)

    hypotheses_ok = census.all_passed if census is not None else True
    report = {
        "check": f"sweep:{args.theorem}",
        "tool": {"name": "schurkit", "version": __version__},
        "config": {
            "step": args.step, "tol": args.tol, "grid": args.grid,
            "spec_c": args.spec_c, "spec_c_tilde": args.spec_c_tilde,
        },
        "hypotheses": _census_dicts(census) if census is not None else [],
        "conclusion": _conclusion_dict(
            [
                ("worst_monotonicity_slack", worst_mono >= -args.tol, worst_mono, None),
                ("worst_chord_slack", worst_chord >= -args.tol, worst_chord, None),
            ],
            hypotheses_ok,
        ),
        "notes": [f"pairs evaluated: {len(rows)}"],
    }
    if args.report:
        write_report(report, args.report)
    if not hypotheses_ok:
        return 0
    if not all_passed:
        print(
            f"schurkit: CONCLUSION FAILED in sweep with hypotheses satisfied: "
            f"worst monotonicity slack {worst_mono:.3e}, worst chord slack "
            f"{worst_chord:.3e}; toolkit defect or counterexample candidate",
            file=sys.stderr,
        )
        return 1
    return 0


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--step", type=float, default=1e-3, help="arc-length step bound")
    p.add_argument("--tol", type=float, default=1e-6, help="inequality slack tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schurkit",
        description="Reconstruct curves from curvature data and verify chord comparison theorems.",
    )
    parser.add_argument("--version", action="version", version=f"schurkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reconstruct", help="build a curve and dump a CSV sample table")
    p.add_argument("spec")
    p.add_argument("-o", "--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("project", help="cone-project a spherical curve onto a plane")
    p.add_argument("spec")
    p.add_argument("--companion", default=None, help="optional companion sphere spec")
    p.add_argument("--plane", default=None, help="projection plane as ux,uy,uz:d")
    p.add_argument("-o", "--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("verify", help="run one theorem check and emit a JSON report")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("spec_c")
    p.add_argument("spec_c_tilde", nargs="?", default=None)
    p.add_argument("--range", default=None, help="window s1:s2 (default full curve)")
    p.add_argument("--s-star", dest="s_star", default=None,
                   help="pivot parameter (default auto/midpoint)")
    p.add_argument("--plane", default=None, help="projection plane as ux,uy,uz:d")
    p.add_argument("--pairs", type=int, default=50, help="expansion-check sample pairs")
    p.add_argument("--report", default=None, help="report JSON path (default stdout)")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="verify over an NxN window grid")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("spec_c")
    p.add_argument("spec_c_tilde", nargs="?", default=None)
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("-o", "--out", required=True, help="per-pair CSV path")
    p.add_argument("--report", default=None, help="aggregate JSON path")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SpecError as e:
        print(f"schurkit: input error: {e}", file=sys.stderr)
        return 2
    except SchurkitError as e:
        print(f"schurkit: numeric failure: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
