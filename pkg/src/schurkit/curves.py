"""Curve data model and reconstruction from curvature data.

Builds plane, Euclidean-space, and broken (tangent-jump) curves from
curvature profiles, and measures curvature and turning back from samples.
Jumps are never integrated across: integration restarts on the far side of
each jump with a rotated state, and the jump location appears twice in the
sample grid (same position, one-sided tangents).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import (
    AlignmentError,
    DomainError,
    JumpAngleError,
    NormalizationError,
    ProfileError,
)
from .numerics import (
    DEFAULT_CONTROL,
    SampledFunction,
    StepControl,
    TWO_PI,
    finite_diff_array,
    grid_step,
    integrate_sampled,
    rk4_integrate,
    unit,
)

__all__ = [
    "Jump",
    "CurvatureProfile",
    "SampledCurve",
    "TangentAngle",
    "BudgetResult",
    "constant_curvature",
    "linear_curvature",
    "sinusoidal_curvature",
    "tabulated_curvature",
    "reconstruct_plane",
    "reconstruct_space_frenet",
    "reconstruct_space_profile",
    "apply_jump",
    "jump_rotation",
    "total_turning",
    "check_convex_budget",
    "curvature_magnitude",
    "tangent_angle",
    "theta_from_tangent",
    "embed_plane_curve",
]


# ---------------------------------------------------------------------------
# curvature presets
# ---------------------------------------------------------------------------

def constant_curvature(value: float) -> Callable:
    value = float(value)
    return lambda s: value * np.ones_like(np.asarray(s, dtype=float))


def linear_curvature(intercept: float, slope: float) -> Callable:
    return lambda s: intercept + slope * np.asarray(s, dtype=float)


def sinusoidal_curvature(
    offset: float, amplitude: float, frequency: float = 1.0, phase: float = 0.0
) -> Callable:
    return lambda s: offset + amplitude * np.sin(frequency * np.asarray(s, dtype=float) + phase)


def tabulated_curvature(points: Sequence[Sequence[float]]) -> Callable:
    """Linear interpolation through [(s, k), ...] samples, clamped at the ends."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ProfileError("tabulated curvature needs at least two [s, k] pairs")
    s, k = pts[:, 0], pts[:, 1]
    if not np.all(np.diff(s) > 0):
        raise ProfileError("tabulated curvature samples must have increasing s")
    return lambda x: np.interp(np.asarray(x, dtype=float), s, k)


# ---------------------------------------------------------------------------
# profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Jump:
    """Tangent discontinuity: location, turning angle, optional rotation direction.

    ``direction`` selects the rotation plane for space curves (the new tangent
    turns from the old one toward this vector); plane and spherical curves
    have a canonical turning direction and ignore it.
    """

    location: float
    angle: float
    direction: tuple[float, ...] | None = None


@dataclass(frozen=True)
class CurvatureProfile:
    """Piecewise curvature data: one curvature function plus a jump list.

    The jump locations are the interior segment boundaries; smooth segments
    are the intervals between consecutive boundaries. Angles are spherical
    distances between one-sided tangents, so they live in [0, pi]; an angle
    of exactly pi (tangent reversal) is accepted but flagged.
    """

    length: float
    curvature: Callable
    jumps: tuple[Jump, ...] = ()
    convex: bool = True

    def __post_init__(self) -> None:
        if not self.length > 0:
            raise ProfileError(f"profile length must be positive, got {self.length}")
        locs = [j.location for j in self.jumps]
        if any(not 0.0 < s < self.length for s in locs):
            raise ProfileError("jump locations must lie strictly inside (0, L)")
        if any(b <= a for a, b in zip(locs, locs[1:])):
            raise ProfileError("jump locations must be strictly increasing")
        for j in self.jumps:
            if not -1e-12 <= j.angle <= math.pi + 1e-12:
                raise JumpAngleError(f"jump angle {j.angle} outside [0, pi]")

    @property
    def boundaries(self) -> np.ndarray:
        return np.array([0.0, *(j.location for j in self.jumps), self.length])

    @property
    def has_tangent_reversal(self) -> bool:
        return any(abs(j.angle - math.pi) <= 1e-12 for j in self.jumps)

    def segment_intervals(self) -> list[tuple[float, float]]:
        b = self.boundaries
        return [(float(b[i]), float(b[i + 1])) for i in range(len(b) - 1)]


# ---------------------------------------------------------------------------
# sampled curves
# ---------------------------------------------------------------------------

@dataclass
class SampledCurve:
    """Arc-length-indexed samples of position and unit tangent.

    ``jump_marks`` lists the indices i of the minus-side row of each
    duplicated jump point: rows i and i+1 share s and position but carry the
    one-sided tangents. For plane curves ``theta`` holds the cumulative
    (unwrapped) tangent angle on the same rows.
    """

    s: np.ndarray
    position: np.ndarray
    tangent: np.ndarray
    jump_marks: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=int))
    theta: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.s = np.asarray(self.s, dtype=float)
        self.position = np.asarray(self.position, dtype=float)
        self.tangent = np.asarray(self.tangent, dtype=float)
        self.jump_marks = np.asarray(self.jump_marks, dtype=int)
        if self.theta is not None:
            self.theta = np.asarray(self.theta, dtype=float)

    @property
    def dim(self) -> int:
        return self.position.shape[1]

    @property
    def length(self) -> float:
        return float(self.s[-1] - self.s[0])

    def segments(self) -> list[slice]:
        out, start = [], 0
        for jm in self.jump_marks:
            out.append(slice(start, int(jm) + 1))
            start = int(jm) + 1
        out.append(slice(start, len(self.s)))
        return out

    def nearest_row(self, value: float, side: str = "minus") -> int:
        """Row index of the sample closest to arc length ``value``.

        ``side`` resolves duplicated jump rows: "minus" returns the row
        carrying the incoming tangent, "plus" the outgoing one.
        """
        s = self.s
        i = int(np.searchsorted(s, value))
        best, err = 0, math.inf
        for j in (i - 1, i, i + 1):
            if 0 <= j < len(s):
                e = abs(s[j] - value)
                if e < err:
                    best, err = j, e
        if side == "plus":
            while best + 1 < len(s) and s[best + 1] == s[best]:
                best += 1
        else:
            while best - 1 >= 0 and s[best - 1] == s[best]:
                best -= 1
        return best

    def index_of(self, value: float, side: str = "minus", atol: float = 1e-9) -> int:
        """Like nearest_row but requires ``value`` to sit on the grid."""
        best = self.nearest_row(value, side)
        if abs(self.s[best] - value) > atol * max(1.0, abs(value)):
            raise DomainError(f"s={value!r} is not on this curve's grid")
        return best

    def validate(self, tol_unit: float = 1e-9, tol_tangent: float = 1e-5) -> None:
        """Check unit tangents and position'/tangent agreement off the jumps."""
        norms = np.linalg.norm(self.tangent, axis=1)
        worst = float(np.max(np.abs(norms - 1.0)))
        if worst > tol_unit:
            raise NormalizationError(f"tangent norm drifts by {worst:.3g}")
        for seg in self.segments():
            s_seg = self.s[seg]
            if len(s_seg) < 5:
                continue
            h = grid_step(s_seg)
            dp = finite_diff_array(self.position[seg], h, 1)
            err = np.linalg.norm(dp - self.tangent[seg], axis=1)
            if float(np.max(err)) > tol_tangent:
                raise ProfileError(
                    f"position derivative deviates from tangent by {np.max(err):.3g}"
                )


def _require_aligned(a: SampledCurve, b: SampledCurve) -> None:
    if len(a.s) != len(b.s) or np.max(np.abs(a.s - b.s)) > 1e-12 * max(1.0, a.length):
        raise AlignmentError("curves are sampled on different grids; resample first")
    if len(a.jump_marks) != len(b.jump_marks) or not np.array_equal(
        a.jump_marks, b.jump_marks
    ):
        raise AlignmentError("curves have mismatched jump rows")


@dataclass
class TangentAngle:
    """Cumulative plane tangent angle on the curve grid (duplicate jump rows)."""

    s: np.ndarray
    theta: np.ndarray
    jump_marks: np.ndarray

    @property
    def total_turning(self) -> float:
        return float(self.theta[-1] - self.theta[0])

    @property
    def non_decreasing(self) -> bool:
        return bool(np.all(np.diff(self.theta) >= -1e-12))


def tangent_angle(curve: SampledCurve) -> TangentAngle:
    if curve.theta is None:
        raise ProfileError("curve carries no tangent-angle data (not a plane curve?)")
    return TangentAngle(curve.s, curve.theta, curve.jump_marks)


def theta_from_tangent(curve: SampledCurve) -> np.ndarray:
    """Cumulative tangent angle recovered from sampled 2D tangents.

    Successive increments are wrapped to (-pi, pi]; a convex curve's jump of
    exactly pi lands on +pi.
    """
    if curve.dim != 2:
        raise ProfileError("tangent angles are defined for plane curves only")
    raw = np.arctan2(curve.tangent[:, 1], curve.tangent[:, 0])
    th = np.empty_like(raw)
    th[0] = raw[0]
    d = np.diff(raw)
    d = np.mod(d + math.pi, TWO_PI) - math.pi
    d[d <= -math.pi + 1e-9] += TWO_PI
    th[1:] = th[0] + np.cumsum(d)
    return th


# ---------------------------------------------------------------------------
# jumps
# ---------------------------------------------------------------------------

def jump_rotation(tangent: np.ndarray, alpha: float, direction: np.ndarray) -> np.ndarray:
    """3x3 rotation by ``alpha`` in the plane spanned by the tangent and ``direction``.

    The rotation moves the tangent toward the component of ``direction``
    orthogonal to it; applied to a full frame it keeps the frame orthonormal.
    """
    t = unit(tangent)
    d = np.asarray(direction, dtype=float)
    e = d - np.dot(d, t) * t
    n = float(np.linalg.norm(e))
    if n < 1e-9:
        raise ProfileError("jump direction is (nearly) collinear with the tangent")
    e = e / n
    c, s = math.cos(alpha), math.sin(alpha)
    eye = np.eye(3)
    # rotation = identity outside span(t, e), standard 2D rotation inside
    outer_tt = np.outer(t, t)
    outer_ee = np.outer(e, e)
    outer_te = np.outer(t, e)
    return eye - outer_tt - outer_ee + c * (outer_tt + outer_ee) + s * (outer_te.T - outer_te)


def apply_jump(
    tangent: np.ndarray, alpha: float, direction: np.ndarray | None = None
) -> np.ndarray:
    """One-sided tangent after a jump of angle ``alpha``.

    Plane tangents rotate counterclockwise (the convex orientation). Space
    tangents rotate toward ``direction`` within the plane they span with it;
    the direction is required because nothing else pins the rotation plane.
    """
    if not -1e-12 <= alpha <= math.pi + 1e-12:
        raise JumpAngleError(f"jump angle {alpha} outside [0, pi]")
    t = np.asarray(tangent, dtype=float)
    if t.shape == (2,):
        c, s = math.cos(alpha), math.sin(alpha)
        return np.array([c * t[0] - s * t[1], s * t[0] + c * t[1]])
    if t.shape == (3,):
        if alpha <= 1e-15:
            return t.copy()
        if direction is None:
            raise ProfileError("space-curve jumps need an explicit rotation direction")
        return unit(jump_rotation(t, alpha, direction) @ t)
    raise ProfileError(f"unsupported tangent shape {t.shape}")


# ---------------------------------------------------------------------------
# reconstruction
# ---------------------------------------------------------------------------

def _stack_segments(parts, jump_rows):
    s = np.concatenate([p[0] for p in parts])
    arrays = [np.concatenate([p[i] for p in parts]) for i in range(1, len(parts[0]))]
    return s, arrays, np.asarray(jump_rows, dtype=int)


def reconstruct_plane(
    profile: CurvatureProfile,
    start: Sequence[float] = (0.0, 0.0),
    theta0: float = 0.0,
    control: StepControl = DEFAULT_CONTROL,
) -> SampledCurve:
    """Plane curve with tangent angle theta' = k and counterclockwise jumps.

    State (x, y, theta) is integrated per smooth segment; at each jump the
    angle gains alpha_j and the grid point is duplicated.
    """
    k = profile.curvature
    state = np.array([float(start[0]), float(start[1]), float(theta0)])

    def fld(s, y):
        return np.array([math.cos(y[2]), math.sin(y[2]), float(k(s))])

    parts, jump_rows, offset = [], [], 0
    for idx, (a, b) in enumerate(profile.segment_intervals()):
        traj = rk4_integrate(fld, state, (a, b), control)
        vals = traj.values
        parts.append((traj.s_grid, vals[:, 0:2], vals[:, 2]))
        offset += len(traj.s_grid)
        state = vals[-1].copy()
        if idx < len(profile.jumps):
            # the plus-side duplicate row arrives as the next segment's start
            jump_rows.append(offset - 1)
            state[2] += profile.jumps[idx].angle

    s, (pos, th), marks = _stack_segments(parts, jump_rows)
    tang = np.column_stack([np.cos(th), np.sin(th)])
    return SampledCurve(s, pos, tang, marks, th)


_FRAME3 = (
    np.array([1.0, 0.0, 0.0]),
    np.array([0.0, 1.0, 0.0]),
    np.array([0.0, 0.0, 1.0]),
)


def _check_frame3(tangent, normal, binormal) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    t, n, b = (np.asarray(v, dtype=float) for v in (tangent, normal, binormal))
    gram = np.array([[t @ t, t @ n, t @ b], [n @ t, n @ n, n @ b], [b @ t, b @ n, b @ b]])
    if np.max(np.abs(gram - np.eye(3))) > 1e-9:
        raise NormalizationError("initial frame is not orthonormal")
    return t, n, b


def _frenet_post_step(s, y):
    t = unit(y[3:6])
    n = y[6:9] - np.dot(y[6:9], t) * t
    n = unit(n)
    b = np.cross(t, n)
    y[3:6], y[6:9], y[9:12] = t, n, b
    return y


def reconstruct_space_frenet(
    k: Callable,
    torsion: Callable,
    length: float,
    start: Sequence[float] = (0.0, 0.0, 0.0),
    frame0: tuple | None = None,
    control: StepControl = DEFAULT_CONTROL,
) -> SampledCurve:
    """Smooth space curve from curvature k(s) >= 0 and torsion via the Frenet system.

    The moving frame is re-orthonormalized after every step. Serves as the
    generator of comparison space curves with a prescribed |T'|.
    """
    t0, n0, b0 = _check_frame3(*(frame0 if frame0 is not None else _FRAME3))
    probe = np.asarray(k(np.linspace(0.0, length, 257)), dtype=float)
    if np.min(probe) < -1e-12:
        raise ProfileError("space-curve curvature magnitude must be non-negative")

    def fld(s, y):
        kk, tt = float(k(s)), float(torsion(s))
        dy = np.empty(12)
        dy[0:3] = y[3:6]
        dy[3:6] = kk * y[6:9]
        dy[6:9] = -kk * y[3:6] + tt * y[9:12]
        dy[9:12] = -tt * y[6:9]
        return dy

    y0 = np.concatenate([np.asarray(start, dtype=float), t0, n0, b0])
    traj = rk4_integrate(fld, y0, (0.0, length), control, post_step=_frenet_post_step)
    vals = traj.values
    return SampledCurve(traj.s_grid, vals[:, 0:3], vals[:, 3:6])


def reconstruct_space_profile(
    profile: CurvatureProfile,
    torsion: Callable,
    start: Sequence[float] = (0.0, 0.0, 0.0),
    frame0: tuple | None = None,
    control: StepControl = DEFAULT_CONTROL,
) -> SampledCurve:
    """Space curve from a profile with jumps; each jump needs its rotation direction."""
    t, n, b = _check_frame3(*(frame0 if frame0 is not None else _FRAME3))
    k, pos = profile.curvature, np.asarray(start, dtype=float)

    def fld(s, y):
        kk, tt = float(k(s)), float(torsion(s))
        dy = np.empty(12)
        dy[0:3] = y[3:6]
        dy[3:6] = kk * y[6:9]
        dy[6:9] = -kk * y[3:6] + tt * y[9:12]
        dy[9:12] = -tt * y[6:9]
        return dy

    parts, jump_rows, offset = [], [], 0
    for idx, (a0, b0_) in enumerate(profile.segment_intervals()):
        y0 = np.concatenate([pos, t, n, b])
        traj = rk4_integrate(fld, y0, (a0, b0_), control, post_step=_frenet_post_step)
        vals = traj.values
        parts.append((traj.s_grid, vals[:, 0:3], vals[:, 3:6]))
        offset += len(traj.s_grid)
        pos, t, n, b = vals[-1, 0:3], vals[-1, 3:6], vals[-1, 6:9], vals[-1, 9:12]
        if idx < len(profile.jumps):
            j = profile.jumps[idx]
            if j.angle > 1e-15:
                if j.direction is None:
                    raise ProfileError(
                        f"jump at s={j.location} needs a rotation direction for a space curve"
                    )
                rot = jump_rotation(t, j.angle, np.asarray(j.direction, dtype=float))
                t, n, b = unit(rot @ t), unit(rot @ n), unit(rot @ b)
                b = np.cross(t, n)
            jump_rows.append(offset - 1)

    s, (p, tang), marks = _stack_segments(parts, jump_rows)
    return SampledCurve(s, p, tang, marks)


def embed_plane_curve(curve: SampledCurve, matrix: np.ndarray | None = None) -> SampledCurve:
    """Image of a plane curve under a linear isometry into 3-space.

    Default embedding pads a zero third coordinate; a custom (3, 2) matrix
    with orthonormal columns may be supplied.
    """
    if matrix is None:
        matrix = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    m = np.asarray(matrix, dtype=float)
    return SampledCurve(
        curve.s.copy(),
        curve.position @ m.T,
        curve.tangent @ m.T,
        curve.jump_marks.copy(),
    )


# ---------------------------------------------------------------------------
# turning and curvature measurements
# ---------------------------------------------------------------------------

def total_turning(profile: CurvatureProfile, control: StepControl = DEFAULT_CONTROL) -> float:
    """Integral of curvature over the smooth segments plus the jump angles."""
    total = 0.0
    for a, b in profile.segment_intervals():
        n = control.segment_steps(b - a)
        grid = np.linspace(a, b, n + 1)
        total += integrate_sampled(grid, np.asarray(profile.curvature(grid), dtype=float))
    return total + sum(j.angle for j in profile.jumps)


@dataclass(frozen=True)
class BudgetResult:
    passed: bool
    total: float
    slack: float


def check_convex_budget(
    profile: CurvatureProfile,
    tol: float | None = None,
    control: StepControl = DEFAULT_CONTROL,
) -> BudgetResult:
    """Turning budget of an embedded convex curve: total turning <= 2*pi."""
    if not profile.convex:
        raise ProfileError("budget check applies to profiles flagged convex")
    tol = control.tol if tol is None else tol
    total = total_turning(profile, control)
    return BudgetResult(total <= TWO_PI + tol, total, TWO_PI - total)


def _collapse_jump_rows(curve: SampledCurve, values: np.ndarray) -> SampledFunction:
    """Collapse duplicated jump rows to single NaN-masked samples."""
    n = len(curve.s)
    keep = np.ones(n, dtype=bool)
    vals = values.astype(float).copy()
    for i in curve.jump_marks:
        keep[i + 1] = False
        vals[i] = np.nan
    return SampledFunction(curve.s[keep], vals[keep])


def curvature_magnitude(curve: SampledCurve) -> SampledFunction:
    """|T'|(s) by per-segment finite differences, masked (NaN) at jumps."""
    out = np.empty(len(curve.s))
    for seg in curve.segments():
        h = grid_step(curve.s[seg])
        dT = finite_diff_array(curve.tangent[seg], h, 1)
        out[seg] = np.linalg.norm(dT, axis=1)
    return _collapse_jump_rows(curve, out)
