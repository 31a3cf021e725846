"""Chord comparison between a convex plane curve and a space curve.

Given a convex plane curve c and a space curve c~ of the same length whose
curvature never exceeds c's (jumps included), the displacement of c~
projected on the chord direction of c grows at least as fast as c's own.
This module locates the pivot parameter s* where the tangent of c points
along the chord, builds the isometric inclusion identifying the two tangent
planes there, and verifies the resulting monotonicity, chord, and
expansion-bound inequalities sample-wise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from .curves import SampledCurve, _require_aligned, curvature_magnitude
from .errors import (
    HypothesisViolationError,
    NormalizationError,
    ProfileError,
)
from .numerics import (
    DEFAULT_CONTROL,
    TWO_PI,
    bisect_monotone,
    integrate_sampled,
    orthonormal_complement,
    unit,
)
from .reports import Census

__all__ = [
    "IsometricInclusion",
    "SStarResult",
    "MonotonicityReport",
    "ChordReport",
    "NestedChordReport",
    "ExpansionReport",
    "ArcBudgetResult",
    "TangentCosineReport",
    "build_inclusion",
    "find_s_star",
    "arc_length_budget_check",
    "hypothesis_census",
    "monotonicity_profile",
    "tangent_cosine_comparison",
    "chord_inequality",
    "nested_chord_inequality",
    "expansion_module_check",
    "full_range_monotonicity",
]

DEFAULT_TOL = DEFAULT_CONTROL.tol


# ---------------------------------------------------------------------------
# isometric inclusion R^2 -> R^m
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsometricInclusion:
    """Linear isometry of the plane into m-space (orthonormal image columns)."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=float)
        gram = m.T @ m
        if np.max(np.abs(gram - np.eye(2))) > 1e-12:
            raise NormalizationError("inclusion columns are not orthonormal")
        object.__setattr__(self, "matrix", m)

    def apply(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return u @ self.matrix.T


def build_inclusion(
    t_plane: np.ndarray,
    t_space: np.ndarray,
    second_column: np.ndarray | None = None,
) -> IsometricInclusion:
    """Isometric inclusion mapping the plane unit vector onto the space one.

    The image of the orthogonal direction is a free choice; by default it is
    completed deterministically, and any valid choice yields the same
    comparison values (the checks only ever pair the inclusion with its own
    pivot vector).
    """
    t2 = np.asarray(t_plane, dtype=float)
    t3 = np.asarray(t_space, dtype=float)
    if abs(np.linalg.norm(t2) - 1.0) > 1e-9 or abs(np.linalg.norm(t3) - 1.0) > 1e-9:
        raise NormalizationError("build_inclusion expects unit vectors")
    if second_column is None:
        w = orthonormal_complement(t3)
    else:
        w = np.asarray(second_column, dtype=float)
        if abs(np.linalg.norm(w) - 1.0) > 1e-9 or abs(np.dot(w, t3)) > 1e-9:
            raise NormalizationError("second column must be unit and orthogonal")
    # iota(u) = <u, t2> t3 + cross2(t2, u) w, expressed on the standard basis
    col1 = t2[0] * t3 - t2[1] * w
    col2 = t2[1] * t3 + t2[0] * w
    return IsometricInclusion(np.column_stack([col1, col2]))


# ---------------------------------------------------------------------------
# pivot location
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SStarResult:
    """Pivot parameter: where the convex curve's tangent points along the chord.

    When the chord direction falls strictly inside a jump's angular gap the
    pivot snaps to the jump location (``jump_interior`` set) and
    ``beta_minus`` records the angular offset into the gap.
    """

    s_star: float
    index: int
    jump_interior: bool
    chord_angle: float
    beta_minus: float | None
    window: tuple[float, float]


def _window_rows(c: SampledCurve, s_range) -> tuple[int, int]:
    """Snap a requested window to grid rows (plus side at s', minus at s'')."""
    if s_range is None:
        return 0, len(c.s) - 1
    a, b = float(s_range[0]), float(s_range[1])
    if not b > a:
        raise ValueError(f"window must satisfy s'' > s', got [{a}, {b}]")
    return c.nearest_row(a, side="plus"), c.nearest_row(b, side="minus")


def find_s_star(
    c: SampledCurve,
    s_range: tuple[float, float] | None = None,
    angle_tol: float = 1e-9,
) -> SStarResult:
    """Locate s* in the window with tangent direction parallel to the chord.

    Requires the cumulative tangent angle of a convex plane curve. The chord
    angle is lifted into the window's angular range [theta(s'), theta(s'')];
    failure to lift means the input violates convexity and raises.
    """
    if c.theta is None:
        raise ProfileError("find_s_star needs a plane curve with tangent-angle data")
    i0, i1 = _window_rows(c, s_range)
    window = (float(c.s[i0]), float(c.s[i1]))
    chord = c.position[i1] - c.position[i0]
    clen = float(np.linalg.norm(chord))
    if clen < 1e-12:
        raise HypothesisViolationError("degenerate (zero) chord: no direction to match")

    th = np.maximum.accumulate(c.theta[i0 : i1 + 1])
    phi = math.atan2(chord[1], chord[0])
    m = math.ceil((th[0] - phi - angle_tol) / TWO_PI)
    phi_star = phi + TWO_PI * m
    if phi_star > th[-1] + angle_tol:
        raise HypothesisViolationError(
            "chord direction lies outside the tangent angular range; "
            "the profile is not a valid convex curve"
        )
    phi_star = min(max(phi_star, th[0]), th[-1])

    j = int(np.searchsorted(th, phi_star, side="left"))
    j = min(j, len(th) - 1)
    s_loc = c.s[i0 : i1 + 1]

    if th[j] - phi_star <= angle_tol:
        # lands on (or within tolerance of) a sample row
        return SStarResult(float(s_loc[j]), i0 + j, False, phi_star, None, window)
    if j > 0 and s_loc[j] == s_loc[j - 1]:
        # strictly inside a jump's angular gap
        beta_minus = phi_star - th[j - 1]
        return SStarResult(float(s_loc[j - 1]), i0 + j - 1, True, phi_star, float(beta_minus), window)

    # smooth crossing between rows j-1 and j: invert theta on its segment
    seg = next(sl for sl in c.segments() if sl.start <= i0 + j - 1 and i0 + j <= sl.stop - 1)
    interp = PchipInterpolator(c.s[seg], np.maximum.accumulate(c.theta[seg]))
    root = bisect_monotone(
        lambda x: float(interp(x)) - phi_star,
        (float(s_loc[j - 1]), float(s_loc[j])),
        tol=1e-13,
    )
    return SStarResult(float(root), i0 + j - 1, False, phi_star, None, window)


def _slerp(u: np.ndarray, v: np.ndarray, angle: float) -> np.ndarray:
    """Point at the given angle from u along the minimizing great arc to v."""
    full = math.acos(float(np.clip(np.dot(u, v), -1.0, 1.0)))
    if full < 1e-12 or angle <= 0.0:
        return u.copy()
    t = min(angle / full, 1.0)
    return (math.sin((1.0 - t) * full) * u + math.sin(t * full) * v) / math.sin(full)


def _interp_tangent(c: SampledCurve, index: int, s_value: float) -> np.ndarray:
    """Unit tangent at an off-grid parameter, interpolated within its segment."""
    seg = next(sl for sl in c.segments() if sl.start <= index < sl.stop)
    interp = PchipInterpolator(c.s[seg], c.tangent[seg], axis=0)
    return unit(np.asarray(interp(s_value), dtype=float))


def _pivots(
    c: SampledCurve, c_tilde: SampledCurve, star: SStarResult
) -> tuple[np.ndarray, np.ndarray]:
    """Pivot directions N (plane) and N~ (space) for a located s*.

    At a jump-interior pivot, N is the chord direction inside the gap and N~
    sits at the proportional angle along c~'s minimizing tangent arc, which
    keeps both partial gap angles dominated.
    """
    phi = star.chord_angle
    n_plane = np.array([math.cos(phi), math.sin(phi)])
    if star.jump_interior:
        i = star.index
        t_minus, t_plus = c_tilde.tangent[i], c_tilde.tangent[i + 1]
        alpha = math.acos(float(np.clip(np.dot(c.tangent[i], c.tangent[i + 1]), -1.0, 1.0)))
        alpha_t = math.acos(float(np.clip(np.dot(t_minus, t_plus), -1.0, 1.0)))
        beta_t = star.beta_minus * (alpha_t / alpha) if alpha > 1e-15 else 0.0
        return n_plane, unit(_slerp(t_minus, t_plus, beta_t))
    s_row = float(c.s[star.index])
    if abs(star.s_star - s_row) <= 1e-12 * max(1.0, abs(star.s_star)):
        return n_plane, unit(c_tilde.tangent[star.index])
    return n_plane, _interp_tangent(c_tilde, star.index, star.s_star)


# ---------------------------------------------------------------------------
# arc budget
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArcBudgetResult:
    passed: bool
    length_first: float
    length_second: float


def arc_length_budget_check(
    c: SampledCurve,
    s_first: float,
    s_second: float,
    s_star,
    tol: float = DEFAULT_TOL,
) -> ArcBudgetResult:
    """Both tangent arcs on either side of the pivot must fit in a half turn.

    Arc lengths are turning angles (curvature integral plus jump angles),
    read off the cumulative tangent angle; a jump-interior pivot contributes
    its partial gap angles to both sides.
    """
    if c.theta is None:
        raise ProfileError("arc budget needs a plane curve with tangent-angle data")
    i0 = c.nearest_row(s_first, side="plus")
    i1 = c.nearest_row(s_second, side="minus")
    if isinstance(s_star, SStarResult):
        theta_star = s_star.chord_angle
    else:
        theta_star = float(c.theta[c.nearest_row(float(s_star), side="minus")])
    len1 = theta_star - float(c.theta[i0])
    len2 = float(c.theta[i1]) - theta_star
    return ArcBudgetResult(
        len1 <= math.pi + tol and len2 <= math.pi + tol, len1, len2
    )


# ---------------------------------------------------------------------------
# hypothesis census
# ---------------------------------------------------------------------------

def hypothesis_census(
    c: SampledCurve,
    c_tilde: SampledCurve,
    tol: float = DEFAULT_TOL,
    curvature_tol: float | None = None,
) -> Census:
    """Sample-wise hypothesis checks for the (convex plane, space) pair.

    Curvatures are measured back from the samples on both sides so the check
    is honest about what the grids actually contain.
    """
    curvature_tol = tol if curvature_tol is None else curvature_tol
    census = Census()

    k_c = curvature_magnitude(c)
    k_t = curvature_magnitude(c_tilde)
    mask = np.isfinite(k_c.values) & np.isfinite(k_t.values)
    diff = k_c.values[mask] - k_t.values[mask]
    if diff.size:
        w = int(np.argmin(diff))
        census.add(
            "curvature_dominance",
            float(diff[w]) >= -curvature_tol,
            float(diff[w]),
            float(k_c.s_grid[mask][w]),
        )
    else:
        census.add("curvature_dominance", True, note="no smooth samples")

    if len(c.jump_marks):
        worst, loc = math.inf, None
        for i in c.jump_marks:
            a_c = math.acos(float(np.clip(np.dot(c.tangent[i], c.tangent[i + 1]), -1, 1)))
            a_t = math.acos(
                float(np.clip(np.dot(c_tilde.tangent[i], c_tilde.tangent[i + 1]), -1, 1))
            )
            if a_c - a_t < worst:
                worst, loc = a_c - a_t, float(c.s[i])
        census.add("jump_dominance", worst >= -tol, worst, loc)
    else:
        census.add("jump_dominance", True, note="no jumps")

    if c.theta is not None:
        dth = np.diff(c.theta)
        worst = float(np.min(dth)) if dth.size else 0.0
        census.add("convexity", worst >= -tol, worst)
        total = float(c.theta[-1] - c.theta[0])
        census.add("turning_budget", total <= TWO_PI + tol, TWO_PI - total)
    else:
        census.add("convexity", False, note="no tangent-angle data")

    return census


# ---------------------------------------------------------------------------
# monotonicity
# ---------------------------------------------------------------------------

@dataclass
class MonotonicityReport:
    """Monotonicity of the chord-aligned displacement functional.

    ``derivative_slack`` samples the derivative of I(s) (which the theorem
    asserts is non-negative); ``I_samples`` evaluates I directly through the
    explicit inclusion matrix as a cross-check.
    """

    s_star: float
    jump_interior: bool
    window: tuple[float, float]
    s: np.ndarray
    I_samples: np.ndarray
    derivative_slack: np.ndarray
    min_slack: float
    argmin_s: float
    census: Census
    inclusion: IsometricInclusion
    pivot_plane: np.ndarray
    pivot_space: np.ndarray
    tol: float
    note: str = ""

    @property
    def conclusion_passed(self) -> bool:
        return self.min_slack >= -self.tol

    @property
    def passed(self) -> bool:
        return self.census.all_passed and self.conclusion_passed


def _monotonicity_core(c, c_tilde, rows, n_plane, n_space, star_s, interior, window,
                       census, tol, note="") -> MonotonicityReport:
    i0, i1 = rows
    sl = slice(i0, i1 + 1)
    chord = c.position[i1] - c.position[i0]
    clen = float(np.linalg.norm(chord))
    slack = clen * (c_tilde.tangent[sl] @ n_space - c.tangent[sl] @ n_plane)
    inclusion = build_inclusion(n_plane, n_space)
    iota_pos = inclusion.apply(c.position[sl])
    i_samples = (c_tilde.position[sl] - iota_pos) @ (clen * n_space)
    w = int(np.argmin(slack))
    return MonotonicityReport(
        s_star=star_s,
        jump_interior=interior,
        window=window,
        s=c.s[sl].copy(),
        I_samples=i_samples,
        derivative_slack=slack,
        min_slack=float(slack[w]),
        argmin_s=float(c.s[sl][w]),
        census=census,
        inclusion=inclusion,
        pivot_plane=n_plane,
        pivot_space=n_space,
        tol=tol,
        note=note,
    )


def monotonicity_profile(
    c: SampledCurve,
    c_tilde: SampledCurve,
    s_range: tuple[float, float] | None = None,
    tol: float = DEFAULT_TOL,
    curvature_tol: float | None = None,
) -> MonotonicityReport:
    """Windowed monotonicity check with the pivot fixed by the chord direction.

    The inclusion is eliminated analytically from the derivative: pairing
    iota with its own pivot turns <iota(T), iota(chord)> into a plane inner
    product, so the slack reduces to |chord| (<T~, N~> - <T, N>).
    """
    _require_aligned(c, c_tilde)
    census = hypothesis_census(c, c_tilde, tol, curvature_tol)
    star = find_s_star(c, s_range)
    n_plane, n_space = _pivots(c, c_tilde, star)
    rows = _window_rows(c, s_range)
    return _monotonicity_core(
        c, c_tilde, rows, n_plane, n_space,
        star.s_star, star.jump_interior, star.window, census, tol,
    )


def full_range_monotonicity(
    c: SampledCurve,
    c_tilde: SampledCurve,
    s_star="auto",
    tol: float = DEFAULT_TOL,
    curvature_tol: float | None = None,
) -> MonotonicityReport:
    """Whole-curve monotonicity with a freely chosen pivot.

    Any pivot whose two complementary tangent arcs each fit in a half turn
    works; "auto" picks the smallest grid parameter satisfying that budget
    (the turning budget guarantees one exists) and records the choice.
    """
    _require_aligned(c, c_tilde)
    if c.theta is None:
        raise ProfileError("full-range monotonicity needs a convex plane curve")
    census = hypothesis_census(c, c_tilde, tol, curvature_tol)

    note = ""
    if isinstance(s_star, str) and s_star == "auto":
        th = c.theta
        ok = (th - th[0] <= math.pi + 1e-12) & (th[-1] - th <= math.pi + 1e-12)
        idx = np.flatnonzero(ok)
        if idx.size == 0:
            raise ProfileError("no pivot satisfies the half-turn arc budget")
        row = int(idx[0])
        note = f"auto pivot: smallest grid parameter with both arcs <= pi (s*={c.s[row]:.9g})"
    else:
        row = c.nearest_row(float(s_star), side="minus")
        budget = arc_length_budget_check(c, float(c.s[0]), float(c.s[-1]), float(s_star), tol)
        if not budget.passed:
            raise ProfileError(
                f"pivot s*={float(s_star):.9g} violates the arc budget: "
                f"lengths ({budget.length_first:.6g}, {budget.length_second:.6g}) must be <= pi"
            )
    n_plane = unit(c.tangent[row])
    n_space = unit(c_tilde.tangent[row])
    return _monotonicity_core(
        c, c_tilde, (0, len(c.s) - 1), n_plane, n_space,
        float(c.s[row]), False, (float(c.s[0]), float(c.s[-1])), census, tol, note,
    )


# ---------------------------------------------------------------------------
# tangent cosine comparison
# ---------------------------------------------------------------------------

@dataclass
class TangentCosineReport:
    s: np.ndarray
    cos_plane: np.ndarray
    cos_space: np.ndarray
    slack: np.ndarray
    min_slack: float
    max_plane_distance: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.min_slack >= -self.tol and self.max_plane_distance <= math.pi + self.tol


def tangent_cosine_comparison(
    c: SampledCurve,
    c_tilde: SampledCurve,
    s_star,
    s_range: tuple[float, float] | None = None,
    tol: float = DEFAULT_TOL,
) -> TangentCosineReport:
    """Pointwise cosine comparison of tangent distances to the pivot.

    cos d(T(s), T(s*)) <= cos d(T~(s), T~(s*)) sample-wise, plus the
    half-turn bound d(T(s), T(s*)) <= pi on the plane side.
    """
    _require_aligned(c, c_tilde)
    if isinstance(s_star, SStarResult):
        star = s_star
        n_plane, n_space = _pivots(c, c_tilde, star)
        theta_star = star.chord_angle
    else:
        row = c.nearest_row(float(s_star), side="minus")
        n_plane, n_space = unit(c.tangent[row]), unit(c_tilde.tangent[row])
        theta_star = float(c.theta[row]) if c.theta is not None else None
    i0, i1 = _window_rows(c, s_range)
    sl = slice(i0, i1 + 1)
    cos_plane = c.tangent[sl] @ n_plane
    cos_space = c_tilde.tangent[sl] @ n_space
    slack = cos_space - cos_plane
    if c.theta is not None and theta_star is not None:
        max_dist = float(np.max(np.abs(c.theta[sl] - theta_star)))
    else:
        max_dist = float(np.max(np.arccos(np.clip(cos_plane, -1.0, 1.0))))
    return TangentCosineReport(
        c.s[sl].copy(), cos_plane, cos_space, slack,
        float(np.min(slack)), max_dist, tol,
    )


# ---------------------------------------------------------------------------
# chord inequalities
# ---------------------------------------------------------------------------

@dataclass
class ChordReport:
    """Chord comparison: plane chord length against the projected space chord.

    ``inner_product_bound`` is the space displacement paired with the included
    chord; the chord inequality follows from it by Cauchy-Schwarz, so both
    slacks are recorded.
    """

    plane_chord: float
    space_chord: float
    inner_product_bound: float
    s_star: float
    passed: bool
    bound_slack: float
    chord_slack: float

    @property
    def slack(self) -> float:
        return min(self.bound_slack, self.chord_slack)


def chord_inequality(
    c: SampledCurve,
    c_tilde: SampledCurve,
    s_range: tuple[float, float] | None = None,
    tol: float = DEFAULT_TOL,
) -> ChordReport:
    _require_aligned(c, c_tilde)
    star = find_s_star(c, s_range)
    _, n_space = _pivots(c, c_tilde, star)
    i0, i1 = _window_rows(c, s_range)
    chord = c.position[i1] - c.position[i0]
    clen = float(np.linalg.norm(chord))
    delta_t = c_tilde.position[i1] - c_tilde.position[i0]
    p2 = float(delta_t @ n_space)
    bound = p2 * clen
    space_chord = float(np.linalg.norm(delta_t))
    bound_slack = bound - clen * clen
    chord_slack = space_chord - clen
    return ChordReport(
        plane_chord=clen,
        space_chord=space_chord,
        inner_product_bound=bound,
        s_star=star.s_star,
        passed=(bound_slack >= -tol * max(clen, 1.0)) and (chord_slack >= -tol),
        bound_slack=bound_slack,
        chord_slack=chord_slack,
    )


@dataclass
class NestedChordReport:
    lhs: float
    rhs: float
    slack: float
    s_star: float
    passed: bool


def nested_chord_inequality(
    c: SampledCurve,
    c_tilde: SampledCurve,
    s_first: float,
    s_second: float,
    s_inner_first: float,
    s_inner_second: float,
    tol: float = DEFAULT_TOL,
) -> NestedChordReport:
    """Inner displacement against the outer chord, on both sides of the inclusion.

    <c(b*) - c(a*), chord> <= <c~(b*) - c~(a*), iota(chord)> for any nested
    a* < b* inside the outer window; equals the chord inequality when the
    windows coincide.
    """
    _require_aligned(c, c_tilde)
    if not (s_first <= s_inner_first < s_inner_second <= s_second):
        raise ValueError("inner window must nest inside the outer window")
    star = find_s_star(c, (s_first, s_second))
    n_plane, n_space = _pivots(c, c_tilde, star)
    i0, i1 = _window_rows(c, (s_first, s_second))
    chord = c.position[i1] - c.position[i0]
    clen = float(np.linalg.norm(chord))
    j0 = c.nearest_row(s_inner_first, side="plus")
    j1 = c.nearest_row(s_inner_second, side="minus")
    lhs = float((c.position[j1] - c.position[j0]) @ (clen * n_plane))
    rhs = float((c_tilde.position[j1] - c_tilde.position[j0]) @ (clen * n_space))
    slack = rhs - lhs
    return NestedChordReport(lhs, rhs, slack, star.s_star, slack >= -tol * max(clen, 1.0))


@dataclass
class ExpansionReport:
    """Directional expansion bound for the paired displacement field.

    For sampled parameter pairs (a, b), the space displacement projected on
    the included chord direction must reach the full plane chord length:
    <X(y) - X(x), (y - x)/|y - x|> >= |x - y|, the linear expansion bound.
    """

    n_pairs: int
    min_slack: float
    worst_pair: tuple[float, float]
    tol: float

    @property
    def passed(self) -> bool:
        return self.min_slack >= -self.tol


def expansion_module_check(
    c: SampledCurve,
    c_tilde: SampledCurve,
    pair_samples: int = 50,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    min_separation: float | None = None,
) -> ExpansionReport:
    _require_aligned(c, c_tilde)
    rng = np.random.default_rng(seed)
    n = len(c.s)
    sep = max(10, n // 100) if min_separation is None else int(
        max(2, min_separation / max(np.max(np.diff(c.s)), 1e-12))
    )
    worst, worst_pair, made = math.inf, (0.0, 0.0), 0
    while made < pair_samples:
        i = int(rng.integers(0, n - sep))
        j = int(rng.integers(i + sep, n))
        a, b = float(c.s[i]), float(c.s[j])
        if b - a <= 0:
            continue
        star = find_s_star(c, (a, b))
        _, n_space = _pivots(c, c_tilde, star)
        i0, i1 = _window_rows(c, (a, b))
        clen = float(np.linalg.norm(c.position[i1] - c.position[i0]))
        proj = float((c_tilde.position[i1] - c_tilde.position[i0]) @ n_space)
        slack = proj - clen
        if slack < worst:
            worst, worst_pair = slack, (a, b)
        made += 1
    return ExpansionReport(pair_samples, worst, worst_pair, tol)


# ---------------------------------------------------------------------------
# consistency helper used by tests and the CLI
# ---------------------------------------------------------------------------

def integral_consistency(report: MonotonicityReport) -> float:
    """|I(s'') - I(s') - integral of the derivative slack| over the window."""
    increase = float(report.I_samples[-1] - report.I_samples[0])
    quad = integrate_sampled(report.s, report.derivative_slack)
    return abs(increase - quad)
