"""Deterministic numerical kernel shared by every curve module.

Fixed-step RK4 with an optional per-step state repair hook, composite
Simpson quadrature on sampled grids, monotone bisection, and
finite-difference derivatives. All routines are pure functions of their
inputs: two runs (and the two curves of a comparison pair) see
bit-identical grids, so pointwise inequality checks never incur
interpolation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    BracketError,
    DomainError,
    GridError,
    IntegrationError,
    NormalizationError,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class StepControl:
    """Grid policy shared by reconstructions and comparisons.

    ``step_h`` is an upper bound on the integration step: a smooth segment of
    length ``ell`` is covered with ``n = max(samples_min, ceil(ell/step_h))``
    uniform steps, so the effective step divides the segment exactly and is
    never larger than ``step_h``. ``tol`` is the slack tolerance used by the
    inequality checks downstream.
    """

    step_h: float = 1e-3
    tol: float = 1e-6
    samples_min: int = 16

    def __post_init__(self) -> None:
        if not self.step_h > 0:
            raise ValueError(f"step_h must be positive, got {self.step_h}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.samples_min < 16:
            raise ValueError(f"samples_min must be >= 16, got {self.samples_min}")

    def segment_steps(self, length: float) -> int:
        """Number of uniform RK4 steps used to cover one smooth segment."""
        if not length > 0:
            raise ValueError(f"segment length must be positive, got {length}")
        return max(self.samples_min, int(math.ceil(length / self.step_h - 1e-12)))


DEFAULT_CONTROL = StepControl()


@dataclass
class SampledFunction:
    """Scalar or vector samples on a strictly increasing arc-length grid.

    NaN entries mark samples where the quantity is undefined (for example
    curvature at a tangent jump).
    """

    s_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        self.s_grid = np.asarray(self.s_grid, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.s_grid.ndim != 1:
            raise ValueError("s_grid must be one-dimensional")
        if len(self.s_grid) != len(self.values):
            raise ValueError(
                f"grid/value length mismatch: {len(self.s_grid)} vs {len(self.values)}"
            )
        if len(self.s_grid) >= 2 and not np.all(np.diff(self.s_grid) > 0):
            raise ValueError("s_grid must be strictly increasing")

    def __len__(self) -> int:
        return len(self.s_grid)

    @property
    def span(self) -> tuple[float, float]:
        return float(self.s_grid[0]), float(self.s_grid[-1])

    def __call__(self, s):
        """Linear interpolation (per component for vector values)."""
        s = np.asarray(s, dtype=float)
        if self.values.ndim == 1:
            return np.interp(s, self.s_grid, self.values)
        cols = [np.interp(s, self.s_grid, col) for col in self.values.T]
        return np.stack(cols, axis=-1)

    def index_of(self, s: float, atol: float = 1e-9) -> int:
        """Index of the grid point equal to ``s`` (within ``atol``)."""
        i = int(np.searchsorted(self.s_grid, s))
        best, err = -1, math.inf
        for j in (i - 1, i, i + 1):
            if 0 <= j < len(self.s_grid):
                e = abs(self.s_grid[j] - s)
                if e < err:
                    best, err = j, e
        if best < 0 or err > atol * max(1.0, abs(s)):
            raise DomainError(f"s={s!r} is not a grid point of this sampled function")
        return best

    def restrict(self, a: float, b: float) -> "SampledFunction":
        i0, i1 = self.index_of(a), self.index_of(b)
        if i1 <= i0:
            raise DomainError(f"empty restriction [{a}, {b}]")
        return SampledFunction(self.s_grid[i0 : i1 + 1], self.values[i0 : i1 + 1])


# ---------------------------------------------------------------------------
# small vector helpers
# ---------------------------------------------------------------------------

def unit(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n < 1e-14:
        raise NormalizationError("cannot normalize a (near-)zero vector")
    return v / n


def angle_between(u: np.ndarray, v: np.ndarray) -> float:
    """Angle in [0, pi] between two vectors (normalized internally)."""
    uu, vv = unit(u), unit(v)
    return float(np.arccos(np.clip(np.dot(uu, vv), -1.0, 1.0)))


def orthonormal_complement(v: np.ndarray, reference: np.ndarray | None = None) -> np.ndarray:
    """Deterministic unit vector orthogonal to ``v``.

    Gram-Schmidt against a fixed reference axis (the last coordinate axis),
    falling back to the previous axis when nearly parallel. A caller-supplied
    reference wins when usable.
    """
    v = unit(v)
    dim = v.shape[0]
    candidates: list[np.ndarray] = []
    if reference is not None:
        candidates.append(np.asarray(reference, dtype=float))
    for k in range(dim - 1, -1, -1):
        e = np.zeros(dim)
        e[k] = 1.0
        candidates.append(e)
    for r in candidates:
        w = r - np.dot(r, v) * v
        n = float(np.linalg.norm(w))
        if n > 1e-6:
            return w / n
    raise NormalizationError("no usable complement direction found")


# ---------------------------------------------------------------------------
# RK4 integration
# ---------------------------------------------------------------------------

def rk4_integrate(
    field: Callable[[float, np.ndarray], np.ndarray],
    y0,
    span: tuple[float, float],
    control: StepControl = DEFAULT_CONTROL,
    post_step: Callable[[float, np.ndarray], np.ndarray] | None = None,
) -> SampledFunction:
    """Classical fixed-step RK4 over ``span`` with the control's grid policy.

    ``post_step(s, y)`` (when given) may repair the state after every step,
    e.g. re-orthonormalize a moving frame; its return value replaces ``y``.
    The trajectory is sampled at every step point, both endpoints included.
    Raises IntegrationError the moment the state stops being finite.
    """
    a, b = float(span[0]), float(span[1])
    if not b > a:
        raise ValueError(f"span must satisfy b > a, got [{a}, {b}]")
    y = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    scalar = np.ndim(y0) == 0
    if not np.all(np.isfinite(y)):
        raise IntegrationError(f"non-finite initial state at s={a:.9g}")

    n = control.segment_steps(b - a)
    h = (b - a) / n
    s_grid = a + h * np.arange(n + 1)
    s_grid[-1] = b
    out = np.empty((n + 1, y.size))
    out[0] = y

    for i in range(n):
        s = s_grid[i]
        k1 = np.asarray(field(s, y), dtype=float)
        k2 = np.asarray(field(s + 0.5 * h, y + 0.5 * h * k1), dtype=float)
        k3 = np.asarray(field(s + 0.5 * h, y + 0.5 * h * k2), dtype=float)
        k4 = np.asarray(field(s + h, y + h * k3), dtype=float)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if post_step is not None:
            y = post_step(s_grid[i + 1], y)
        if not np.all(np.isfinite(y)):
            raise IntegrationError(f"non-finite state at s={s_grid[i + 1]:.9g}")
        out[i + 1] = y

    values = out[:, 0] if scalar else out
    return SampledFunction(s_grid, values)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def _uniform_runs(s: np.ndarray):
    """Yield (i0, i1) index ranges of maximal constant-spacing runs.

    The splitting threshold tolerates representation noise of the values so
    a nominally uniform grid never shatters into micro-runs.
    """
    d = np.diff(s)
    allow = 8.0 * np.finfo(float).eps * float(np.max(np.abs(s)))
    start = 0
    for i in range(1, len(d)):
        if abs(d[i] - d[start]) > max(1e-12 * abs(d[start]), allow):
            yield start, i
            start = i
    yield start, len(d)


def _simpson_uniform(v: np.ndarray, h: float) -> float:
    """Composite Simpson on a uniform grid; 3/8 rule absorbs an odd tail."""
    n = len(v) - 1
    if n <= 0:
        return 0.0
    if n == 1:
        return 0.5 * h * (v[0] + v[1])
    if n % 2 == 0:
        return (h / 3.0) * (v[0] + v[-1] + 4.0 * v[1:-1:2].sum() + 2.0 * v[2:-2:2].sum())
    head = _simpson_uniform(v[: n - 2], h) if n > 3 else 0.0
    tail = (3.0 * h / 8.0) * (v[-4] + 3.0 * v[-3] + 3.0 * v[-2] + v[-1])
    return head + tail


def integrate_sampled(s: np.ndarray, v: np.ndarray) -> float:
    """Integrate samples over their full (piecewise-uniform) grid."""
    total = 0.0
    h_all = np.diff(s)
    for i0, i1 in _uniform_runs(s):
        total += _simpson_uniform(v[i0 : i1 + 1], float(h_all[i0]))
    return total


def simpson_quadrature(
    f: SampledFunction, span: tuple[float, float] | None = None
) -> float:
    """Composite-Simpson integral of ``f`` over ``span`` (default: full grid).

    The endpoints must coincide with grid points; integrating between samples
    would silently degrade the order, so it is refused with a DomainError.
    """
    if f.values.ndim != 1:
        raise ValueError("simpson_quadrature expects scalar samples")
    if span is None:
        i0, i1 = 0, len(f) - 1
    else:
        a, b = span
        lo, hi = f.span
        if a < lo - 1e-9 or b > hi + 1e-9:
            raise DomainError(f"range [{a}, {b}] outside sampled span [{lo}, {hi}]")
        i0, i1 = f.index_of(a), f.index_of(b)
    if i1 - i0 + 1 < 3:
        raise DomainError("need at least 3 grid points inside the range")
    return integrate_sampled(f.s_grid[i0 : i1 + 1], f.values[i0 : i1 + 1])


def cumulative_integral_uniform(v: np.ndarray, h: float) -> np.ndarray:
    """Cumulative integral on a uniform grid, 4th order (cubic cell weights).

    Returns an array of the same length as ``v`` starting at 0.
    """
    n = len(v)
    if n < 2:
        return np.zeros(n)
    if n < 4:
        cells = 0.5 * h * (v[1:] + v[:-1])
    else:
        cells = np.empty(n - 1)
        cells[0] = h * (9.0 * v[0] + 19.0 * v[1] - 5.0 * v[2] + v[3]) / 24.0
        cells[-1] = h * (v[-4] - 5.0 * v[-3] + 19.0 * v[-2] + 9.0 * v[-1]) / 24.0
        if n > 3:
            cells[1:-1] = (
                h * (-v[:-3] + 13.0 * v[1:-2] + 13.0 * v[2:-1] - v[3:]) / 24.0
            )
    out = np.empty(n)
    out[0] = 0.0
    np.cumsum(cells, out=out[1:])
    return out


# ---------------------------------------------------------------------------
# root finding
# ---------------------------------------------------------------------------

def bisect_monotone(
    g: Callable[[float], float], bracket: tuple[float, float], tol: float = 1e-10
) -> float:
    """Bisection for a monotone non-decreasing ``g`` on ``bracket``.

    Stops when |g| <= tol or the bracket width drops below tol. Endpoints
    already within tol of zero are returned immediately; endpoints of the
    same sign beyond tol raise BracketError.
    """
    a, b = float(bracket[0]), float(bracket[1])
    if not b >= a:
        raise ValueError(f"invalid bracket [{a}, {b}]")
    fa, fb = g(a), g(b)
    if abs(fa) <= tol:
        return a
    if abs(fb) <= tol:
        return b
    if fa * fb > 0.0:
        raise BracketError(
            f"bracket endpoints have the same sign: g({a})={fa:.3g}, g({b})={fb:.3g}"
        )
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = g(m)
        if abs(fm) <= tol or (b - a) <= tol:
            return m
        if fa * fm <= 0.0:
            b, fb = m, fm
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


# ---------------------------------------------------------------------------
# finite differences
# ---------------------------------------------------------------------------

def grid_step(s: np.ndarray) -> float:
    """Uniform spacing of a grid; GridError when not uniform within 1e-12.

    Representation noise is unavoidable: the spacings of a + i*h stored as
    doubles wobble by a few ulps of the *values*, so the tolerance combines
    the relative step bound with that floor.
    """
    if len(s) < 2:
        raise GridError("grid too short for a step size")
    d = np.diff(s)
    h = float(s[-1] - s[0]) / (len(s) - 1)
    allow = max(1e-12 * abs(h), 8.0 * np.finfo(float).eps * float(np.max(np.abs(s))))
    if np.max(np.abs(d - h)) > allow:
        raise GridError("grid is not uniform; resample before differentiating")
    return h


def finite_diff_array(values: np.ndarray, h: float, order: int) -> np.ndarray:
    """Central differences inside, one-sided 2nd-order stencils at the ends.

    ``values`` may be (n,) or (n, d); at least 5 rows are required.
    """
    v = np.asarray(values, dtype=float)
    n = v.shape[0]
    if n < 5:
        raise GridError(f"need at least 5 samples for finite differences, got {n}")
    out = np.empty_like(v)
    if order == 1:
        out[1:-1] = (v[2:] - v[:-2]) / (2.0 * h)
        out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
        out[-1] = (3.0 * v[-1] - 4.0 * v[-2] + v[-3]) / (2.0 * h)
    elif order == 2:
        h2 = h * h
        out[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / h2
        out[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2
        out[-1] = (2.0 * v[-1] - 5.0 * v[-2] + 4.0 * v[-3] - v[-4]) / h2
    else:
        raise ValueError(f"order must be 1 or 2, got {order}")
    return out


def finite_diff(f: SampledFunction, order: int = 1) -> SampledFunction:
    """Derivative estimate of a sampled function on its own (uniform) grid."""
    h = grid_step(f.s_grid)
    return SampledFunction(f.s_grid, finite_diff_array(f.values, h, order))
