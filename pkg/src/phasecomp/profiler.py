"""Error-plane scans of the transition probability and contour-region metrics.

Axes are named after the physical parameter they sweep:

    alpha  relative pulse-area / Rabi-frequency error
    eps    relative phase error
    omega  Rabi frequency over its nominal value (alpha = omega - 1)
    delta  detuning over the nominal Rabi frequency

The default double-model grid is alpha in [-1, 1] x eps in [-0.25, 0.25];
the default triple-model grid is omega in [0, 2] x delta in [-1, 1] at fixed
eps.  Figure axis ranges are not published, so these defaults are generous
artifact choices covering the quoted tolerance claims.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .su2 import CompositeSequence, ErrorModel

__all__ = [
    "AxisSpec",
    "ProfileGrid",
    "RegionMetrics",
    "LEVELS",
    "default_axes",
    "scan",
    "region_metrics",
    "compare",
    "grid_to_csv",
    "grid_to_jsonable",
]

_AXIS_NAMES = ("alpha", "eps", "omega", "delta")
_AXIS_ORIGIN = {"alpha": 0.0, "eps": 0.0, "omega": 1.0, "delta": 0.0}

# Contour levels 1 - 10^-m for m = 2, 3, 4.
LEVELS = tuple((m, 1.0 - 10.0**-m) for m in (2, 3, 4))


@dataclass(frozen=True)
class AxisSpec:
    name: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.name not in _AXIS_NAMES:
            raise ValueError(f"unknown axis {self.name!r}")
        if self.count < 2:
            raise ValueError("axis needs at least 2 points")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    @property
    def origin(self) -> float:
        return _AXIS_ORIGIN[self.name]

    def to_jsonable(self) -> dict:
        return {
            "name": self.name,
            "start": self.start,
            "stop": self.stop,
            "count": self.count,
        }


@dataclass(frozen=True)
class ProfileGrid:
    seq: CompositeSequence
    model: ErrorModel
    x: AxisSpec
    y: AxisSpec
    fixed: dict
    values: np.ndarray  # shape (x.count, y.count)


@dataclass(frozen=True)
class RegionMetrics:
    """Per-level grid fraction and origin-line interval widths."""

    # maps m -> value, for the levels 1 - 10^-m
    cell_fraction: dict
    width_x: dict
    width_y: dict

    def to_jsonable(self) -> dict:
        return {
            "levels": [
                {
                    "m": m,
                    "level": level,
                    "cell_fraction": self.cell_fraction[m],
                    "width_x": self.width_x[m],
                    "width_y": self.width_y[m],
                }
                for m, level in LEVELS
            ]
        }


def default_axes(model: ErrorModel, points: int = 201) -> tuple[AxisSpec, AxisSpec]:
    if model.kind == "double":
        return (
            AxisSpec("alpha", -1.0, 1.0, points),
            AxisSpec("eps", -0.25, 0.25, points),
        )
    return (
        AxisSpec("omega", 0.0, 2.0, points),
        AxisSpec("delta", -1.0, 1.0, points),
    )


def _error_fields(model: ErrorModel, assignments: dict):
    """Map axis-name assignments to (alpha, delta, eps) arrays/scalars."""
    alpha = assignments.get("alpha", 0.0)
    if "omega" in assignments:
        if "alpha" in assignments:
            raise ValueError("give either alpha or omega, not both")
        alpha = assignments["omega"] - 1.0
    eps = assignments.get("eps", 0.0)
    delta = assignments.get("delta", 0.0)
    if model.kind == "double" and np.any(np.asarray(delta) != 0.0):
        raise ValueError("the double model has no detuning axis")
    return alpha, delta, eps


def _probability(seq: CompositeSequence, model: ErrorModel, alpha, delta, eps):
    """Vectorized transition probability; arguments broadcast together."""
    shape = np.broadcast(np.asarray(alpha), np.asarray(delta), np.asarray(eps)).shape
    a = np.ones(shape, dtype=complex)
    b = np.zeros(shape, dtype=complex)
    for pulse in seq.pulses:
        if model.kind == "double":
            half = 0.5 * pulse.area * (1.0 + np.asarray(alpha))
            pa = np.cos(half).astype(complex)
            pb = -1j * np.sin(half) * np.exp(1j * pulse.phase * (1.0 + np.asarray(eps)))
        else:
            om = pulse.rabi * (1.0 + np.asarray(alpha))
            de = pulse.detuning + model.nominal_rabi * np.asarray(delta)
            w = np.hypot(om, de)
            half = 0.5 * w * pulse.duration
            small = w * pulse.duration < 1e-8
            w_safe = np.where(small, 1.0, w)
            sin_over_w = np.where(
                small,
                0.5 * pulse.duration * (1.0 - half * half / 6.0),
                np.sin(half) / w_safe,
            )
            pa = np.cos(half) - 1j * de * sin_over_w
            pb = -1j * om * sin_over_w * np.exp(1j * pulse.phase * (1.0 + np.asarray(eps)))
        a, b = pa * a - pb * np.conj(b), pa * b + pb * np.conj(a)
    return np.abs(b) ** 2


def scan(
    seq: CompositeSequence,
    model: ErrorModel,
    axes: tuple[AxisSpec, AxisSpec] | None = None,
    fixed: dict | None = None,
) -> ProfileGrid:
    """Probability at every node of a 2D error-parameter grid."""
    if axes is None:
        axes = default_axes(model)
    x, y = axes
    if x.name == y.name:
        raise ValueError("scan axes must differ")
    fixed = dict(fixed or {})
    assignments = dict(fixed)
    assignments[x.name] = x.values()[:, None]
    assignments[y.name] = y.values()[None, :]
    alpha, delta, eps = _error_fields(model, assignments)
    values = _probability(seq, model, alpha, delta, eps)
    return ProfileGrid(seq=seq, model=model, x=x, y=y, fixed=fixed, values=values)


def _line_probability(grid: ProfileGrid, axis: AxisSpec, other: AxisSpec):
    """Scalar probability along `axis` with the other scanned variable at its origin."""

    def f(t: float) -> float:
        assignments = dict(grid.fixed)
        assignments[axis.name] = t
        assignments[other.name] = other.origin
        alpha, delta, eps = _error_fields(grid.model, assignments)
        return float(_probability(grid.seq, grid.model, alpha, delta, eps))

    return f


def _axis_width(grid: ProfileGrid, axis: AxisSpec, other: AxisSpec, level: float) -> float:
    """Length of the super-level interval along the axis through the origin.

    The interval is bracketed on the scan nodes and refined by bisection to
    1e-4 axis units; it is clipped at the scan range.
    """
    f = _line_probability(grid, axis, other)
    t = axis.values()
    origin = axis.origin
    if f(origin) < level:
        return 0.0
    p = np.array([f(v) for v in t])
    i0 = int(np.argmin(np.abs(t - origin)))
    if p[i0] < level:
        # nearest node already below the level: the region is narrower than
        # one cell; bisect between the origin and its neighbours directly
        lo_edge = _bisect_edge(f, origin, t[max(i0 - 1, 0)], level)
        hi_edge = _bisect_edge(f, origin, t[min(i0 + 1, len(t) - 1)], level)
        return hi_edge - lo_edge

    i_lo = i0
    while i_lo > 0 and p[i_lo - 1] >= level:
        i_lo -= 1
    i_hi = i0
    while i_hi < len(t) - 1 and p[i_hi + 1] >= level:
        i_hi += 1
    lo = t[i_lo] if i_lo == 0 else _bisect_edge(f, t[i_lo], t[i_lo - 1], level)
    hi = t[i_hi] if i_hi == len(t) - 1 else _bisect_edge(f, t[i_hi], t[i_hi + 1], level)
    return float(hi - lo)


def _bisect_edge(f, inside: float, outside: float, level: float, tol: float = 1e-4) -> float:
    if f(outside) >= level:
        return outside
    while abs(outside - inside) > tol:
        mid = 0.5 * (inside + outside)
        if f(mid) >= level:
            inside = mid
        else:
            outside = mid
    return 0.5 * (inside + outside)


def region_metrics(grid: ProfileGrid) -> RegionMetrics:
    """Super-level cell fractions and origin-line widths for m = 2, 3, 4."""
    cell_fraction = {}
    width_x = {}
    width_y = {}
    for m, level in LEVELS:
        cell_fraction[m] = float(np.mean(grid.values >= level))
        width_x[m] = _axis_width(grid, grid.x, grid.y, level)
        width_y[m] = _axis_width(grid, grid.y, grid.x, level)
    return RegionMetrics(cell_fraction=cell_fraction, width_x=width_x, width_y=width_y)


@dataclass(frozen=True)
class ComparisonReport:
    fraction_a: dict
    fraction_b: dict
    fraction_diff: dict  # a - b, per m
    max_abs_dp: float

    def to_jsonable(self) -> dict:
        return {
            "levels": [
                {
                    "m": m,
                    "cell_fraction_a": self.fraction_a[m],
                    "cell_fraction_b": self.fraction_b[m],
                    "cell_fraction_diff": self.fraction_diff[m],
                }
                for m, _ in LEVELS
            ],
            "max_abs_dp": self.max_abs_dp,
        }


def compare(
    seq_a: CompositeSequence,
    seq_b: CompositeSequence,
    model: ErrorModel,
    axes: tuple[AxisSpec, AxisSpec] | None = None,
    fixed: dict | None = None,
) -> ComparisonReport:
    """Scan both sequences on the same grid and compare their level regions."""
    ga = scan(seq_a, model, axes, fixed)
    gb = scan(seq_b, model, axes, fixed)
    fa = {m: float(np.mean(ga.values >= level)) for m, level in LEVELS}
    fb = {m: float(np.mean(gb.values >= level)) for m, level in LEVELS}
    return ComparisonReport(
        fraction_a=fa,
        fraction_b=fb,
        fraction_diff={m: fa[m] - fb[m] for m, _ in LEVELS},
        max_abs_dp=float(np.max(np.abs(ga.values - gb.values))),
    )


def grid_to_csv(grid: ProfileGrid, header_extra: str = "") -> str:
    """CSV dump with stable column order x, y, p (x varies slowest)."""
    lines = []
    fixed = " ".join(f"{k}={v:g}" for k, v in sorted(grid.fixed.items()))
    meta = f"# seq={grid.seq.label} model={grid.model.kind}"
    if fixed:
        meta += f" {fixed}"
    if header_extra:
        meta += f" {header_extra}"
    lines.append(meta)
    lines.append(f"{grid.x.name},{grid.y.name},p")
    xv = grid.x.values()
    yv = grid.y.values()
    for i, xi in enumerate(xv):
        for j, yj in enumerate(yv):
            lines.append(f"{xi:.17g},{yj:.17g},{grid.values[i, j]:.17g}")
    return "\n".join(lines) + "\n"


def grid_to_jsonable(grid: ProfileGrid) -> dict:
    return {
        "seq": grid.seq.label,
        "model": grid.model.kind,
        "axes": [grid.x.to_jsonable(), grid.y.to_jsonable()],
        "fixed": dict(sorted(grid.fixed.items())),
        "values": [[float(v) for v in row] for row in grid.values],
    }
