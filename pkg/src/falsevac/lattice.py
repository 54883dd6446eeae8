"""Uniform 1-D grids, sampled fields, finite differences and quadrature.

Also holds the Gaussian delta-sequence used to model thin domain walls::

    delta_N(x) = N / (2 sqrt(pi)) * exp(-x^2 N^2 / 4)

whose integral is 1 for every N > 0.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .errors import PreconditionError

#: Minimum clearance between a delta centre and the grid edge, in units of 1/N.
DELTA_CLEARANCE = 6.0
#: Largest admissible spacing for delta sampling, in units of 1/N.
DELTA_MAX_SPACING = 0.2


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise PreconditionError("grid bounds must be finite")
        if not self.x_max > self.x_min:
            raise PreconditionError(
                f"grid requires x_max > x_min, got [{self.x_min}, {self.x_max}]")
        if int(self.n) != self.n or self.n < 3:
            raise PreconditionError(f"grid requires an integer n >= 3, got {self.n}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n - 1)

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    @cached_property
    def x(self) -> np.ndarray:
        x = np.linspace(self.x_min, self.x_max, int(self.n))
        x.flags.writeable = False
        return x

    @cached_property
    def weights(self) -> np.ndarray:
        """Composite trapezoid weights."""
        w = np.full(int(self.n), self.dx)
        w[0] = w[-1] = 0.5 * self.dx
        w.flags.writeable = False
        return w


@dataclass(frozen=True, eq=False)
class FieldConfig:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.grid.n,):
            raise PreconditionError(
                f"field has shape {v.shape}, grid expects ({self.grid.n},)")
        if not np.all(np.isfinite(v)):
            raise PreconditionError("field values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def with_values(self, values) -> "FieldConfig":
        return FieldConfig(self.grid, values)


@dataclass(frozen=True)
class DeltaPair:
    """Two Gaussian delta-sequence walls of sharpness N at x = +/- L/2."""

    n_param: float
    l_sep: float
    grid: Grid

    def __post_init__(self):
        if not self.n_param > 0:
            raise PreconditionError(f"N must be > 0, got {self.n_param}")
        if not self.l_sep > 0:
            raise PreconditionError(f"L must be > 0, got {self.l_sep}")
        if self.grid.dx > DELTA_MAX_SPACING / self.n_param:
            raise PreconditionError(
                f"grid spacing {self.grid.dx:.4g} exceeds {DELTA_MAX_SPACING}/N "
                f"= {DELTA_MAX_SPACING / self.n_param:.4g}")
        clearance = DELTA_CLEARANCE / self.n_param
        half = 0.5 * self.l_sep
        if self.grid.x_max - half < clearance or -half - self.grid.x_min < clearance:
            raise PreconditionError(
                f"wall centres at +/-{half:g} need {clearance:.4g} clearance from the "
                f"grid edges [{self.grid.x_min}, {self.grid.x_max}]")

    @classmethod
    def auto(cls, n_param: float, l_sep: float, clearance: float = 12.0,
             spacing: float = 0.1) -> "DeltaPair":
        """Build a pair on a symmetric grid sized from N.

        ``clearance`` and ``spacing`` are in units of 1/N; the defaults leave
        the Gaussian tails below double-precision roundoff at the edges.
        """
        half = 0.5 * l_sep + clearance / n_param
        n = int(math.ceil(2.0 * half * n_param / spacing)) + 1
        return cls(n_param, l_sep, Grid(-half, half, n))


def sample(grid: Grid, f: Callable) -> FieldConfig:
    """Sample ``f`` on the grid nodes. ``f`` may be vectorised or scalar-valued."""
    try:
        vals = np.asarray(f(grid.x), dtype=float)
        if vals.shape != grid.x.shape:
            vals = np.broadcast_to(vals, grid.x.shape).copy()
    except (TypeError, ValueError):
        vals = np.array([float(f(float(xi))) for xi in grid.x])
    if not np.all(np.isfinite(vals)):
        bad = int(np.argmax(~np.isfinite(vals)))
        raise PreconditionError(f"non-finite sample at x = {grid.x[bad]!r}")
    return FieldConfig(grid, vals)


# fourth-order one-sided first-derivative stencils, in units of 1/(12 dx)
_EDGE4 = (np.array([-25.0, 48.0, -36.0, 16.0, -3.0]),
          np.array([-3.0, -10.0, 18.0, -6.0, 1.0]))


def derivative_array(values: np.ndarray, dx: float, order: int = 2,
                     axis: int = -1) -> np.ndarray:
    """First derivative along ``axis`` by central differences.

    ``order=2`` uses the three-point central stencil with second-order
    one-sided edges; ``order=4`` the five-point stencil with fourth-order
    one-sided edges (needs at least 5 points).
    """
    values = np.asarray(values, dtype=float)
    if order == 2:
        return np.gradient(values, dx, edge_order=2, axis=axis)
    if order != 4:
        raise PreconditionError(f"difference order must be 2 or 4, got {order}")
    v = np.moveaxis(values, axis, -1)
    if v.shape[-1] < 5:
        raise PreconditionError("fourth-order differences need at least 5 points")
    out = np.empty_like(v)
    # written as differences so constant fields give exactly zero
    out[..., 2:-2] = (8.0 * (v[..., 3:-1] - v[..., 1:-3])
                      - (v[..., 4:] - v[..., :-4])) / (12.0 * dx)
    head = v[..., :5] - v[..., :1]
    tail = v[..., :-6:-1] - v[..., -1:]
    out[..., 0] = head @ _EDGE4[0] / (12.0 * dx)
    out[..., 1] = head @ _EDGE4[1] / (12.0 * dx)
    out[..., -1] = -(tail @ _EDGE4[0]) / (12.0 * dx)
    out[..., -2] = -(tail @ _EDGE4[1]) / (12.0 * dx)
    return np.moveaxis(out, -1, axis)


def gradient(config: FieldConfig, order: int = 2) -> FieldConfig:
    """d(phi)/dx on the same grid; linear fields are differentiated exactly."""
    return FieldConfig(config.grid,
                       derivative_array(config.values, config.grid.dx, order))


def integrate(config: FieldConfig) -> float:
    """Composite trapezoid rule over the grid."""
    return float(np.dot(config.grid.weights, config.values))


def delta_n(pair: DeltaPair, center: float) -> FieldConfig:
    """Sample the delta-sequence member of sharpness N centred at ``center``."""
    n = pair.n_param
    xt = pair.grid.x - center
    return FieldConfig(pair.grid,
                       n / (2.0 * math.sqrt(math.pi)) * np.exp(-xt * xt * n * n / 4.0))


def wall_gradient_config(pair: DeltaPair) -> FieldConfig:
    """Field gradient of a wall pair: delta_N(x - L/2) - delta_N(x + L/2)."""
    half = 0.5 * pair.l_sep
    return FieldConfig(pair.grid,
                       delta_n(pair, half).values - delta_n(pair, -half).values)


def wall_profile(pair: DeltaPair, base: float = 0.0) -> FieldConfig:
    """Field whose exact derivative is :func:`wall_gradient_config`."""
    half = 0.5 * pair.l_sep
    n = pair.n_param
    erf = np.vectorize(math.erf, otypes=[float])
    x = pair.grid.x
    vals = base + 0.5 * (erf(n * (x - half) / 2.0) - erf(n * (x + half) / 2.0))
    return FieldConfig(pair.grid, vals)


def wall_gradient_energy(pair: DeltaPair) -> float:
    """Gradient energy (1/2) * integral of the wall-pair gradient squared."""
    g = wall_gradient_config(pair).values
    return 0.5 * integrate(FieldConfig(pair.grid, g * g))


def wall_gradient_energy_closed_form(n_param: float, l_sep: float) -> float:
    """(N / (2 sqrt(2 pi))) * (1 - exp(-N^2 L^2 / 8))."""
    return (n_param / (2.0 * math.sqrt(2.0 * math.pi))
            * -math.expm1(-n_param**2 * l_sep**2 / 8.0))


def write_csv(config: FieldConfig, path, header: tuple[str, str] = ("x", "value")) -> None:
    """Two-column CSV, one header line, 12 significant digits."""
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for xi, vi in zip(config.grid.x, config.values):
            fh.write(f"{xi:.12g},{vi:.12g}\n")


def read_csv(path) -> FieldConfig:
    """Inverse of :func:`write_csv`; the grid is rebuilt from the first/last x."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if len(rows) < 4:
        raise PreconditionError(f"{path}: need a header and at least 3 rows")
    data = np.array([[float(r[0]), float(r[1])] for r in rows[1:]])
    grid = Grid(float(data[0, 0]), float(data[-1, 0]), len(data))
    return FieldConfig(grid, data[:, 1])
