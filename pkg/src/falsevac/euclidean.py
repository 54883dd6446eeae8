"""Euclidean energy functional and action.

Everything is evaluated directly in Euclidean signature (tau = i t), so
S_E = integral of (1/2)(d_tau phi)^2 + (1/2)(d_x phi)^2 + V(phi) over the
(tau, x) plane. A single short time slice of width ``t_p`` with no tau
dependence reduces this to ``t_p`` times the static energy functional.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import lattice
from .errors import PreconditionError
from .lattice import FieldConfig, Grid
from .potentials import PotentialSpec, evaluate, find_minima
from .solitons import ENERGY_DIFF_ORDER

BOUND_TOL = 1e-9
DEFAULT_BRACKET = (-1.0, 2.0 * np.pi + 1.0)


@dataclass(frozen=True)
class ActionReport:
    gradient_term: float
    potential_term: float
    total: float
    t_p: float = 0.0
    reduced: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class BoundReport:
    lagrangian_value: float
    q_term: float
    quadratic_term: float
    satisfied: bool

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class SpacetimeConfig:
    tau_grid: Grid
    x_grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.tau_grid.n, self.x_grid.n):
            raise PreconditionError(
                f"spacetime field has shape {v.shape}, "
                f"grids expect ({self.tau_grid.n}, {self.x_grid.n})")
        if not np.all(np.isfinite(v)):
            raise PreconditionError("spacetime field values must be finite")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def static(cls, tau_grid: Grid, profile: FieldConfig) -> "SpacetimeConfig":
        """Tau-independent extension of a spatial profile."""
        return cls(tau_grid, profile.grid,
                   np.broadcast_to(profile.values, (tau_grid.n, profile.grid.n)))


def energy_functional(spec: PotentialSpec, profile: FieldConfig) -> ActionReport:
    """Static energy: integral of (1/2)(dphi/dx)^2 and of V(phi)."""
    g = lattice.derivative_array(profile.values, profile.grid.dx, ENERGY_DIFF_ORDER)
    w = profile.grid.weights
    grad = float(np.dot(w, 0.5 * g * g))
    pot = float(np.dot(w, evaluate(spec, profile.values)))
    return ActionReport(grad, pot, grad + pot)


def reduced_action(spec: PotentialSpec, profile: FieldConfig, t_p: float) -> ActionReport:
    """Action of an instantaneous nucleation slice of duration ``t_p``."""
    if not t_p > 0:
        raise PreconditionError(f"t_p must be > 0, got {t_p}")
    e = energy_functional(spec, profile)
    return ActionReport(t_p * e.gradient_term, t_p * e.potential_term, t_p * e.total,
                        t_p=t_p, reduced=True)


def euclidean_action_2d(spec: PotentialSpec, config: SpacetimeConfig) -> ActionReport:
    """Tensor-product trapezoid action over the (tau, x) lattice."""
    v = config.values
    d_tau = lattice.derivative_array(v, config.tau_grid.dx, ENERGY_DIFF_ORDER, axis=0)
    d_x = lattice.derivative_array(v, config.x_grid.dx, ENERGY_DIFF_ORDER, axis=1)
    w_tau, w_x = config.tau_grid.weights, config.x_grid.weights
    grad = float(w_tau @ (0.5 * (d_tau * d_tau + d_x * d_x)) @ w_x)
    pot = float(w_tau @ evaluate(spec, v) @ w_x)
    return ActionReport(grad, pot, grad + pot, t_p=config.tau_grid.length)


def expansion_base_term(profile: FieldConfig) -> float:
    """Gradient-only energy of a reference configuration."""
    g = lattice.derivative_array(profile.values, profile.grid.dx, ENERGY_DIFF_ORDER)
    return float(np.dot(profile.grid.weights, 0.5 * g * g))


def lagrangian_bound(spec: PotentialSpec, profile: FieldConfig, phi0: float | None = None,
                     q_abs: float = 0.0,
                     bracket: tuple[float, float] = DEFAULT_BRACKET) -> BoundReport:
    """Compare the energy of ``profile`` with |Q| + gap * integral (phi - phi_C)^2.

    The potential is measured from ``V(phi_C)``. ``phi0`` overrides the
    expansion point phi_C; by default it is the false vacuum found in
    ``bracket``. A zero gap yields a vacuous (but still reported) bound.
    """
    if not q_abs >= 0:
        raise PreconditionError(f"q_abs must be >= 0, got {q_abs}")
    vac = find_minima(spec, bracket)
    phi_c = vac.phi_false if phi0 is None else float(phi0)
    w = profile.grid.weights
    shifted = evaluate(spec, profile.values) - evaluate(spec, phi_c)
    lagr = expansion_base_term(profile) + float(np.dot(w, shifted))
    dev = profile.values - phi_c
    quad = float(np.dot(w, 0.5 * dev * dev * 2.0 * vac.gap))
    return BoundReport(lagrangian_value=lagr, q_term=float(q_abs), quadratic_term=quad,
                       satisfied=bool(lagr >= q_abs + quad - BOUND_TOL))
