"""Static kinks: energy density, mass, topological charge and the Bogomol'nyi bound.

Kinks are obtained from the first-order (BPS) flow ``dphi/dx = sqrt(2 V(phi))``
integrated by fixed-step RK4 outward from the barrier top, which is pinned to
the middle node of the grid.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import lattice
from .errors import ConvergenceError, PreconditionError
from .lattice import FieldConfig, Grid
from .potentials import DrivenSineGordon, PotentialSpec, QuarticDoubleWell, deriv, evaluate

#: Difference order used for every energy-type integrand.
ENERGY_DIFF_ORDER = 4
#: Largest |V'| accepted at the grid ends for a vacuum-asymptotic profile.
ASYMPTOTIC_TOL = 1e-3


@dataclass(frozen=True, eq=False)
class KinkSolution:
    profile: FieldConfig
    mass: float
    charge: float
    bound: float
    bps_residual: float

    def summary(self) -> dict:
        return {"mass": self.mass, "charge": self.charge, "bound": self.bound,
                "bps_residual": self.bps_residual}

    def save(self, csv_path, json_path) -> None:
        """Profile as two-column CSV plus the summary as JSON."""
        lattice.write_csv(self.profile, csv_path)
        with open(json_path, "w") as fh:
            json.dump(self.summary(), fh, sort_keys=True, indent=2)
            fh.write("\n")


def energy_density(spec: PotentialSpec, profile: FieldConfig) -> FieldConfig:
    """Pointwise (1/2)(dphi/dx)^2 + V(phi)."""
    g = lattice.derivative_array(profile.values, profile.grid.dx, ENERGY_DIFF_ORDER)
    return profile.with_values(0.5 * g * g + evaluate(spec, profile.values))


def kink_mass(spec: PotentialSpec, profile: FieldConfig,
              asymptotic_tol: float = ASYMPTOTIC_TOL) -> float:
    """Integrated energy density of a vacuum-asymptotic profile.

    Raises:
        PreconditionError: if |V'| at either grid end exceeds ``asymptotic_tol``.
    """
    ends = profile.values[[0, -1]]
    slope = np.abs(deriv(spec, ends, 1))
    if np.any(slope > asymptotic_tol):
        raise PreconditionError(
            f"profile is not vacuum-asymptotic: |V'| at the ends = {slope.tolist()}")
    return lattice.integrate(energy_density(spec, profile))


def topological_charge(profile: FieldConfig, phi_vac: float) -> float:
    """Q = (phi(right) - phi(left)) / (2 phi_vac)."""
    if not phi_vac > 0:
        raise PreconditionError(f"phi_vac must be > 0, got {phi_vac}")
    return float(profile.values[-1] - profile.values[0]) / (2.0 * phi_vac)


def topological_current(profile: FieldConfig, phi_vac: float) -> FieldConfig:
    """Static charge density J^0 = (1/(2 phi_vac)) dphi/dx."""
    if not phi_vac > 0:
        raise PreconditionError(f"phi_vac must be > 0, got {phi_vac}")
    g = lattice.gradient(profile)
    return g.with_values(g.values / (2.0 * phi_vac))


def bound_unit(spec: QuarticDoubleWell) -> float:
    """Mass unit (4/(3 sqrt 2)) mu^3/lambda with mu = sqrt(lambda) a."""
    _require_symmetric_quartic(spec)
    mu = math.sqrt(spec.lam) * spec.a
    return 4.0 / (3.0 * math.sqrt(2.0)) * mu**3 / spec.lam


def bogomolnyi_bound(spec: QuarticDoubleWell, charge: float) -> float:
    """Lower bound on the mass of any configuration with topological charge ``charge``."""
    return bound_unit(spec) * abs(charge)


def _require_symmetric_quartic(spec) -> None:
    if not isinstance(spec, QuarticDoubleWell):
        raise PreconditionError(
            f"the Bogomol'nyi bound is defined for QuarticDoubleWell, got {type(spec).__name__}")
    if spec.tilt != 0:
        raise PreconditionError("the Bogomol'nyi bound requires an untilted double well")


def _kink_endpoints(spec: PotentialSpec) -> tuple[float, float, float, float]:
    """(lower vacuum, barrier top, upper vacuum, charge normalisation)."""
    if isinstance(spec, QuarticDoubleWell):
        if spec.tilt != 0:
            raise PreconditionError("tilted double well has no static kink (vacua not degenerate)")
        return -spec.a, 0.0, spec.a, spec.a
    if isinstance(spec, DrivenSineGordon):
        if spec.tilt != 0 or spec.c_b != 0:
            raise PreconditionError(
                "driven sine-Gordon kink needs c_b = 0 and tilt = 0 (degenerate vacua)")
        return 0.0, math.pi, 2.0 * math.pi, math.pi
    raise PreconditionError(f"no kink is defined for {type(spec).__name__}")


def _bps_rate(spec: PotentialSpec, phi):
    # clamp: roundoff can push V slightly negative near a vacuum
    return np.sqrt(np.maximum(2.0 * evaluate(spec, phi), 0.0))


def bps_residual(spec: PotentialSpec, profile: FieldConfig) -> float:
    """Max-norm defect of dphi/dx = sqrt(2V) in integrated form.

    Over each pair of cells the increment phi[j+1] - phi[j-1] is compared with
    Simpson's rule for the integral of sqrt(2V(phi)), then divided by 2 dx.
    """
    v, dx = profile.values, profile.grid.dx
    f = _bps_rate(spec, v)
    defect = v[2:] - v[:-2] - dx / 3.0 * (f[:-2] + 4.0 * f[1:-1] + f[2:])
    return float(np.max(np.abs(defect)) / (2.0 * dx))


def _rk4_flow(spec: PotentialSpec, phi0: float, h: float, steps: int) -> np.ndarray:
    out = np.empty(steps + 1)
    out[0] = phi = phi0
    for k in range(steps):
        k1 = _bps_rate(spec, phi)
        k2 = _bps_rate(spec, phi + 0.5 * h * k1)
        k3 = _bps_rate(spec, phi + 0.5 * h * k2)
        k4 = _bps_rate(spec, phi + h * k3)
        phi = phi + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = phi
    return out


def solve_kink(spec: PotentialSpec, grid: Grid) -> KinkSolution:
    """BPS kink between the two degenerate vacua of ``spec``.

    The barrier top sits on node ``(n - 1) // 2``; for an odd node count on a
    symmetric grid that is x = 0.

    Raises:
        PreconditionError: vacua are not degenerate or the family has no kink.
        ConvergenceError: the flow leaves the interval between the vacua.
    """
    lower, top, upper, phi_vac = _kink_endpoints(spec)
    mid = (grid.n - 1) // 2
    dx = grid.dx
    right = _rk4_flow(spec, top, dx, grid.n - 1 - mid)
    left = _rk4_flow(spec, top, -dx, mid)
    values = np.concatenate([left[::-1], right[1:]])
    span = upper - lower
    if (not np.all(np.isfinite(values)) or values.min() < lower - 1e-9 * span
            or values.max() > upper + 1e-9 * span):
        raise ConvergenceError("BPS flow left the interval between the vacua")
    profile = FieldConfig(grid, values)
    charge = topological_charge(profile, phi_vac)
    if isinstance(spec, QuarticDoubleWell):
        bound = bogomolnyi_bound(spec, charge)
    else:
        # sine-Gordon: the same first-order bound, W(upper) - W(lower) = 8 c_a^(1/2)
        bound = 8.0 * math.sqrt(spec.c_a) * abs(charge)
    return KinkSolution(profile=profile,
                        mass=kink_mass(spec, profile),
                        charge=charge,
                        bound=bound,
                        bps_residual=bps_residual(spec, profile))
