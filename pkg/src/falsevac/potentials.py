"""Scalar potential families, their analytic derivatives and vacuum structure.

Three families are supported::

    QuarticDoubleWell   V = (lam/4)(phi^2 - a^2)^2 - tilt*phi
    DrivenSineGordon    V = c_a(1 - cos phi) + c_b(phi - phi_c)^2 - tilt*phi
    TaylorQuartic       V = c0(phi - phi0)^2 + c1(phi - phi0)^4

All functions accept scalars or numpy arrays for ``phi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConvergenceError, PreconditionError

NEWTON_TOL = 1e-12
NEWTON_MAXITER = 100
SCAN_POINTS = 4096


@dataclass(frozen=True)
class QuarticDoubleWell:
    lam: float
    a: float
    tilt: float = 0.0

    def __post_init__(self):
        if not self.lam > 0:
            raise PreconditionError(f"lambda must be > 0, got {self.lam}")
        if not self.a > 0:
            raise PreconditionError(f"a must be > 0, got {self.a}")
        if not self.tilt >= 0:
            raise PreconditionError(f"tilt must be >= 0, got {self.tilt}")

    def value(self, phi):
        return 0.25 * self.lam * (phi * phi - self.a**2) ** 2 - self.tilt * phi

    def derivative(self, phi, order: int):
        lam, a = self.lam, self.a
        if order == 1:
            return lam * phi * (phi * phi - a * a) - self.tilt
        if order == 2:
            return lam * (3.0 * phi * phi - a * a)
        if order == 3:
            return 6.0 * lam * phi
        return 6.0 * lam + 0.0 * phi


@dataclass(frozen=True)
class DrivenSineGordon:
    c_a: float
    c_b: float = 0.0
    phi_c: float = 0.0
    tilt: float = 0.0

    def __post_init__(self):
        if not self.c_a > 0:
            raise PreconditionError(f"c_a must be > 0, got {self.c_a}")
        if not self.c_b >= 0:
            raise PreconditionError(f"c_b must be >= 0, got {self.c_b}")
        if not self.tilt >= 0:
            raise PreconditionError(f"tilt must be >= 0, got {self.tilt}")

    def value(self, phi):
        # 1 - cos(phi) == 2 sin^2(phi/2), without cancellation near the vacua
        s = np.sin(0.5 * phi)
        return (2.0 * self.c_a * s * s + self.c_b * (phi - self.phi_c) ** 2
                - self.tilt * phi)

    def derivative(self, phi, order: int):
        c_a = self.c_a
        if order == 1:
            return c_a * np.sin(phi) + 2.0 * self.c_b * (phi - self.phi_c) - self.tilt
        if order == 2:
            return c_a * np.cos(phi) + 2.0 * self.c_b
        if order == 3:
            return -c_a * np.sin(phi)
        return -c_a * np.cos(phi)


@dataclass(frozen=True)
class TaylorQuartic:
    phi0: float
    c0: float
    c1: float

    def __post_init__(self):
        if not self.c0 >= 0:
            raise PreconditionError(f"c0 must be >= 0, got {self.c0}")

    def value(self, phi):
        d2 = (phi - self.phi0) ** 2
        return self.c0 * d2 + self.c1 * d2 * d2

    def derivative(self, phi, order: int):
        d = phi - self.phi0
        if order == 1:
            return 2.0 * self.c0 * d + 4.0 * self.c1 * d**3
        if order == 2:
            return 2.0 * self.c0 + 12.0 * self.c1 * d * d
        if order == 3:
            return 24.0 * self.c1 * d
        return 24.0 * self.c1 + 0.0 * d


PotentialSpec = Union[QuarticDoubleWell, DrivenSineGordon, TaylorQuartic]


@dataclass(frozen=True)
class VacuumPair:
    phi_false: float
    phi_true: float
    v_false: float
    v_true: float
    gap: float

    def as_dict(self) -> dict:
        return {
            "phi_false": self.phi_false,
            "phi_true": self.phi_true,
            "v_false": self.v_false,
            "v_true": self.v_true,
            "gap": self.gap,
        }


def evaluate(spec: PotentialSpec, phi):
    """Potential energy density V(phi)."""
    return spec.value(phi)


def deriv(spec: PotentialSpec, phi, order: int = 1):
    """Analytic derivative d^order V / d phi^order for order in 1..4."""
    if order not in (1, 2, 3, 4):
        raise PreconditionError(f"derivative order must be 1..4, got {order!r}")
    return spec.derivative(phi, order)


def taylor_coefficients(spec: PotentialSpec, phi0: float) -> tuple[float, ...]:
    """Coefficients V^(k)(phi0)/k! for k = 0..4."""
    coeffs = [float(evaluate(spec, phi0))]
    for k in range(1, 5):
        coeffs.append(float(deriv(spec, phi0, k)) / math.factorial(k))
    return tuple(coeffs)


def gap_to_stiffness(gap: float) -> float:
    """Gaussian stiffness alpha = 1/gap.

    Raises:
        PreconditionError: if ``gap <= 0`` (degenerate or inverted vacua).
    """
    if not gap > 0:
        raise PreconditionError(
            f"energy gap must be > 0 for a finite stiffness, got {gap}")
    return 1.0 / gap


def _refine_minimum(spec: PotentialSpec, lo: float, hi: float) -> float:
    """Safeguarded Newton on V' inside [lo, hi] with V'(lo) < 0 <= V'(hi)."""
    x = 0.5 * (lo + hi)
    for _ in range(NEWTON_MAXITER):
        g = float(deriv(spec, x, 1))
        if abs(g) <= NEWTON_TOL:
            return x
        if g < 0:
            lo = x
        else:
            hi = x
        if hi - lo <= 2.0 * np.spacing(max(abs(lo), abs(hi))):
            return x
        h = float(deriv(spec, x, 2))
        step = x - g / h if h > 0 else None
        if step is None or not lo < step < hi:
            step = 0.5 * (lo + hi)
        x = step
    g = float(deriv(spec, x, 1))
    if abs(g) <= NEWTON_TOL:
        return x
    raise ConvergenceError(
        f"minimum refinement did not converge in {NEWTON_MAXITER} iterations "
        f"(|V'| = {abs(g):.3e} at phi = {x!r})")


def local_minima(spec: PotentialSpec, bracket: tuple[float, float]) -> list[float]:
    """All interior local minima of V inside ``bracket``, in ascending phi."""
    lo, hi = float(bracket[0]), float(bracket[1])
    if not hi > lo:
        raise PreconditionError(f"bracket must satisfy lo < hi, got {bracket}")
    xs = np.linspace(lo, hi, SCAN_POINTS)
    g = np.asarray(deriv(spec, xs, 1), dtype=float)
    idx = np.nonzero((g[:-1] < 0) & (g[1:] >= 0))[0]
    return [_refine_minimum(spec, float(xs[i]), float(xs[i + 1])) for i in idx]


def find_minima(spec: PotentialSpec, bracket: tuple[float, float]) -> VacuumPair:
    """Locate the false (higher) and true (lower) vacua inside ``bracket``.

    The two lowest local minima are kept. Exactly degenerate wells are labelled
    with the smaller field value as the false vacuum and a gap of zero.
    """
    minima = local_minima(spec, bracket)
    if len(minima) < 2:
        raise PreconditionError(
            f"bracket {tuple(bracket)} contains {len(minima)} local minima, need 2")
    vals = [float(evaluate(spec, m)) for m in minima]
    order = sorted(range(len(minima)), key=lambda i: (vals[i], minima[i]))
    i, j = order[0], order[1]
    tie_tol = 1e-14 * max(1.0, abs(vals[i]), abs(vals[j]))
    if vals[j] - vals[i] <= tie_tol:
        f, t = (i, j) if minima[i] < minima[j] else (j, i)
        return VacuumPair(minima[f], minima[t], vals[f], vals[t], 0.0)
    return VacuumPair(minima[j], minima[i], vals[j], vals[i], vals[j] - vals[i])


def spec_to_dict(spec: PotentialSpec) -> dict:
    if isinstance(spec, QuarticDoubleWell):
        return {"family": "quartic", "lambda": spec.lam, "a": spec.a, "tilt": spec.tilt}
    if isinstance(spec, DrivenSineGordon):
        return {"family": "sine-gordon", "c_a": spec.c_a, "c_b": spec.c_b,
                "phi_c": spec.phi_c, "tilt": spec.tilt}
    return {"family": "taylor", "phi0": spec.phi0, "c0": spec.c0, "c1": spec.c1}
