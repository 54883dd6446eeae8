"""Gaussian wavefunctionals on a 1-D field lattice.

A state is ``Psi[phi] = c * exp(-integral alpha(x) (phi(x) - center(x))^2 dx)``
with the integral taken by the trapezoid rule. The functional measure is the
product of ``dphi_j`` over lattice sites, so site ``j`` carries the Gaussian
weight ``exp(-2 alpha_j w_j (phi_j - m_j)^2)`` in ``|Psi|^2``, and ``c`` is
fixed by unit norm under that measure.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import PreconditionError
from .lattice import FieldConfig, Grid
from .potentials import DrivenSineGordon, find_minima, gap_to_stiffness

DEFAULT_BRACKET = (-1.0, 2.0 * math.pi + 1.0)
NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GaussianWavefunctional:
    center: FieldConfig
    stiffness: np.ndarray
    log_norm: float

    def __post_init__(self):
        a = np.array(self.stiffness, dtype=float)
        if a.shape != (self.center.grid.n,):
            raise PreconditionError(
                f"stiffness has shape {a.shape}, expected ({self.center.grid.n},)")
        if not np.all(a > 0) or not np.all(np.isfinite(a)):
            raise PreconditionError("stiffness must be finite and > 0 at every site")
        a.flags.writeable = False
        object.__setattr__(self, "stiffness", a)

    @property
    def grid(self) -> Grid:
        return self.center.grid

    @property
    def site_precision(self) -> np.ndarray:
        """alpha_j * w_j, the per-site coefficient in the exponent of Psi."""
        return self.stiffness * self.grid.weights


def _log_site_integrals(precision: np.ndarray) -> float:
    # sum_j log of integral exp(-2 p_j t^2) dt = sum_j log sqrt(pi / (2 p_j))
    return 0.5 * float(np.sum(np.log(math.pi / (2.0 * precision))))


def make_functional(center: FieldConfig, stiffness) -> GaussianWavefunctional:
    """Unit-normalised Gaussian state about ``center``.

    ``stiffness`` is either one positive number or one value per site.
    """
    alpha = np.broadcast_to(np.asarray(stiffness, dtype=float), (center.grid.n,)).copy()
    if not np.all(alpha > 0):
        raise PreconditionError("stiffness must be > 0 at every site")
    log_norm = -0.5 * _log_site_integrals(alpha * center.grid.weights)
    psi = GaussianWavefunctional(center, alpha, log_norm)
    if abs(norm_check(psi) - 1.0) > NORM_TOL:
        raise ArithmeticError("normalisation constant failed its self-consistency check")
    return psi


def _require_same_grid(a: Grid, b: Grid) -> None:
    if a != b:
        raise PreconditionError(f"grid mismatch: {a} vs {b}")


def evaluate_log(psi: GaussianWavefunctional, phi: FieldConfig) -> float:
    """log Psi[phi]."""
    _require_same_grid(psi.grid, phi.grid)
    d = phi.values - psi.center.values
    return psi.log_norm - float(np.dot(psi.site_precision, d * d))


def norm_check(psi: GaussianWavefunctional) -> float:
    """Squared norm of ``psi`` under the lattice measure (closed form)."""
    return math.exp(2.0 * psi.log_norm + _log_site_integrals(psi.site_precision))


def log_overlap(psi_i: GaussianWavefunctional, psi_f: GaussianWavefunctional) -> float:
    """Logarithm of the normalised overlap <psi_i|psi_f>."""
    _require_same_grid(psi_i.grid, psi_f.grid)
    p, q = psi_i.site_precision, psi_f.site_precision
    s = p + q
    d = psi_i.center.values - psi_f.center.values
    return float(np.sum(0.25 * np.log(4.0 * p * q) - 0.5 * np.log(s))
                 - np.sum(p * q * d * d / s))


def overlap(psi_i: GaussianWavefunctional, psi_f: GaussianWavefunctional) -> float:
    """Normalised overlap, in [0, 1]; computed in log space."""
    return min(1.0, math.exp(log_overlap(psi_i, psi_f)))


def vacuum_states(spec: DrivenSineGordon, grid: Grid,
                  bracket: tuple[float, float] = DEFAULT_BRACKET
                  ) -> tuple[GaussianWavefunctional, GaussianWavefunctional]:
    """Initial (false-vacuum) and final (true-vacuum) states of a tilted sine-Gordon system.

    Both are centred on constant configurations at the vacua and share the
    uniform stiffness 1/gap, with the vacua taken from
    :func:`~falsevac.potentials.find_minima` over ``bracket``.
    """
    if not isinstance(spec, DrivenSineGordon):
        raise PreconditionError(
            f"vacuum_states expects DrivenSineGordon, got {type(spec).__name__}")
    vac = find_minima(spec, bracket)
    if vac.gap <= 0:
        raise PreconditionError("degenerate vacua: no finite stiffness (tilt must be > 0)")
    alpha = gap_to_stiffness(vac.gap)
    ones = np.ones(grid.n)
    psi_i = make_functional(FieldConfig(grid, vac.phi_false * ones), alpha)
    psi_f = make_functional(FieldConfig(grid, vac.phi_true * ones), alpha)
    return psi_i, psi_f


def quadrature_inner_product(psi_a: GaussianWavefunctional, psi_b: GaussianWavefunctional,
                             points: int = 41, width: float = 8.0,
                             max_sites: int = 4) -> float:
    """Brute-force lattice functional integral of Psi_a * Psi_b.

    Dense tensor-product Gauss-Legendre quadrature, ``points`` nodes per site,
    over the integrand's mode +/- ``width`` standard deviations. Intended as an
    independent check of the closed forms on lattices of at most ``max_sites``.
    """
    _require_same_grid(psi_a.grid, psi_b.grid)
    n = psi_a.grid.n
    if n > max_sites:
        raise PreconditionError(f"tensor quadrature limited to {max_sites} sites, got {n}")
    t, w = leggauss(points)
    p, q = psi_a.site_precision, psi_b.site_precision
    a, b = psi_a.center.values, psi_b.center.values
    axes, wts = [], []
    for j in range(n):
        mode = (p[j] * a[j] + q[j] * b[j]) / (p[j] + q[j])
        sd = 1.0 / math.sqrt(2.0 * (p[j] + q[j]))
        half = width * sd
        axes.append(mode + half * t)
        wts.append(half * w)
    # sweep the first axis; the dense block over the others has points**(n-1) rows
    rest = np.stack(np.meshgrid(*axes[1:], indexing="ij"), axis=-1).reshape(-1, n - 1)
    rest_w = functools.reduce(np.multiply.outer, wts[1:]).ravel()
    total = 0.0
    for x0, w0 in zip(axes[0], wts[0]):
        pts = np.column_stack([np.full(len(rest), x0), rest])
        la = psi_a.log_norm - ((pts - a) ** 2) @ p
        lb = psi_b.log_norm - ((pts - b) ** 2) @ q
        total += w0 * float(np.dot(rest_w, np.exp(la + lb)))
    return total
