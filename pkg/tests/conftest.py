import numpy as np
import pytest

from falsevac.lattice import FieldConfig, Grid


def random_kink_profiles(grid: Grid, a: float, count: int, seed: int = 0):
    """Smooth, possibly non-monotone profiles running from -a to +a.

    Each is a * tanh(s (x - x0) + bump), with the bump a localised wiggle, so
    the ends sit on the vacua to well below the asymptotic tolerance.
    """
    rng = np.random.default_rng(seed)
    x = grid.x
    out = []
    for _ in range(count):
        s = rng.uniform(0.8, 3.0)
        x0, x1 = rng.uniform(-2.0, 2.0, size=2)
        amp = rng.uniform(0.2, 1.5)
        omega = rng.uniform(0.5, 3.0)
        theta = rng.uniform(0, 2 * np.pi)
        width = rng.uniform(0.5, 2.0)
        bump = amp * np.sin(omega * x + theta) * np.exp(-((x - x1) / width) ** 2)
        out.append(FieldConfig(grid, a * np.tanh(s * (x - x0) + bump)))
    return out


def random_fluctuations(grid: Grid, center: float, count: int, seed: int = 0,
                        max_amp: float = 0.5):
    """Smooth profiles confined to [center - max_amp, center + max_amp]."""
    rng = np.random.default_rng(seed)
    x = (grid.x - grid.x_min) / grid.length
    out = []
    for _ in range(count):
        modes = rng.integers(1, 6, size=3)
        coeffs = rng.normal(size=3)
        phases = rng.uniform(0, 2 * np.pi, size=3)
        shape = sum(c * np.sin(np.pi * m * x + p) for c, m, p in zip(coeffs, modes, phases))
        shape = shape / np.max(np.abs(shape))
        amp = rng.uniform(0.0, max_amp)
        out.append(FieldConfig(grid, center + amp * shape))
    return out


@pytest.fixture(scope="session")
def kink_grid():
    return Grid(-10.0, 10.0, 4001)
