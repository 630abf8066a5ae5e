"""Uniform radial mesh and trapezoidal quadrature primitives.

The mesh stores interior nodes only, r_j = j*h for j = 1..n with
h = r_max/(n + 1).  The Dirichlet values f(0) = f(r_max) = 0 are implicit.
Because both boundary values vanish, the composite trapezoid over
[0, r_max] reduces to h * sum(f), and the two running integrals satisfy

    cumulative_from_zero(f)[j] + cumulative_to_infinity(f)[j] == integrate(f)

for every node j (up to roundoff).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, ContractError

__all__ = [
    "MIN_NODES",
    "RadialGrid",
    "WaveFunction",
    "make_grid",
    "integrate",
    "cumulative_from_zero",
    "cumulative_to_infinity",
]

MIN_NODES = 16


@dataclass(frozen=True)
class RadialGrid:
    r_max: float
    n: int

    @property
    def h(self) -> float:
        return self.r_max / (self.n + 1)

    @property
    def nodes(self) -> np.ndarray:
        return self.h * np.arange(1, self.n + 1, dtype=float)

    def check(self, f) -> np.ndarray:
        """Return ``f`` as a float array, raising if it does not live on this grid."""
        arr = np.asarray(f, dtype=float)
        if arr.shape != (self.n,):
            raise ContractError(
                f"grid function has shape {arr.shape}, expected ({self.n},)"
            )
        return arr


def make_grid(r_max: float, n: int) -> RadialGrid:
    """Uniform grid of ``n`` interior nodes on (0, r_max)."""
    if not (isinstance(r_max, (int, float)) and math.isfinite(r_max) and r_max > 0):
        raise ConfigurationError(f"r_max must be a positive finite number, got {r_max!r}")
    if isinstance(n, bool) or int(n) != n or n < MIN_NODES:
        raise ConfigurationError(f"n must be an integer >= {MIN_NODES}, got {n!r}")
    return RadialGrid(float(r_max), int(n))


def integrate(f, grid: RadialGrid) -> float:
    """Trapezoidal integral of ``f`` over [0, r_max] with zero end values."""
    return float(grid.h * np.sum(grid.check(f)))


def cumulative_from_zero(f, grid: RadialGrid) -> np.ndarray:
    """g_j = integral of f from 0 to r_j (trapezoid, f(0) = 0).

    Stencil: g_j = h * (f_1 + ... + f_{j-1} + f_j / 2).
    """
    f = grid.check(f)
    return grid.h * (np.cumsum(f) - 0.5 * f)


def cumulative_to_infinity(f, grid: RadialGrid) -> np.ndarray:
    """g_j = integral of f from r_j to r_max (trapezoid, f(r_max) = 0).

    Stencil: g_j = h * (f_j / 2 + f_{j+1} + ... + f_n).
    """
    f = grid.check(f)
    tail = np.cumsum(f[::-1])[::-1]
    return grid.h * (tail - 0.5 * f)


@dataclass(frozen=True)
class WaveFunction:
    """Reduced radial function phi(r) = r psi(r) sampled on a grid.

    Normalization convention: 4 pi * integral |phi|^2 dr = 1.
    """

    values: np.ndarray
    grid: RadialGrid

    def __post_init__(self):
        values = self.grid.check(self.values)
        if not np.all(np.isfinite(values)):
            raise ContractError("wavefunction contains non-finite values")
        object.__setattr__(self, "values", values)

    def norm(self) -> float:
        """4 pi * integral |phi|^2 dr."""
        return 4.0 * math.pi * integrate(self.values**2, self.grid)

    @property
    def normalized(self) -> bool:
        return abs(self.norm() - 1.0) < 1e-10

    def normalize(self) -> "WaveFunction":
        total = self.norm()
        if total == 0.0:
            raise ContractError("cannot normalize a zero wavefunction")
        return WaveFunction(self.values / math.sqrt(total), self.grid)

    def density(self) -> np.ndarray:
        """Radial probability density F(r) = 4 pi |phi(r)|^2."""
        return 4.0 * math.pi * self.values**2

    def overlap(self, other: "WaveFunction") -> float:
        """4 pi * integral phi * other dr."""
        return 4.0 * math.pi * integrate(self.values * other.values, self.grid)

    def shell_probability(self, r_inner: float, r_outer: float) -> float:
        """Probability of finding the electron between two radii.

        Linear interpolation of the running trapezoid integral of F(r).
        """
        grid = self.grid
        radii = np.concatenate(([0.0], grid.nodes, [grid.r_max]))
        running = cumulative_from_zero(self.density(), grid)
        running = np.concatenate(([0.0], running, [integrate(self.density(), grid)]))
        lo, hi = np.interp([r_inner, r_outer], radii, running)
        return float(hi - lo)
