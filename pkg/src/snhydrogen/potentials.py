"""External nuclear potential and the spherical self-interaction potential."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .grid import RadialGrid, WaveFunction, cumulative_from_zero, cumulative_to_infinity

__all__ = [
    "PotentialOnGrid",
    "external_potential",
    "self_interaction_potential",
    "total_potential",
]

KINDS = ("external", "self_interaction", "total")


@dataclass(frozen=True)
class PotentialOnGrid:
    values: np.ndarray
    kind: str
    grid: RadialGrid

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ContractError(f"unknown potential kind {self.kind!r}")
        object.__setattr__(self, "values", self.grid.check(self.values))


def external_potential(grid: RadialGrid, coupling: float, Z: float = 1.0) -> PotentialOnGrid:
    """Attractive point-nucleus potential -coupling * Z / r."""
    if coupling <= 0 or Z <= 0:
        raise ContractError(f"coupling and Z must be positive, got {coupling}, {Z}")
    return PotentialOnGrid(-coupling * Z / grid.nodes, "external", grid)


def self_interaction_potential(
    phi: WaveFunction, grid: RadialGrid, alpha: float, *, check_norm: bool = True
) -> PotentialOnGrid:
    """Potential of the electron's own spherical density.

    W(r) = 4 pi alpha [ (1/r) int_0^r |phi|^2 dr' + int_r^inf |phi|^2 / r' dr' ]

    which is the monopole term of the Coulomb/Newton kernel applied to
    |psi|^2.  Evaluated with prefix sums in O(n).  The density must be
    normalized, otherwise the coupling strength is meaningless; pass
    ``check_norm=False`` only for identity tests on unnormalized inputs.
    """
    if phi.grid != grid:
        raise ContractError("wavefunction and potential grids differ")
    if check_norm and not phi.normalized:
        raise ContractError(
            f"self-interaction needs a normalized wavefunction (norm = {phi.norm():.12g})"
        )
    r = grid.nodes
    rho = phi.values**2
    inner = cumulative_from_zero(rho, grid) / r
    outer = cumulative_to_infinity(rho / r, grid)
    return PotentialOnGrid(4.0 * math.pi * alpha * (inner + outer), "self_interaction", grid)


def total_potential(external: PotentialOnGrid, self_interaction: PotentialOnGrid | None) -> PotentialOnGrid:
    if self_interaction is None:
        return PotentialOnGrid(external.values, "total", external.grid)
    if self_interaction.grid != external.grid:
        raise ContractError("potentials live on different grids")
    return PotentialOnGrid(external.values + self_interaction.values, "total", external.grid)
