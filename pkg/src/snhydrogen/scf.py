"""Self-consistent solution of the radial equation with self-interaction.

One SCF run targets one s-level.  Starting from a hydrogenic test function,
each round builds the self-interaction potential from the current
wavefunction, damps it against the previous potential, re-diagonalizes,
and picks the eigenstate with the target's node count.  The loop stops once
the selected eigenvalue changes by less than the tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import eval_genlaguerre

from .constants import (
    CODATA2018,
    KINETIC_COEFFICIENT,
    InteractionConfig,
    PhysicalConstants,
    coupling_alpha,
    external_coupling,
)
from .eigensolver import EigenPair, assemble_hamiltonian, lowest_eigenpairs, residual_norm
from .errors import ConfigurationError, ContractError, NumericalFailure
from .grid import RadialGrid, WaveFunction, make_grid
from .potentials import (
    PotentialOnGrid,
    external_potential,
    self_interaction_potential,
    total_potential,
)

__all__ = [
    "SolverConfig",
    "ScfResult",
    "default_grid",
    "initial_guess",
    "mix_potentials",
    "scf_solve",
    "fixed_point_shift",
]

# extra eigenpairs solved above the target so node selection has candidates
SELECTION_MARGIN = 2


def default_grid(level: int) -> tuple[float, int]:
    """(r_max, n) giving h ~ 0.01 Bohr and a box well past the state's tail."""
    if level == 1:
        return 60.0, 6000
    return 400.0, 40000


@dataclass(frozen=True)
class SolverConfig:
    target_level: int = 1
    interactions: InteractionConfig = field(default_factory=InteractionConfig)
    Z: float = 1.0
    r_max: float | None = None
    n: int | None = None
    energy_tolerance: float = 1e-9
    max_iterations: int = 200
    mixing_beta: float = 0.5

    def __post_init__(self):
        if isinstance(self.target_level, bool) or int(self.target_level) != self.target_level or self.target_level < 1:
            raise ConfigurationError(f"target_level: must be an integer >= 1, got {self.target_level!r}")
        if not 0.0 < self.mixing_beta <= 1.0:
            raise ConfigurationError(f"mixing_beta: must lie in (0, 1], got {self.mixing_beta!r}")
        if not self.energy_tolerance > 0.0:
            raise ConfigurationError(f"energy_tolerance: must be positive, got {self.energy_tolerance!r}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ConfigurationError(f"max_iterations: must be a positive integer, got {self.max_iterations!r}")
        if not self.Z > 0.0:
            raise ConfigurationError(f"Z: must be positive, got {self.Z!r}")

    def grid(self) -> RadialGrid:
        r_max, n = default_grid(self.target_level)
        return make_grid(self.r_max if self.r_max is not None else r_max, self.n if self.n is not None else n)


@dataclass
class ScfResult:
    level: int
    energy_hartree: float
    energy_ev: float
    phi: WaveFunction
    iterations: int
    converged: bool
    energy_history: list[float]
    final_residual: float
    node_count: int
    density: np.ndarray
    config: SolverConfig
    potential: PotentialOnGrid

    @property
    def grid(self) -> RadialGrid:
        return self.phi.grid

    def peak_radius(self) -> float:
        """Radius of the maximum of F(r)."""
        return float(self.grid.nodes[np.argmax(self.density)])


def initial_guess(grid: RadialGrid, level: int, Z: float = 1.0) -> WaveFunction:
    """Normalized hydrogenic ns reduced radial function for nuclear charge Z.

    phi(r) = r R_n0(r), with R_n0 proportional to exp(-Z r/n) L^1_{n-1}(2 Z r/n).
    """
    if level < 1:
        raise ContractError(f"level must be >= 1, got {level}")
    x = 2.0 * Z * grid.nodes / level
    values = grid.nodes * np.exp(-0.5 * x) * eval_genlaguerre(level - 1, 1, x)
    return WaveFunction(values, grid).normalize()


def mix_potentials(old: PotentialOnGrid, new: PotentialOnGrid, beta: float) -> PotentialOnGrid:
    """Linear damping (1 - beta) * old + beta * new."""
    if old.grid != new.grid:
        raise ContractError("cannot mix potentials on different grids")
    if old.kind != new.kind:
        raise ContractError(f"cannot mix {old.kind} with {new.kind} potential")
    if not 0.0 < beta <= 1.0:
        raise ContractError(f"beta must lie in (0, 1], got {beta}")
    if beta == 1.0:
        return new
    return PotentialOnGrid((1.0 - beta) * old.values + beta * new.values, new.kind, new.grid)


def _select(pairs: list[EigenPair], level: int, previous: WaveFunction) -> EigenPair:
    wanted = level - 1
    candidates = [p for p in pairs if p.nodes == wanted]
    if not candidates:
        found = [p.nodes for p in pairs]
        raise NumericalFailure(
            f"no eigenstate with {wanted} nodes among the lowest {len(pairs)} "
            f"(node counts {found}, energies {[p.energy for p in pairs]})"
        )
    if len(candidates) == 1:
        return candidates[0]
    return max(candidates, key=lambda p: abs(p.phi.overlap(previous)))


def _solve_round(grid, v_ext, w, level, previous):
    H = assemble_hamiltonian(grid, total_potential(v_ext, w), KINETIC_COEFFICIENT)
    pairs = lowest_eigenpairs(H, min(level + SELECTION_MARGIN, grid.n), grid)
    return H, _select(pairs, level, previous)


def scf_solve(config: SolverConfig, constants: PhysicalConstants = CODATA2018) -> ScfResult:
    """Iterate to a self-consistent eigenstate of the target level.

    Never raises on slow convergence; the returned result carries
    ``converged=False`` and the full energy history instead.
    """
    grid = config.grid()
    cfg = config.interactions
    level = config.target_level
    alpha = coupling_alpha(constants, cfg)
    v_ext = external_potential(grid, external_coupling(constants, cfg), config.Z)

    phi = initial_guess(grid, level, config.Z)
    w = None
    history: list[float] = []
    converged = False
    for iteration in range(1, config.max_iterations + 1):
        if cfg.any_self:
            w_new = self_interaction_potential(phi, grid, alpha)
            w = w_new if w is None else mix_potentials(w, w_new, config.mixing_beta)
        H, pair = _solve_round(grid, v_ext, w, level, phi)
        history.append(pair.energy)
        phi = pair.phi
        if not cfg.any_self:
            converged = True
            break
        if len(history) > 1 and abs(history[-1] - history[-2]) < config.energy_tolerance:
            converged = True
            break

    energy = history[-1]
    return ScfResult(
        level=level,
        energy_hartree=energy,
        energy_ev=energy * constants.ev_per_hartree,
        phi=phi,
        iterations=len(history),
        converged=converged,
        energy_history=history,
        final_residual=residual_norm(H, energy, phi),
        node_count=pair.nodes,
        density=phi.density(),
        config=config,
        potential=total_potential(v_ext, w),
    )


def fixed_point_shift(result: ScfResult, constants: PhysicalConstants = CODATA2018) -> float:
    """|E' - E| after rebuilding the undamped potential from the converged state.

    A genuine fixed point barely moves; a large shift means the energy
    criterion stopped the loop before the potential settled.
    """
    config = result.config
    grid = result.grid
    cfg = config.interactions
    if not cfg.any_self:
        return 0.0
    v_ext = external_potential(grid, external_coupling(constants, cfg), config.Z)
    w = self_interaction_potential(result.phi, grid, coupling_alpha(constants, cfg))
    _, pair = _solve_round(grid, v_ext, w, result.level, result.phi)
    return abs(pair.energy - result.energy_hartree)
