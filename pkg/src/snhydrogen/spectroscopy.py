"""Transition energies, Bohr-ladder diagnostics and the perturbative gravity estimate."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .constants import CODATA2018, PhysicalConstants, gravity_to_coulomb_ratio
from .errors import ContractError

__all__ = [
    "EXPERIMENTAL_LEVELS_EV",
    "EXPERIMENTAL_TRANSITIONS_EV",
    "LevelEntry",
    "TransitionEntry",
    "SpectroscopyReport",
    "transition_energies",
    "default_transitions",
    "bohr_ratio_check",
    "ionization_energy_estimate",
    "ionization_gravity_relative_shift",
    "perturbative_gravity_shift",
    "build_report",
]

# Measured hydrogen ns levels and gaps, eV (5 significant figures).
EXPERIMENTAL_LEVELS_EV = {1: -13.598, 2: -3.3996, 3: -1.5109}
EXPERIMENTAL_TRANSITIONS_EV = {(3, 2): -1.8887, (2, 1): -10.199, (3, 1): -12.087}


@dataclass(frozen=True)
class LevelEntry:
    index: int
    energy_ev: float
    experimental_ev: float | None


@dataclass(frozen=True)
class TransitionEntry:
    n_initial: int
    n_final: int
    gap_ev: float
    experimental_gap_ev: float | None


@dataclass
class SpectroscopyReport:
    levels: list[LevelEntry] = field(default_factory=list)
    transitions: list[TransitionEntry] = field(default_factory=list)
    bohr_deviations: list[tuple[int, float]] = field(default_factory=list)
    gravity_ratio: float = 0.0


def _energies_by_level(levels) -> dict[int, float]:
    energies = {}
    for result in levels:
        if not result.converged:
            raise ContractError(f"level {result.level} did not converge")
        energies[result.level] = result.energy_ev
    return energies


def transition_energies(levels: Sequence, pairs: Iterable[tuple[int, int]]) -> list[float]:
    """Gap E(n_f) - E(n_i) in eV for each (n_i, n_f); negative when emitting."""
    energies = _energies_by_level(levels)
    gaps = []
    for n_i, n_f in pairs:
        missing = [n for n in (n_i, n_f) if n not in energies]
        if missing:
            raise ContractError(f"transition {n_i}->{n_f} needs missing level(s) {missing}")
        gaps.append(energies[n_f] - energies[n_i])
    return gaps


def default_transitions(level_indices: Iterable[int]) -> list[tuple[int, int]]:
    """All downward transitions, shortest span first, upper levels first within a span.

    For levels 1..3 this gives 3->2, 2->1, 3->1.
    """
    ns = sorted(set(level_indices))
    pairs = [(i, f) for i in ns for f in ns if i > f]
    return sorted(pairs, key=lambda p: (p[0] - p[1], -p[0]))


def bohr_ratio_check(levels: Sequence) -> list[float]:
    """|E_n n^2 / E_1 - 1| for every level above the ground state, ascending n."""
    energies = _energies_by_level(levels)
    if len(energies) < 2:
        return []
    if 1 not in energies:
        raise ContractError("Bohr ratio check needs the ground level")
    e1 = energies[1]
    return [abs(energies[n] * n**2 / e1 - 1.0) for n in sorted(energies) if n != 1]


def _ionization_energy_exact(
    constants: PhysicalConstants, Z: float, n: int, include_gravity: bool
) -> Fraction:
    # Exact rational arithmetic on the double inputs: the G m_p m_e term is
    # ~1e-40 of k_e e^2 and would vanish from a floating-point sum.
    coupling = Fraction(constants.ke_e2)
    if include_gravity:
        coupling += Fraction(constants.G) * Fraction(constants.m_p) * Fraction(constants.m_e)
    prefactor = Fraction(Z) ** 2 * Fraction(constants.mu) / (2 * Fraction(constants.hbar) ** 2 * n**2)
    return -prefactor * coupling**2


def ionization_energy_estimate(
    constants: PhysicalConstants = CODATA2018, Z: float = 1.0, n: int = 1, include_gravity: bool = False
) -> float:
    """Bohr-formula level -(Z^2 mu / 2 hbar^2 n^2) (k_e e^2 [+ G m_p m_e])^2 in eV."""
    if Z <= 0 or n < 1:
        raise ContractError(f"need Z > 0 and n >= 1, got Z={Z}, n={n}")
    return float(_ionization_energy_exact(constants, Z, n, include_gravity) / Fraction(constants.e))


def ionization_gravity_relative_shift(
    constants: PhysicalConstants = CODATA2018, Z: float = 1.0, n: int = 1
) -> float:
    """(E'_n - E_n) / E_n from the exact path; equals 2g + g^2 with g = G m_p m_e / k_e e^2."""
    with_g = _ionization_energy_exact(constants, Z, n, True)
    without = _ionization_energy_exact(constants, Z, n, False)
    return float((with_g - without) / without)


def perturbative_gravity_shift(constants: PhysicalConstants = CODATA2018) -> float:
    """Leading-order relative change of the ionization energy, 2 G m_p m_e / (k_e e^2)."""
    return 2.0 * gravity_to_coulomb_ratio(constants)


def build_report(
    levels: Sequence,
    constants: PhysicalConstants = CODATA2018,
    pairs: Iterable[tuple[int, int]] | None = None,
) -> SpectroscopyReport:
    levels = sorted(levels, key=lambda r: r.level)
    converged = [r for r in levels if r.converged]
    if pairs is None:
        pairs = default_transitions(r.level for r in converged)
    pairs = list(pairs)
    gaps = transition_energies(converged, pairs)
    deviations = bohr_ratio_check(converged) if any(r.level == 1 for r in converged) else []
    upper = [r.level for r in converged if r.level != 1] if deviations else []
    return SpectroscopyReport(
        levels=[LevelEntry(r.level, r.energy_ev, EXPERIMENTAL_LEVELS_EV.get(r.level)) for r in levels],
        transitions=[
            TransitionEntry(n_i, n_f, gap, EXPERIMENTAL_TRANSITIONS_EV.get((n_i, n_f)))
            for (n_i, n_f), gap in zip(pairs, gaps)
        ],
        bohr_deviations=list(zip(upper, deviations)),
        gravity_ratio=perturbative_gravity_shift(constants),
    )
