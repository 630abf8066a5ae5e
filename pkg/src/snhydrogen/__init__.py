"""Stationary s-states of hydrogen with electric and gravitational self-interaction."""

__version__ = "0.1.0"

from .constants import CODATA2018, InteractionConfig, PhysicalConstants  # noqa: E402
from .scf import ScfResult, SolverConfig, scf_solve  # noqa: E402

__all__ = [
    "CODATA2018",
    "InteractionConfig",
    "PhysicalConstants",
    "ScfResult",
    "SolverConfig",
    "scf_solve",
]
