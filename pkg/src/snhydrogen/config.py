"""JSON run configuration.

A run config describes one or more independent level solves sharing the
same physics and numerics.  Unknown keys are rejected so that a misspelt
field fails loudly instead of silently falling back to a default.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from .constants import InteractionConfig
from .errors import ConfigurationError
from .scf import SolverConfig

__all__ = ["RunConfig", "load_config", "SELF_INTERACTION_MODES"]

SELF_INTERACTION_MODES = ("none", "electric", "gravitational", "both")


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value) -> bool:
    return (isinstance(value, (int, float)) and not isinstance(value, bool)
            and math.isfinite(value))


@dataclass(frozen=True)
class RunConfig:
    levels: tuple[int, ...] = (1,)
    self_interaction: str = "both"
    gravitational_external: bool = True
    Z: float = 1.0
    r_max: float | None = None
    grid_points: int | None = None
    mixing_beta: float = 0.5
    energy_tolerance: float = 1e-9
    max_iterations: int = 200
    amplify_gravity: float = 1.0
    transitions: tuple[tuple[int, int], ...] | None = None

    def __post_init__(self):
        levels = self.levels
        if not isinstance(levels, (list, tuple)) or not levels or not all(_is_int(n) and n >= 1 for n in levels):
            raise ConfigurationError(f"levels: must be a non-empty list of integers >= 1, got {levels!r}")
        if len(set(levels)) != len(levels):
            raise ConfigurationError(f"levels: duplicate entries in {list(levels)!r}")
        object.__setattr__(self, "levels", tuple(sorted(levels)))
        if self.self_interaction not in SELF_INTERACTION_MODES:
            raise ConfigurationError(
                f"self_interaction: must be one of {list(SELF_INTERACTION_MODES)}, got {self.self_interaction!r}"
            )
        if not isinstance(self.gravitational_external, bool):
            raise ConfigurationError(f"gravitational_external: must be true or false, got {self.gravitational_external!r}")
        for name in ("Z", "mixing_beta", "energy_tolerance", "amplify_gravity"):
            if not _is_number(getattr(self, name)):
                raise ConfigurationError(f"{name}: must be a finite number, got {getattr(self, name)!r}")
        if not self.amplify_gravity > 0:
            raise ConfigurationError(f"amplify_gravity: must be positive, got {self.amplify_gravity!r}")
        if self.r_max is not None and not (_is_number(self.r_max) and self.r_max > 0):
            raise ConfigurationError(f"r_max: must be a positive number, got {self.r_max!r}")
        if self.grid_points is not None and not (_is_int(self.grid_points) and self.grid_points >= 16):
            raise ConfigurationError(f"grid_points: must be an integer >= 16, got {self.grid_points!r}")
        if not _is_int(self.max_iterations):
            raise ConfigurationError(f"max_iterations: must be an integer, got {self.max_iterations!r}")
        if self.transitions is not None:
            try:
                pairs = tuple((int(a), int(b)) for a, b in self.transitions)
            except (TypeError, ValueError):
                raise ConfigurationError(
                    f"transitions: must be a list of [n_initial, n_final] pairs, got {self.transitions!r}"
                ) from None
            unknown = sorted({n for p in pairs for n in p} - set(self.levels))
            if unknown:
                raise ConfigurationError(f"transitions: refer to levels {unknown} that are not solved")
            object.__setattr__(self, "transitions", pairs)
        # builds every solver config once so per-level invariants fail here
        self.solver_configs()

    @property
    def interactions(self) -> InteractionConfig:
        return InteractionConfig.from_mode(self.self_interaction, self.gravitational_external)

    def solver_config(self, level: int) -> SolverConfig:
        return SolverConfig(
            target_level=level,
            interactions=self.interactions,
            Z=float(self.Z),
            r_max=None if self.r_max is None else float(self.r_max),
            n=self.grid_points,
            energy_tolerance=float(self.energy_tolerance),
            max_iterations=self.max_iterations,
            mixing_beta=float(self.mixing_beta),
        )

    def solver_configs(self) -> list[SolverConfig]:
        return [self.solver_config(n) for n in self.levels]

    def with_overrides(self, **overrides) -> "RunConfig":
        """Copy with every non-None override applied (CLI flags beat the file)."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> dict:
        d = asdict(self)
        d["levels"] = list(self.levels)
        if self.transitions is not None:
            d["transitions"] = [list(p) for p in self.transitions]
        return d


FIELD_NAMES = frozenset(f.name for f in fields(RunConfig))


def config_from_dict(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigurationError(f"config must be a JSON object, got {type(data).__name__}")
    unknown = sorted(set(data) - FIELD_NAMES)
    if unknown:
        raise ConfigurationError(f"unknown config key(s): {', '.join(unknown)}")
    data = dict(data)
    if isinstance(data.get("levels"), list):
        data["levels"] = tuple(data["levels"])
    if isinstance(data.get("transitions"), list):
        data["transitions"] = tuple(tuple(p) if isinstance(p, list) else p for p in data["transitions"])
    return RunConfig(**data)


def load_config(path) -> RunConfig:
    """Read and validate a JSON run config; an empty file means all defaults."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigurationError(f"config file not found: {path}") from None
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from None
    if not text.strip():
        return RunConfig()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            f"malformed JSON in {path}: {exc.msg} (line {exc.lineno}, column {exc.colno})"
        ) from None
    return config_from_dict(data)
