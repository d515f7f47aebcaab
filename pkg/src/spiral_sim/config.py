"""Model configuration and validation."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from enum import Enum

from .errors import (
    InvalidConfig,
    InvalidMediaLevels,
    OverpopulatedGrid,
    VisionExceedsGrid,
)


class InitialSplit(str, Enum):
    BALANCED = "balanced"
    RANDOM = "random"


@dataclass(frozen=True)
class ModelConfig:
    """All model coefficients and simulation policy knobs.

    Defaults reproduce the baseline world: a 50x50 torus holding 1000
    agents with vision radius 3.
    """

    grid_width: int = 50
    grid_height: int = 50
    population: int = 1000
    vision_radius: float = 3.0
    alpha: float = 0.02
    beta: float = 0.02
    media_levels: tuple[int, ...] = (0, 1, 2, 3, 4, 5)
    threshold: float = 0.0
    w_sd: float = 1.0
    initial_split: InitialSplit = InitialSplit.BALANCED
    max_ticks: int = 1000
    stability_window: int = 10
    seed: int = 0
    # symmetric bound on |w|; None disables clamping
    clamp: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "media_levels", tuple(int(m) for m in self.media_levels))
        object.__setattr__(self, "initial_split", InitialSplit(self.initial_split))

    @property
    def n_patches(self) -> int:
        return self.grid_width * self.grid_height

    def replace(self, **changes) -> "ModelConfig":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return ModelConfig(**values)


CONFIG_FIELDS = tuple(f.name for f in fields(ModelConfig))


def validate_config(config: ModelConfig) -> ModelConfig:
    """Return ``config`` unchanged if every invariant holds.

    Raises the exception named after the first violated invariant.
    """
    if config.grid_width < 1 or config.grid_height < 1:
        raise InvalidConfig("grid dimensions must be positive")
    if config.population < 1:
        raise InvalidConfig("population must be positive")
    if config.population > config.n_patches:
        raise OverpopulatedGrid(
            f"population {config.population} exceeds {config.n_patches} patches"
        )
    if not config.vision_radius > 0:
        raise InvalidConfig("vision_radius must be positive")
    span = 2 * config.vision_radius + 1
    if not (config.grid_width > span and config.grid_height > span):
        raise VisionExceedsGrid(
            f"grid {config.grid_width}x{config.grid_height} must exceed 2*radius+1 = {span:g}"
        )
    if config.alpha < 0 or config.beta < 0:
        raise InvalidConfig("alpha and beta must be non-negative")
    if not config.media_levels or any(m < 0 for m in config.media_levels):
        raise InvalidMediaLevels("media_levels must be non-empty and non-negative")
    if not config.w_sd > 0:
        raise InvalidConfig("w_sd must be positive")
    if config.max_ticks < 1:
        raise InvalidConfig("max_ticks must be positive")
    if config.stability_window < 1:
        raise InvalidConfig("stability_window must be positive")
    if not 0 <= config.seed < 2**64:
        raise InvalidConfig("seed must be a 64-bit unsigned integer")
    if config.clamp is not None and not config.clamp > 0:
        raise InvalidConfig("clamp must be positive when set")
    return config
