"""Uniform grid descriptions shared by the solver, dynamics, and the CLI."""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .mass import MassProfile, domain

__all__ = ["GridSpec", "default_grid"]


@dataclass(frozen=True)
class GridSpec:
    """A uniform x-grid with `points` samples on [lo, hi]."""

    points: int
    lo: float
    hi: float

    def __post_init__(self):
        if self.points < 2:
            raise DomainError("a grid needs at least two points")
        if not self.lo < self.hi:
            raise DomainError(f"empty grid interval [{self.lo}, {self.hi}]")

    def xs(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.points)

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.points - 1)


def default_grid(profile: MassProfile, k: float, points: int = 1001, span: float = 0.999) -> GridSpec:
    """Grid spanning a fraction of the admissible well, clear of the walls."""
    lo, hi = domain(profile, k)
    return GridSpec(points=points, lo=span * lo, hi=span * hi)
