"""Solver configuration shared by the geometry generators and the MFS core."""

from dataclasses import dataclass, field

from .errors import ConfigError


@dataclass(frozen=True)
class SpectralConfig:
    """Sizes and parameters of an MFS discretisation.

    ``n_collocation`` defaults to twice ``n_sources`` (least-squares regime);
    an equal count gives the square interpolation variant.
    """

    mass: float = 0.0
    n_sources: int = 300
    n_collocation: int = None
    n_interior: int = 228
    displacement: float = 0.05

    def __post_init__(self):
        if self.n_collocation is None:
            object.__setattr__(self, "n_collocation", 2 * self.n_sources)
        if self.mass < 0:
            raise ConfigError(f"mass must be non-negative, got {self.mass}")
        if self.n_sources < 1 or self.n_interior < 1:
            raise ConfigError("source and interior point counts must be positive")
        if self.n_collocation < self.n_sources:
            raise ConfigError(
                "collocation count must be at least the source count "
                f"({self.n_collocation} < {self.n_sources})"
            )
        if self.displacement <= 0:
            raise ConfigError("source displacement must be positive")

    def with_mass(self, mass):
        return SpectralConfig(
            mass=mass,
            n_sources=self.n_sources,
            n_collocation=self.n_collocation,
            n_interior=self.n_interior,
            displacement=self.displacement,
        )
