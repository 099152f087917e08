"""Gravitational reference potentials for comparison with the surface force."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import NEUTRON, NeutronSpec


@dataclass(frozen=True)
class SphereSpec:
    """Homogeneous test sphere; defaults describe a small silicon ball."""

    density: float = 2330.0
    radius: float = 11.3e-3

    def __post_init__(self) -> None:
        if self.density <= 0.0 or self.radius <= 0.0:
            raise ValueError("density and radius must be > 0")

    @property
    def mass(self) -> float:
        return self.density * 4.0 / 3.0 * math.pi * self.radius**3


def earth_potential(z: float, spec: NeutronSpec = NEUTRON) -> float:
    """m g z above the surface, zero at contact."""
    if z < 0.0:
        raise ValueError("z must be >= 0")
    return spec.mass * spec.constants.g_earth * z


def sphere_potential(
    z: float, s: SphereSpec = SphereSpec(), spec: NeutronSpec = NEUTRON
) -> float:
    """Magnitude G M m / (r + z) of the sphere's potential, referenced at infinity."""
    if z < 0.0:
        raise ValueError("z must be >= 0")
    k = spec.constants
    return k.G * s.mass * spec.mass / (s.radius + z)
