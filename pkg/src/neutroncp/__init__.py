"""Dispersion potential of a magnetic neutron near a planar surface.

The package is organised bottom up: physical constants, surface response
models, adaptive quadrature, the magnetic Green function diagonal, the
potential assembly, and gravitational reference potentials.  The CLI in
neutroncp.cli exposes distance sweeps and the leading-order table.
"""

from .constants import CONSTANTS, NEUTRON, NeutronSpec, PhysicalConstants
from .gravity import SphereSpec, earth_potential, sphere_potential
from .greens import (
    IntegrationError,
    MagneticGreenDiag,
    ReflectionPair,
    contracted_green_imag,
    contracted_green_real,
    fresnel_imag,
    fresnel_real,
    magnetic_green_diag_imag,
    magnetic_green_diag_real,
)
from .materials import (
    Drude,
    DrudeLorentz,
    Material,
    PerfectConductor,
    Plasma,
    UnsupportedModelError,
    longitudinal_frequency,
    permittivity_imag,
    permittivity_real,
)
from .potential import (
    DipoleMatrixElements,
    FieldConfig,
    PotentialBreakdown,
    atomic_c3,
    c3_ratio,
    critical_distance,
    dipole_elements,
    ground_state_potential,
    local_power_law,
    neutron_c3,
    nonretarded_leading,
    nonretarded_mirror_u_du,
    orientation_average,
    retarded_mirror_u_du,
    transition_frequency,
    u_dd,
    u_du,
    u_du_mirror_single_integral,
    u_resonant,
)
from .quadrature import QuadratureConfig, QuadratureResult, integrate_finite_oscillatory, integrate_semi_infinite

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS",
    "NEUTRON",
    "NeutronSpec",
    "PhysicalConstants",
    "SphereSpec",
    "earth_potential",
    "sphere_potential",
    "IntegrationError",
    "MagneticGreenDiag",
    "ReflectionPair",
    "contracted_green_imag",
    "contracted_green_real",
    "fresnel_imag",
    "fresnel_real",
    "magnetic_green_diag_imag",
    "magnetic_green_diag_real",
    "Drude",
    "DrudeLorentz",
    "Material",
    "PerfectConductor",
    "Plasma",
    "UnsupportedModelError",
    "longitudinal_frequency",
    "permittivity_imag",
    "permittivity_real",
    "DipoleMatrixElements",
    "FieldConfig",
    "PotentialBreakdown",
    "atomic_c3",
    "c3_ratio",
    "critical_distance",
    "dipole_elements",
    "ground_state_potential",
    "local_power_law",
    "neutron_c3",
    "nonretarded_leading",
    "nonretarded_mirror_u_du",
    "orientation_average",
    "retarded_mirror_u_du",
    "transition_frequency",
    "u_dd",
    "u_du",
    "u_du_mirror_single_integral",
    "u_resonant",
    "QuadratureConfig",
    "QuadratureResult",
    "integrate_finite_oscillatory",
    "integrate_semi_infinite",
    "__version__",
]
