"""Assembly of the neutron-surface dispersion potential and its limits.

The neutron is a two-level magnetic dipole: an external field B at angle
theta to the surface normal splits the spin states by the transition
frequency omega = |gamma_n| B.  The potential of each state decomposes
into a static piece (the state's own moment against the zero-frequency
surface response), a cross piece from the opposite state summed over the
Wick-rotated spectrum with Lorentzian weight omega/(xi^2 + omega^2), and,
for the upper state only, a resonant piece oscillating at the real
transition frequency:

    u_ground  = u_dd + u_du            (positive: repulsive)
    u_excited = u_dd - u_du + u_resonant

Because the surface response diagonal is (h_xx, h_xx, h_zz), the angle
enters only through quadratic weights: the static contraction carries
(sin^2 theta, cos^2 theta) and the cross/resonant contraction carries
(1 + cos^2 theta, sin^2 theta).  theta=None in FieldConfig selects the
uniform average over field orientations, which replaces cos^2 theta by
1/3 exactly (the weights are linear in it).

B = 0 is taken as a limit: the Lorentzian becomes a half-delta at the
origin and the cross term collapses to half the static contraction.
Surfaces whose zero-frequency reflection survives (ideal mirror, plasma)
then still bind; Drude-type media do not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .constants import CONSTANTS, NEUTRON, NeutronSpec, PhysicalConstants
from .greens import contracted_green_imag, contracted_green_real
from .materials import (
    Drude,
    DrudeLorentz,
    Material,
    PerfectConductor,
    Plasma,
    longitudinal_frequency,
)
from .quadrature import QuadratureConfig, integrate_semi_infinite
from .greens import IntegrationError

_DEFAULT_REL_TOL = 1e-9
_OUTER_MAX_EVALUATIONS = 30_000  # each outer evaluation is an inner quadrature


@dataclass(frozen=True)
class FieldConfig:
    """External field strength and orientation.

    theta is the angle between the field direction and the surface
    normal, in [0, pi]; None averages uniformly over orientations.
    """

    b_ext: float
    theta: Optional[float] = None

    def __post_init__(self) -> None:
        if self.b_ext < 0.0 or not math.isfinite(self.b_ext):
            raise ValueError("b_ext must be >= 0 and finite")
        if self.theta is not None and not 0.0 <= self.theta <= math.pi:
            raise ValueError("theta must lie in [0, pi]")


@dataclass(frozen=True)
class PotentialBreakdown:
    """All potential pieces at one distance, in joules.

    u_resonant and u_excited are None unless the excited state was
    requested; the ground state never needs the real-frequency response.
    """

    z: float
    u_dd: float
    u_du: float
    u_ground: float
    u_resonant: Optional[float] = None
    u_excited: Optional[float] = None


@dataclass(frozen=True, eq=False)
class DipoleMatrixElements:
    """Spin matrix elements of the magnetic moment at angle theta.

    m_uu is the diagonal element (the lower state's is its negative);
    m_ud couples the two states.  |m_ud|^2 = 2 |m_uu|^2 at every angle.
    """

    m_uu: np.ndarray
    m_ud: np.ndarray


def dipole_elements(spec: NeutronSpec, theta: float) -> DipoleMatrixElements:
    half_moment = spec.constants.hbar * spec.gamma_n / 2.0
    m_uu = half_moment * np.array([math.sin(theta), 0.0, math.cos(theta)])
    m_ud = half_moment * np.array([math.cos(theta), -1.0j, -math.sin(theta)])
    return DipoleMatrixElements(m_uu=m_uu, m_ud=m_ud)


def transition_frequency(cfg: FieldConfig, spec: NeutronSpec = NEUTRON) -> float:
    """Spin-flip frequency |gamma_n| B in rad/s."""
    return spec.spin_flip_frequency(cfg.b_ext)


def critical_distance(cfg: FieldConfig, spec: NeutronSpec = NEUTRON) -> float:
    """Retardation crossover c/omega; +inf when the field vanishes."""
    omega = transition_frequency(cfg, spec)
    if omega == 0.0:
        return math.inf
    return spec.constants.c / omega


def _cos2(theta: Optional[float]) -> float:
    # uniform orientation average of cos^2 is exactly 1/3
    return 1.0 / 3.0 if theta is None else math.cos(theta) ** 2


def _static_weights(theta: Optional[float]) -> tuple[float, float]:
    c2 = _cos2(theta)
    return 1.0 - c2, c2


def _cross_weights(theta: Optional[float]) -> tuple[float, float]:
    c2 = _cos2(theta)
    return 1.0 + c2, 1.0 - c2


def _moment_sq(spec: NeutronSpec) -> float:
    return (spec.constants.hbar * spec.gamma_n / 2.0) ** 2


def u_dd(
    z: float,
    cfg: FieldConfig,
    m: Material,
    spec: NeutronSpec = NEUTRON,
    rel_tol: float = _DEFAULT_REL_TOL,
) -> float:
    """Static same-state piece; equal for both spin states."""
    w_xx, w_zz = _static_weights(cfg.theta)
    contraction = contracted_green_imag(m, z, 0.0, w_xx, w_zz, rel_tol=rel_tol)
    return 0.5 * spec.constants.mu0 * _moment_sq(spec) * contraction


def _outer_breakpoints(
    omega: float, z: float, m: Material, c: float
) -> list[float]:
    bps = [omega * 10.0**k for k in range(-6, 7)]
    bps += [c / (2.0 * z) * s for s in (0.1, 1.0, 10.0)]
    if isinstance(m, Plasma):
        bps.append(m.omega_p)
    elif isinstance(m, Drude):
        bps += [m.omega_p, m.gamma]
    elif isinstance(m, DrudeLorentz):
        bps += [m.omega_p, m.omega_t]
    return [b for b in bps if b > 0.0]


def u_du(
    z: float,
    cfg: FieldConfig,
    m: Material,
    spec: NeutronSpec = NEUTRON,
    rel_tol: float = _DEFAULT_REL_TOL,
) -> float:
    """Cross-state piece: Lorentzian-weighted imaginary-frequency sum."""
    w_xx, w_zz = _cross_weights(cfg.theta)
    k = spec.constants
    omega = transition_frequency(cfg, spec)
    if omega == 0.0:
        contraction = contracted_green_imag(m, z, 0.0, w_xx, w_zz, rel_tol=rel_tol)
        return 0.5 * k.mu0 * _moment_sq(spec) * contraction

    inner_tol = max(rel_tol / 10.0, 1e-13)

    def outer(xi: np.ndarray) -> np.ndarray:
        out = np.empty_like(xi)
        for i, x in enumerate(xi):
            g = contracted_green_imag(m, z, float(x), w_xx, w_zz, rel_tol=inner_tol)
            out[i] = g * omega / (x * x + omega * omega)
        return out

    quad_cfg = QuadratureConfig(
        rel_tol=rel_tol,
        abs_tol=0.0,
        max_evaluations=_OUTER_MAX_EVALUATIONS,
        decay_scale=k.c / (2.0 * z),
    )
    res = integrate_semi_infinite(
        outer, quad_cfg, breakpoints=_outer_breakpoints(omega, z, m, k.c)
    )
    if not res.converged:
        raise IntegrationError(
            f"imaginary-frequency integral did not converge (z={z:.3e}, B={cfg.b_ext:.3e})",
            res,
        )
    return k.mu0 / math.pi * _moment_sq(spec) * res.value


def u_resonant(
    z: float,
    cfg: FieldConfig,
    m: Material,
    spec: NeutronSpec = NEUTRON,
    rel_tol: float = _DEFAULT_REL_TOL,
) -> float:
    """Excited-state resonant piece at the real transition frequency.

    Undefined for a lossless medium whose permittivity is below -1 at
    the transition frequency (surface-mode pole); the plasma model is in
    that regime for any realistic field strength.
    """
    if cfg.b_ext <= 0.0:
        raise ValueError("the resonant piece requires b_ext > 0")
    w_xx, w_zz = _cross_weights(cfg.theta)
    omega = transition_frequency(cfg, spec)
    contraction = contracted_green_real(m, z, omega, w_xx, w_zz, rel_tol=rel_tol)
    return spec.constants.mu0 * _moment_sq(spec) * contraction.real


def ground_state_potential(
    z: float,
    cfg: FieldConfig,
    m: Material,
    spec: NeutronSpec = NEUTRON,
    include_excited: bool = False,
    rel_tol: float = _DEFAULT_REL_TOL,
) -> PotentialBreakdown:
    """Full breakdown at one distance.

    The excited-state pieces are skipped by default: they need the
    real-frequency surface response, which does not exist for the
    lossless plasma model (see u_resonant), and the ground state must
    not fail on an excited-state pathology.
    """
    dd = u_dd(z, cfg, m, spec, rel_tol)
    du = u_du(z, cfg, m, spec, rel_tol)
    resonant: Optional[float] = None
    excited: Optional[float] = None
    if include_excited:
        resonant = u_resonant(z, cfg, m, spec, rel_tol)
        excited = dd - du + resonant
    return PotentialBreakdown(
        z=z,
        u_dd=dd,
        u_du=du,
        u_ground=dd + du,
        u_resonant=resonant,
        u_excited=excited,
    )


def orientation_average(fn: Callable[[float], float]) -> float:
    """Uniform average of fn(theta) over field orientations on the sphere.

    Gauss-Legendre in cos(theta); exact for the polynomial angle
    dependence of every potential in this package.
    """
    nodes, weights = np.polynomial.legendre.leggauss(64)
    return 0.5 * sum(w * fn(math.acos(x)) for x, w in zip(nodes, weights))


def u_du_mirror_single_integral(
    z: float,
    cfg: FieldConfig,
    spec: NeutronSpec = NEUTRON,
    rel_tol: float = _DEFAULT_REL_TOL,
) -> float:
    """Ideal-mirror cross piece via the reduced one-dimensional integral.

    Independent reference route for the general double-integral path:
    the transverse-wavevector integral is done in closed form first,
    leaving a single integral over the polynomial pair

        f(x) = 5 + 10 x + 12 x^2,   g(x) = -1 - 2 x + 4 x^2

    against the Lorentzian weight.  Must agree with u_du for the ideal
    mirror to quadrature accuracy; the two routes are kept separate on
    purpose.
    """
    k = spec.constants
    c2t = 2.0 * _cos2(cfg.theta) - 1.0  # cos(2 theta)
    pref = k.hbar**2 * spec.gamma_n**2 * k.mu0 / (256.0 * math.pi**2 * z**3)
    omega = transition_frequency(cfg, spec)
    if omega == 0.0:
        return pref * (math.pi / 2.0) * (5.0 - c2t)

    zc = z / k.c

    def integrand(xi: np.ndarray) -> np.ndarray:
        x = xi * zc
        poly = (5.0 + 10.0 * x + 12.0 * x * x) + c2t * (-1.0 - 2.0 * x + 4.0 * x * x)
        return omega / (xi * xi + omega * omega) * poly * np.exp(-2.0 * x)

    quad_cfg = QuadratureConfig(
        rel_tol=rel_tol,
        abs_tol=0.0,
        max_evaluations=1_000_000,
        decay_scale=k.c / (2.0 * z),
    )
    bps = [omega * 10.0**p for p in range(-6, 7)]
    bps += [k.c / (2.0 * z) * s for s in (0.1, 1.0, 10.0)]
    res = integrate_semi_infinite(integrand, quad_cfg, breakpoints=bps)
    if not res.converged:
        raise IntegrationError(
            f"mirror reference integral did not converge (z={z:.3e})", res
        )
    return pref * res.value


def nonretarded_mirror_u_du(
    z: float, cfg: FieldConfig, spec: NeutronSpec = NEUTRON
) -> float:
    """Small-distance limit of the ideal-mirror cross piece."""
    k = spec.constants
    c2t = 2.0 * _cos2(cfg.theta) - 1.0
    return k.hbar**2 * spec.gamma_n**2 * k.mu0 * (5.0 - c2t) / (512.0 * math.pi * z**3)


def retarded_mirror_u_du(
    z: float, cfg: FieldConfig, spec: NeutronSpec = NEUTRON
) -> float:
    """Large-distance limit of the ideal-mirror cross piece (needs B > 0)."""
    omega = transition_frequency(cfg, spec)
    if omega == 0.0:
        raise ValueError("the retarded asymptote requires b_ext > 0")
    k = spec.constants
    return k.hbar**2 * spec.gamma_n**2 * k.mu0 * k.c / (
        32.0 * math.pi**2 * omega * z**4
    )


def nonretarded_leading(
    m: Material,
    cfg: FieldConfig,
    spec: NeutronSpec = NEUTRON,
    z: float = 1e-9,
) -> float:
    """Leading small-distance ground-state closed form per model.

    Ideal mirror: hbar^2 gamma^2 mu0 / (64 pi z^3), orientation
    independent.  Plasma: field independent, ~1/z.  Drude: the x ln x
    law in x = omega/gamma, valid only for x well below 1 (raises at
    x >= 1, returns the x -> 0 limit 0 at B = 0).  Drude-Lorentz:
    linear in the field; the angle-resolved coefficient reduces to the
    standard orientation-averaged form at theta=None.
    """
    if z <= 0.0:
        raise ValueError("z must be > 0")
    k = spec.constants
    base = k.hbar**2 * spec.gamma_n**2 * k.mu0
    if isinstance(m, PerfectConductor):
        return base / (64.0 * math.pi * z**3)
    if isinstance(m, Plasma):
        return base * m.omega_p**2 / (128.0 * math.pi * k.c**2 * z)
    omega = transition_frequency(cfg, spec)
    if isinstance(m, Drude):
        x = omega / m.gamma
        if x == 0.0:
            return 0.0
        if x >= 1.0:
            raise ValueError("leading-order Drude form requires omega/gamma < 1")
        sin2 = 1.0 - _cos2(cfg.theta)
        return (
            -base * m.omega_p**2 * (2.0 + sin2)
            / (256.0 * math.pi**2 * k.c**2 * z)
            * x * math.log(x)
        )
    if isinstance(m, DrudeLorentz):
        c2 = _cos2(cfg.theta)
        w_l = longitudinal_frequency(m.omega_t, m.omega_p)
        angular = (1.0 + c2) * (1.0 / w_l + 0.5 / m.omega_t) + (1.0 - c2) / m.omega_t
        return base * m.omega_p**2 * omega / (256.0 * math.pi * k.c**2 * z) * angular
    raise TypeError(f"unknown material {m!r}")


def neutron_c3(spec: NeutronSpec = NEUTRON) -> float:
    """Coefficient of the 1/z^3 small-distance ground-state potential."""
    k = spec.constants
    return k.hbar**2 * spec.gamma_n**2 * k.mu0 / (64.0 * math.pi)


def atomic_c3(d_squared: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Small-distance coefficient for an electric dipole of mean square d^2."""
    if d_squared <= 0.0:
        raise ValueError("d_squared must be > 0")
    return d_squared / (48.0 * math.pi * constants.eps0)


def c3_ratio(spec: NeutronSpec = NEUTRON) -> float:
    """neutron_c3 over atomic_c3(e^2 a_bohr^2), in closed form.

    Algebraically (3/16) g^2 (m_e/m_n)^2 alpha^2 when the dipole scale
    is e * a_bohr; about 4.3e-11.
    """
    k = spec.constants
    return 3.0 / 16.0 * spec.g_factor**2 * (k.m_e / spec.mass) ** 2 * k.alpha**2


def local_power_law(z: float, u: Callable[[float], float]) -> float:
    """d ln|u| / d ln z by central log-difference with relative step 1e-3."""
    if z <= 0.0:
        raise ValueError("z must be > 0")
    h = 1e-3
    hi = u(z * (1.0 + h))
    lo = u(z * (1.0 - h))
    if hi == 0.0 or lo == 0.0 or not (math.isfinite(hi) and math.isfinite(lo)):
        raise ValueError("potential vanishes or is not finite near z; exponent undefined")
    return (math.log(abs(hi)) - math.log(abs(lo))) / (
        math.log1p(h) - math.log1p(-h)
    )
