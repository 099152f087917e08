"""Fresnel coefficients and the magnetic response of a planar half-space.

Conventions
-----------
The object computed here is the diagonal of the double-curl scattering
Green's tensor that couples a magnetic dipole to its surface-reflected
field, evaluated at coincident points a height z above the interface.
Off-diagonal components vanish by planar symmetry and the xx and yy
components are equal, so only h_xx and h_zz are stored (units 1/m^3).

The overall sign is fixed so that both diagonal components are positive
on the positive imaginary frequency axis for every passive medium; the
binding check is the ideal-mirror closed form

    h_xx(i xi) = (1 + 2x + 4x^2) e^(-2x) / (32 pi z^3),
    h_zz(i xi) = (1 + 2x)        e^(-2x) / (16 pi z^3),   x = xi z / c,

which the general machinery must reproduce with r_s = -1, r_p = +1.
In integral form, with kappa = sqrt(xi^2/c^2 + k^2) the vacuum decay
constant of a transverse wavevector k:

    h_xx = (1/8pi) Int dk (k/kappa) e^(-2 kappa z) [r_p xi^2/c^2 - r_s kappa^2]
    h_zz = -(1/4pi) Int dk (k^3/kappa) e^(-2 kappa z) r_s

On the real frequency axis the k-integral splits into a propagating
segment (k < omega/c, oscillatory phase e^(2 i k_perp z)) and an
evanescent tail; the result is complex and its real part feeds the
resonant potential term.  Analytic continuation of the mirror forms
under xi -> -i omega gives the real-axis oracle.

Numerical form
--------------
All integrals are taken over t = k z (dimensionless), so a single
quadrature configuration covers nine decades of z.  Reflection
coefficients are evaluated through the wavevector contrast
(eps - 1) xi^2 / c^2 rather than eps itself, which keeps them exact in
the xi -> 0 limit and free of large-eps cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .materials import (
    DrudeLorentz,
    Material,
    PerfectConductor,
    UnsupportedModelError,
    permittivity_imag,
    permittivity_real,
    wavevector_contrast_imag,
    wavevector_contrast_real,
)
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    integrate_finite_oscillatory,
    integrate_semi_infinite,
)

SPEED_OF_LIGHT = 299792458.0

# e^(-2x) leaves the normal double range beyond this; every component
# carries that factor, so the tensor is zero at double precision.  The
# cutoff sits below the hard underflow point (x ~ 372) on purpose:
# subnormal panel values break relative error control in the quadrature.
_UNDERFLOW_X = 350.0


class IntegrationError(RuntimeError):
    """A quadrature did not reach its tolerance; carries the result."""

    def __init__(self, message: str, result: QuadratureResult):
        super().__init__(
            f"{message}: value={result.value!r}, abs_error={result.abs_error:.3e}, "
            f"evaluations={result.evaluations}"
        )
        self.result = result


@dataclass(frozen=True)
class ReflectionPair:
    r_s: Union[float, complex]
    r_p: Union[float, complex]


@dataclass(frozen=True)
class MagneticGreenDiag:
    """Diagonal (h_xx = h_yy, h_zz) at one frequency and height."""

    h_xx: Union[float, complex]
    h_zz: Union[float, complex]
    z: float
    frequency: float
    axis: str  # "imaginary" or "real"


def _require_height(z: float) -> None:
    if z <= 0.0 or not math.isfinite(z):
        raise ValueError("z must be positive and finite")


def fresnel_imag(m: Material, xi: float, k_par: float) -> ReflectionPair:
    """Reflection amplitudes at imaginary frequency i*xi, wavevector k_par."""
    if xi < 0.0 or k_par < 0.0 or (xi == 0.0 and k_par == 0.0):
        raise ValueError("require xi >= 0, k_par >= 0, not both zero")
    if isinstance(m, PerfectConductor):
        return ReflectionPair(r_s=-1.0, r_p=1.0)
    c = SPEED_OF_LIGHT
    kappa = math.hypot(xi / c, k_par)
    dq2 = wavevector_contrast_imag(m, xi, c)
    km = math.sqrt(kappa**2 + dq2)
    r_s = -dq2 / (kappa + km) ** 2
    if xi > 0.0:
        eps = permittivity_imag(m, xi)
        r_p = (eps - 1.0) * (eps * (xi / c) ** 2 + (eps + 1.0) * k_par**2) / (
            eps * kappa + km
        ) ** 2
    elif isinstance(m, DrudeLorentz):
        eps0 = 1.0 + (m.omega_p / m.omega_t) ** 2
        r_p = (eps0 - 1.0) / (eps0 + 1.0)
    else:
        # plasma and Drude permittivities diverge at xi -> 0; r_p -> 1
        # unless the medium is degenerate vacuum
        r_p = 1.0 if m.omega_p > 0.0 else 0.0
    return ReflectionPair(r_s=r_s, r_p=r_p)


def fresnel_real(m: Material, omega: float, k_par: float) -> ReflectionPair:
    """Reflection amplitudes at real frequency omega, wavevector k_par.

    k_par may exceed omega/c (evanescent incidence); the vacuum normal
    component is then i*q with q > 0.  Lossless media with eps < -1
    have a surface-mode pole at one evanescent k_par; this function
    returns the off-pole values and the caller must keep clear of it.
    """
    if omega <= 0.0 or k_par < 0.0:
        raise ValueError("require omega > 0 and k_par >= 0")
    if isinstance(m, PerfectConductor):
        return ReflectionPair(r_s=complex(-1.0), r_p=complex(1.0))
    c = SPEED_OF_LIGHT
    w2 = (omega / c) ** 2
    dq2 = wavevector_contrast_real(m, omega, c)
    if dq2 == 0:
        return ReflectionPair(r_s=complex(0.0), r_p=complex(0.0))
    eps = permittivity_real(m, omega)
    kperp = np.sqrt(complex(w2 - k_par**2))
    km = np.sqrt(kperp**2 + dq2)
    r_s = -dq2 / (kperp + km) ** 2
    r_p = (eps - 1.0) * (eps * w2 - (eps + 1.0) * k_par**2) / (eps * kperp + km) ** 2
    return ReflectionPair(r_s=complex(r_s), r_p=complex(r_p))


def _quad_config(rel_tol: float, max_evaluations: int, decay_scale: float) -> QuadratureConfig:
    return QuadratureConfig(
        rel_tol=rel_tol,
        abs_tol=0.0,
        max_evaluations=max_evaluations,
        decay_scale=decay_scale,
    )


def contracted_green_imag(
    m: Material,
    z: float,
    xi: float,
    weight_xx: float,
    weight_zz: float,
    rel_tol: float = 1e-10,
    max_evaluations: int = 400_000,
) -> float:
    """weight_xx * h_xx(i xi) + weight_zz * h_zz(i xi), in 1/m^3.

    The weighted sum is a single quadrature, which is what the potential
    assembly uses; unit weights recover the individual components.
    xi = 0 evaluates the exact static limit of the integrand (the plasma
    keeps a finite wavevector contrast there, Drude-type media lose it).
    """
    _require_height(z)
    if xi < 0.0:
        raise ValueError("xi must be >= 0")
    c = SPEED_OF_LIGHT
    x = xi * z / c
    if x > _UNDERFLOW_X:
        return 0.0

    mirror = isinstance(m, PerfectConductor)
    if mirror:
        dq2z2 = 0.0
        eps = None
    else:
        dq2z2 = wavevector_contrast_imag(m, xi, c) * z * z
        if dq2z2 == 0.0 and (xi == 0.0 or permittivity_imag(m, xi) == 1.0):
            return 0.0
        eps = permittivity_imag(m, xi) if xi > 0.0 else None
        if eps is not None and not math.isfinite(eps):
            # eps overflows only when xi is hundreds of orders below the
            # plasma frequency; there x^2 underflows and the r_p term is
            # exactly zero at double precision, so drop it
            eps = None

    x2 = x * x

    def integrand(t: np.ndarray) -> np.ndarray:
        rho = np.sqrt(x2 + t * t)
        if mirror:
            acc = weight_xx * (x2 + rho * rho) + 2.0 * weight_zz * t * t
        else:
            km = np.sqrt(rho * rho + dq2z2)
            r_s = -dq2z2 / (rho + km) ** 2
            acc = -r_s * (weight_xx * rho * rho + 2.0 * weight_zz * t * t)
            if eps is not None:
                r_p = (eps - 1.0) * (eps * x2 + (eps + 1.0) * t * t) / (eps * rho + km) ** 2
                acc = acc + weight_xx * r_p * x2
        return (t / rho) * acc * np.exp(-2.0 * rho)

    bps = [0.25, 1.0, 4.0]
    if x > 1.0:
        # decay in t is Gaussian-like with width ~sqrt(x) once x >> 1
        root = math.sqrt(x)
        bps += [root, 3.0 * root]
    if dq2z2 > 0.04:
        edge = math.sqrt(dq2z2)  # r_s crossover scale
        bps += [0.3 * edge, edge, 3.0 * edge]
    cfg = _quad_config(rel_tol, max_evaluations, 0.5 * max(1.0, math.sqrt(max(x, 1.0))))
    res = integrate_semi_infinite(integrand, cfg, breakpoints=bps)
    if not res.converged:
        raise IntegrationError(
            f"transverse-wavevector integral did not converge (xi={xi:.3e}, z={z:.3e})",
            res,
        )
    return res.value / (8.0 * math.pi * z**3)


def magnetic_green_diag_imag(
    m: Material,
    z: float,
    xi: float,
    rel_tol: float = 1e-10,
    max_evaluations: int = 400_000,
) -> MagneticGreenDiag:
    """Both diagonal components at imaginary frequency i*xi."""
    h_xx = contracted_green_imag(m, z, xi, 1.0, 0.0, rel_tol, max_evaluations)
    h_zz = contracted_green_imag(m, z, xi, 0.0, 1.0, rel_tol, max_evaluations)
    return MagneticGreenDiag(h_xx=h_xx, h_zz=h_zz, z=z, frequency=xi, axis="imaginary")


def _check_surface_mode(m: Material, omega: float) -> None:
    # A lossless permittivity below -1 puts the p-polarized surface-mode
    # pole directly on the evanescent integration path; the integral does
    # not exist there without dissipation.
    if isinstance(m, PerfectConductor):
        return
    eps = permittivity_real(m, omega)
    if eps.imag == 0.0 and eps.real <= -1.0:
        raise UnsupportedModelError(
            f"eps({omega:.3e} rad/s) = {eps.real:.3e} <= -1 for a lossless medium: "
            "the surface-mode pole lies on the evanescent integration path and the "
            "real-frequency response is undefined without dissipation"
        )


def contracted_green_real(
    m: Material,
    z: float,
    omega: float,
    weight_xx: float,
    weight_zz: float,
    rel_tol: float = 1e-10,
    max_evaluations: int = 400_000,
) -> complex:
    """weight_xx * h_xx(omega) + weight_zz * h_zz(omega), complex, 1/m^3."""
    _require_height(z)
    if omega <= 0.0:
        raise ValueError("omega must be > 0")
    c = SPEED_OF_LIGHT
    w = omega * z / c
    w2 = w * w

    mirror = isinstance(m, PerfectConductor)
    if mirror:
        dq2z2 = complex(0.0)
        eps = complex(1.0)
    else:
        dq2z2 = wavevector_contrast_real(m, omega, c) * z * z
        if dq2z2 == 0:
            return complex(0.0)
        _check_surface_mode(m, omega)
        eps = permittivity_real(m, omega)

    # propagating segment: v = k_perp z in (0, w), phase e^(2 i v)
    def f_prop(v: np.ndarray) -> np.ndarray:
        v = v.astype(complex)
        ksq = w2 - v * v  # (k_par z)^2
        if mirror:
            r_s = -1.0
            r_p = 1.0
        else:
            km = np.sqrt(v * v + dq2z2)
            r_s = -dq2z2 / (v + km) ** 2
            r_p = (eps - 1.0) * (eps * w2 - (eps + 1.0) * ksq) / (eps * v + km) ** 2
        bracket = weight_xx * (r_p * w2 - r_s * v * v) + 2.0 * weight_zz * ksq * r_s
        return bracket * np.exp(2.0j * v)

    prop_bps: list[float] = []
    if not mirror and dq2z2.imag == 0.0 and dq2z2.real < 0.0:
        v_edge = math.sqrt(-dq2z2.real)  # total-reflection kink
        if v_edge < w:
            prop_bps.append(v_edge)
    cfg_prop = _quad_config(rel_tol, max_evaluations, 1.0)
    res_prop = integrate_finite_oscillatory(
        f_prop, 0.0, w, phase_scale=w / math.pi, cfg=cfg_prop, breakpoints=prop_bps
    )
    if not res_prop.converged:
        raise IntegrationError(
            f"propagating-segment integral did not converge (omega={omega:.3e}, z={z:.3e})",
            res_prop,
        )

    # evanescent tail: u = q z in (0, inf), vacuum normal component i u / z
    def f_evan(u: np.ndarray) -> np.ndarray:
        u = u.astype(complex)
        ksq = w2 + u * u
        if mirror:
            r_s = -1.0
            r_p = 1.0
        else:
            km = np.sqrt(dq2z2 - u * u)
            r_s = -dq2z2 / (1j * u + km) ** 2
            r_p = (eps - 1.0) * (eps * w2 - (eps + 1.0) * ksq) / (eps * 1j * u + km) ** 2
        bracket = weight_xx * (r_p * w2 + r_s * u * u) + 2.0 * weight_zz * ksq * r_s
        return bracket * np.exp(-2.0 * u)

    evan_bps = [0.25, 1.0, 4.0]
    scale = abs(np.sqrt(dq2z2)) if not mirror else 0.0
    if 0.04 < scale < 50.0:
        evan_bps.append(float(scale))
    if w < 50.0:
        evan_bps.append(max(w, 1e-6))
    cfg_evan = _quad_config(rel_tol, max_evaluations, 0.5)
    res_evan = integrate_semi_infinite(f_evan, cfg_evan, breakpoints=evan_bps)
    if not res_evan.converged:
        raise IntegrationError(
            f"evanescent-segment integral did not converge (omega={omega:.3e}, z={z:.3e})",
            res_evan,
        )

    pref = 1.0 / (8.0 * math.pi * z**3)
    return pref * (-1j * res_prop.value - res_evan.value)


def magnetic_green_diag_real(
    m: Material,
    z: float,
    omega: float,
    rel_tol: float = 1e-10,
    max_evaluations: int = 400_000,
) -> MagneticGreenDiag:
    """Both diagonal components at real frequency omega (complex values)."""
    h_xx = contracted_green_real(m, z, omega, 1.0, 0.0, rel_tol, max_evaluations)
    h_zz = contracted_green_real(m, z, omega, 0.0, 1.0, rel_tol, max_evaluations)
    return MagneticGreenDiag(h_xx=h_xx, h_zz=h_zz, z=z, frequency=omega, axis="real")
