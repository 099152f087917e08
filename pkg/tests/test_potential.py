"""Potential assembly: dual routes, limits, closed forms, and angle handling."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neutroncp import (
    CONSTANTS,
    NEUTRON,
    Drude,
    DrudeLorentz,
    FieldConfig,
    PerfectConductor,
    Plasma,
    UnsupportedModelError,
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

K = CONSTANTS
PC = PerfectConductor()
BASE = K.hbar**2 * NEUTRON.gamma_n**2 * K.mu0


def test_dipole_elements_values():
    el = dipole_elements(NEUTRON, 0.0)
    half = K.hbar * NEUTRON.gamma_n / 2.0
    assert el.m_uu == pytest.approx([0.0, 0.0, half])
    assert el.m_ud == pytest.approx([half, -1.0j * half, 0.0])


@given(st.floats(min_value=0.0, max_value=math.pi))
@settings(max_examples=50, deadline=None)
def test_cross_element_twice_diagonal(theta):
    el = dipole_elements(NEUTRON, theta)
    diag = float(np.sum(np.abs(el.m_uu) ** 2))
    cross = float(np.sum(np.abs(el.m_ud) ** 2))
    assert cross == pytest.approx(2.0 * diag, rel=1e-12)


def test_transition_frequency_and_critical_distance():
    assert transition_frequency(FieldConfig(2.0)) == pytest.approx(
        363494611.93541175, rel=1e-12
    )
    assert critical_distance(FieldConfig(2.0)) == pytest.approx(
        0.8247507615140914, rel=1e-12
    )
    assert critical_distance(FieldConfig(5.0)) == pytest.approx(
        0.3299003046056366, rel=1e-12
    )
    assert critical_distance(FieldConfig(0.0)) == math.inf


def test_u_dd_mirror_closed_form():
    # static contraction with weights (sin^2, cos^2) against the mirror:
    # u_dd = mu0 (hbar gamma / 2)^2 (1 + cos^2) / (64 pi z^3)
    z = 1e-7
    for theta in (0.0, 0.3, math.pi / 2):
        c2 = math.cos(theta) ** 2
        expected = BASE * (1.0 + c2) / (256.0 * math.pi * z**3)
        got = u_dd(z, FieldConfig(2.0, theta), PC)
        assert got == pytest.approx(expected, rel=1e-9)


def test_u_dd_field_independent():
    z = 1e-7
    a = u_dd(z, FieldConfig(0.0, 0.4), PC)
    b = u_dd(z, FieldConfig(5.0, 0.4), PC)
    assert a == b


def test_mirror_dual_route():
    # the general double-integral path against the reduced single
    # integral; independent routes, must agree to quadrature accuracy
    cfg = FieldConfig(2.0, 0.7)
    for z in (1e-8, 1e-3, 0.8247507615140914, 8.0):
        general = u_du(z, cfg, PC, rel_tol=1e-9)
        single = u_du_mirror_single_integral(z, cfg, rel_tol=1e-11)
        assert general == pytest.approx(single, rel=1e-7)


def test_zero_field_collapses_to_half_static():
    # the Lorentzian weight becomes a half delta at xi = 0
    z = 1e-6
    for theta in (0.0, 1.1, None):
        cfg0 = FieldConfig(0.0, theta)
        got = u_du(z, cfg0, PC)
        c2 = 1.0 / 3.0 if theta is None else math.cos(theta) ** 2
        expected = BASE * (3.0 - c2) / (256.0 * math.pi * z**3)
        assert got == pytest.approx(expected, rel=1e-9)


def test_zero_field_continuity():
    # B -> 0 limit of the full integral matches the collapsed branch
    z = 1e-6
    cfg_tiny = FieldConfig(1e-9, 0.5)
    cfg_zero = FieldConfig(0.0, 0.5)
    a = u_du(z, cfg_tiny, PC, rel_tol=1e-9)
    b = u_du(z, cfg_zero, PC, rel_tol=1e-9)
    assert a == pytest.approx(b, rel=1e-6)


def test_zero_field_ground_state_angle_independent():
    # at B = 0 the static and cross weights sum to (2, 1) at every angle
    z = 1e-7
    vals = [
        u_dd(z, FieldConfig(0.0, th), PC) + u_du(z, FieldConfig(0.0, th), PC)
        for th in (0.0, 0.9, math.pi / 2, None)
    ]
    for v in vals[1:]:
        assert v == pytest.approx(vals[0], rel=1e-9)


def test_nonretarded_ground_state_angle_independent():
    # the 1/z^3 coefficient is isotropic even though the pieces are not
    z = 1e-9
    cfg_a = FieldConfig(2.0, 0.0)
    cfg_b = FieldConfig(2.0, math.pi / 2)
    ua = u_dd(z, cfg_a, PC) + u_du(z, cfg_a, PC)
    ub = u_dd(z, cfg_b, PC) + u_du(z, cfg_b, PC)
    assert ua == pytest.approx(ub, rel=1e-6)


def test_asymptote_margins():
    z_c = critical_distance(FieldConfig(2.0))
    for theta in (0.0, None, math.pi / 2):
        cfg = FieldConfig(2.0, theta)
        near = z_c / 300.0
        dev = u_du(near, cfg, PC) / nonretarded_mirror_u_du(near, cfg) - 1.0
        assert abs(dev) < 0.01
        far = 300.0 * z_c
        dev = u_du(far, cfg, PC) / retarded_mirror_u_du(far, cfg) - 1.0
        assert abs(dev) < 0.01


def test_retarded_asymptote_requires_field():
    with pytest.raises(ValueError):
        retarded_mirror_u_du(1.0, FieldConfig(0.0, 0.3))


def test_orientation_average_matches_exact_weights():
    # angle enters only through cos^2; the generic average must agree
    # with the closed-weight theta=None evaluation
    z = 1e-8
    avg = orientation_average(lambda th: u_dd(z, FieldConfig(2.0, th), PC))
    assert avg == pytest.approx(u_dd(z, FieldConfig(2.0, None), PC), rel=1e-10)
    cfg = FieldConfig(0.05, None)
    m = DrudeLorentz(omega_p=3e12, omega_t=1e13)
    avg2 = orientation_average(
        lambda th: nonretarded_leading(m, FieldConfig(0.05, th), z=3e-9)
    )
    assert avg2 == pytest.approx(nonretarded_leading(m, cfg, z=3e-9), rel=1e-12)


def test_leading_forms_frozen_values():
    # reference numbers from a separate closed-form evaluation
    assert nonretarded_leading(PC, FieldConfig(1e-3, None), z=1e-9) == pytest.approx(
        2.2959810741211063e-33, rel=1e-12
    )
    assert nonretarded_leading(
        Plasma(omega_p=1e9), FieldConfig(1e-3, None), z=1e-6
    ) == pytest.approx(1.2773117354094483e-53, rel=1e-12)
    assert nonretarded_leading(
        Drude(omega_p=1e14, gamma=1e11),
        FieldConfig(0.05502144830568696, None),
        z=3e-8,
    ) == pytest.approx(1.6643328742187468e-45, rel=1e-12)
    assert nonretarded_leading(
        DrudeLorentz(omega_p=3e12, omega_t=1e13), FieldConfig(0.01, None), z=3e-9
    ) == pytest.approx(9.184850621824072e-51, rel=1e-11)


def test_leading_form_drude_domain():
    m = Drude(omega_p=1e14, gamma=1e11)
    assert nonretarded_leading(m, FieldConfig(0.0, None), z=1e-8) == 0.0
    with pytest.raises(ValueError):
        # omega/gamma >= 1 is outside the validity of the x ln x law
        nonretarded_leading(m, FieldConfig(1000.0, None), z=1e-8)


def test_c3_coefficients():
    assert neutron_c3() == pytest.approx(2.2959810741211065e-60, rel=1e-12)
    d_sq = (K.e * K.a_bohr) ** 2
    assert atomic_c3(d_sq) == pytest.approx(5.383729281259783e-50, rel=1e-12)
    assert c3_ratio() == pytest.approx(4.264666654184323e-11, rel=1e-12)
    # closed-form ratio reproduces the quotient of the two coefficients
    assert c3_ratio() == pytest.approx(neutron_c3() / atomic_c3(d_sq), rel=1e-9)


def test_local_power_law_exact():
    assert local_power_law(2.0, lambda z: 7.0 / z**3) == pytest.approx(-3.0, rel=1e-9)
    with pytest.raises(ValueError):
        local_power_law(1.0, lambda z: 0.0)


def test_resonant_small_frequency_limit():
    # as the splitting vanishes, the resonant piece approaches twice the
    # collapsed cross piece (the same static contraction)
    z = 1e-7
    theta = 0.4
    r = u_resonant(z, FieldConfig(1e-6, theta), PC, rel_tol=1e-10)
    half = u_du(z, FieldConfig(0.0, theta), PC, rel_tol=1e-10)
    assert r == pytest.approx(2.0 * half, rel=1e-6)


def test_resonant_requires_field():
    with pytest.raises(ValueError):
        u_resonant(1e-7, FieldConfig(0.0, 0.4), PC)


def test_resonant_unsupported_for_plasma():
    with pytest.raises(UnsupportedModelError):
        u_resonant(1e-7, FieldConfig(2.0, 0.4), Plasma(omega_p=1.37e16))


def test_resonant_defined_for_lossy_and_dielectric():
    cfg = FieldConfig(2.0, 0.4)
    assert math.isfinite(u_resonant(1e-7, cfg, Drude(omega_p=1.37e16, gamma=4.1e12)))
    assert math.isfinite(
        u_resonant(1e-7, cfg, DrudeLorentz(omega_p=2.3e16, omega_t=7.1e16))
    )


def test_breakdown_structure():
    cfg = FieldConfig(2.0, 0.4)
    m = Drude(omega_p=1.37e16, gamma=4.1e12)
    bd = ground_state_potential(1e-7, cfg, m)
    assert bd.u_ground == bd.u_dd + bd.u_du
    assert bd.u_ground > 0.0
    assert bd.u_resonant is None and bd.u_excited is None
    full = ground_state_potential(1e-7, cfg, m, include_excited=True)
    assert full.u_excited == pytest.approx(
        full.u_dd - full.u_du + full.u_resonant, rel=1e-12
    )


def test_ground_state_positive_across_models():
    cfg = FieldConfig(2.0, None)
    for m in [PC, Plasma(omega_p=1.37e16), Drude(omega_p=1.37e16, gamma=4.1e12)]:
        bd = ground_state_potential(3e-8, cfg, m, rel_tol=1e-7)
        assert bd.u_ground > 0.0


def test_field_config_validation():
    with pytest.raises(ValueError):
        FieldConfig(-1.0, 0.3)
    with pytest.raises(ValueError):
        FieldConfig(2.0, 3.5)
