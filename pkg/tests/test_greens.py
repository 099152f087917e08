"""Surface response diagonal: reflection coefficients and the Green function.

The ideal-mirror closed forms used throughout are

    imaginary axis: h_xx = e^(-2x) (1 + 2x + 4x^2) / (32 pi z^3)
                    h_zz = e^(-2x) (1 + 2x)       / (16 pi z^3),   x = xi z / c
    real axis:      h_xx = e^(2 i w) (1 - 2iw - 4w^2) / (32 pi z^3)
                    h_zz = e^(2 i w) (1 - 2iw)        / (16 pi z^3), w = omega z / c

and every numeric route must reproduce them.  Note the real-axis forms
grow like w^2 relative to the static value, so the response at large
omega z / c is enhanced, not suppressed.
"""

import cmath
import math

import pytest

from neutroncp import (
    CONSTANTS,
    Drude,
    DrudeLorentz,
    IntegrationError,
    PerfectConductor,
    Plasma,
    UnsupportedModelError,
    fresnel_imag,
    fresnel_real,
    magnetic_green_diag_imag,
    magnetic_green_diag_real,
)

C = CONSTANTS.c
PC = PerfectConductor()
GOLD_PLASMA = Plasma(omega_p=1.37e16)
GOLD_DRUDE = Drude(omega_p=1.37e16, gamma=4.10e12)
SILICON_DL = DrudeLorentz(omega_p=2.3e16, omega_t=7.1e16)
MODELS = [GOLD_PLASMA, GOLD_DRUDE, SILICON_DL]


def mirror_imag(z, x):
    h_xx = math.exp(-2 * x) * (1 + 2 * x + 4 * x * x) / (32 * math.pi * z**3)
    h_zz = math.exp(-2 * x) * (1 + 2 * x) / (16 * math.pi * z**3)
    return h_xx, h_zz


def mirror_real(z, w):
    h_xx = cmath.exp(2j * w) * (1 - 2j * w - 4 * w * w) / (32 * math.pi * z**3)
    h_zz = cmath.exp(2j * w) * (1 - 2j * w) / (16 * math.pi * z**3)
    return h_xx, h_zz


# ---------------------------------------------------------------- fresnel


def test_mirror_reflection():
    r = fresnel_imag(PC, 1e15, 1e7)
    assert (r.r_s, r.r_p) == (-1.0, 1.0)
    rr = fresnel_real(PC, 1e15, 1e7)
    assert (rr.r_s, rr.r_p) == (-1.0, 1.0)


def test_plasma_normal_incidence_imag():
    # at xi = omega_p the permittivity is 2; normal incidence gives the
    # textbook (1 - n)/(1 + n) with n = sqrt(2)
    m = Plasma(omega_p=1e16)
    r = fresnel_imag(m, 1e16, 0.0)
    n = math.sqrt(2.0)
    assert r.r_s == pytest.approx((1 - n) / (1 + n), rel=1e-12)
    assert r.r_p == pytest.approx((n - 1) / (n + 1), rel=1e-12)


def test_grazing_limit_imag():
    # k_par >> xi/c: r_s -> 0, r_p -> (eps - 1)/(eps + 1)
    m = Plasma(omega_p=1e16)
    xi = 1e16
    eps = 2.0
    r = fresnel_imag(m, xi, 1e12)
    assert abs(r.r_s) < 1e-6
    assert r.r_p == pytest.approx((eps - 1) / (eps + 1), rel=1e-6)


def test_static_reflection():
    # xi = 0: conducting models keep full p-reflection, the dielectric
    # saturates at its static permittivity, vacuum reflects nothing
    assert fresnel_imag(Plasma(omega_p=1e16), 0.0, 1e7).r_p == 1.0
    assert fresnel_imag(Drude(omega_p=1e16, gamma=1e13), 0.0, 1e7).r_p == 1.0
    eps0 = 1.0 + SILICON_DL.omega_p**2 / SILICON_DL.omega_t**2
    assert fresnel_imag(SILICON_DL, 0.0, 1e7).r_p == pytest.approx(
        (eps0 - 1.0) / (eps0 + 1.0), rel=1e-12
    )
    assert fresnel_imag(Plasma(omega_p=0.0), 0.0, 1e7).r_p == 0.0


def test_imag_axis_reflection_bounded():
    for m in MODELS:
        for xi in (1e12, 1e15, 1e17):
            for k_par in (1e5, 1e8, 1e10):
                r = fresnel_imag(m, xi, k_par)
                assert -1.0 <= r.r_s <= 0.0
                assert 0.0 <= r.r_p <= 1.0


def test_real_axis_propagating_passive():
    # propagating incidence on a lossy medium: |r| <= 1
    m = GOLD_DRUDE
    omega = 2e16
    for frac in (0.1, 0.6, 0.99):
        r = fresnel_real(m, omega, frac * omega / C)
        assert abs(r.r_s) <= 1.0 + 1e-12
        assert abs(r.r_p) <= 1.0 + 1e-12


def test_real_axis_total_internal_reflection_kink():
    # lossless dielectric below its resonance behaves like eps > 1
    m = SILICON_DL
    omega = 1e15
    r = fresnel_real(m, omega, 0.5 * omega / C)
    assert abs(r.r_s.imag) < 1e-12  # propagating on both sides: real r
    r_evan = fresnel_real(m, omega, 2.0 * omega / C)
    assert abs(r_evan.r_s) > 0.0  # evanescent branch still defined


# ------------------------------------------------- imaginary-axis Green


@pytest.mark.parametrize("x", [0.0, 0.05, 0.5, 3.0, 20.0])
def test_mirror_green_imag(x):
    z = 1e-6
    got = magnetic_green_diag_imag(PC, z, x * C / z)
    ref_xx, ref_zz = mirror_imag(z, x)
    assert got.h_xx == pytest.approx(ref_xx, rel=1e-9)
    assert got.h_zz == pytest.approx(ref_zz, rel=1e-9)
    assert got.axis == "imaginary"


def test_mirror_green_scale_invariance():
    # z^3 h depends on xi z/c only; checks the internal t = k z scaling
    x = 0.7
    for z1, z2 in [(1e-9, 1e-6), (1e-6, 1e-3)]:
        a = magnetic_green_diag_imag(PC, z1, x * C / z1)
        b = magnetic_green_diag_imag(PC, z2, x * C / z2)
        assert a.h_xx * z1**3 == pytest.approx(b.h_xx * z2**3, rel=1e-9)
        assert a.h_zz * z1**3 == pytest.approx(b.h_zz * z2**3, rel=1e-9)


def test_static_zz_is_twice_xx():
    for m in [PC, GOLD_PLASMA]:
        for z in (1e-9, 1e-7, 1e-5):
            g = magnetic_green_diag_imag(m, z, 0.0)
            assert g.h_zz == pytest.approx(2.0 * g.h_xx, rel=1e-9)
            assert g.h_xx > 0.0


def test_static_response_vanishes_without_dc_conductivity():
    for m in [GOLD_DRUDE, SILICON_DL]:
        g = magnetic_green_diag_imag(m, 1e-7, 0.0)
        assert g.h_xx == 0.0
        assert g.h_zz == 0.0


def test_imag_axis_sign_and_mirror_bound():
    # both diagonal components stay positive and below the ideal mirror
    for m in MODELS:
        for z in (1e-9, 1e-7, 1e-5):
            for x in (0.01, 0.3, 2.0):
                g = magnetic_green_diag_imag(m, z, x * C / z)
                ref = magnetic_green_diag_imag(PC, z, x * C / z)
                assert 0.0 < g.h_xx <= ref.h_xx * (1 + 1e-9)
                assert 0.0 < g.h_zz <= ref.h_zz * (1 + 1e-9)


def test_static_limit_continuous():
    # approaching xi = 0 from above must agree with the xi = 0 branch
    z = 1e-7
    scale = magnetic_green_diag_imag(PC, z, 0.0).h_xx
    for m in [PC, GOLD_PLASMA, GOLD_DRUDE, SILICON_DL]:
        lo = magnetic_green_diag_imag(m, z, 1e-12 * C / z)
        at0 = magnetic_green_diag_imag(m, z, 0.0)
        assert abs(lo.h_xx - at0.h_xx) < 1e-6 * scale
        assert abs(lo.h_zz - at0.h_zz) < 1e-6 * scale


def test_deep_evanescent_cutoff():
    # xi z / c beyond exp underflow is exactly zero, not an overflow trap
    g = magnetic_green_diag_imag(GOLD_PLASMA, 1e-3, 400.0 * C / 1e-3)
    assert g.h_xx == 0.0 and g.h_zz == 0.0


# ------------------------------------------------------ real-axis Green


@pytest.mark.parametrize("w", [0.01, 0.3, 2.0, 10.0])
def test_mirror_green_real(w):
    z = 1e-6
    got = magnetic_green_diag_real(PC, z, w * C / z)
    ref_xx, ref_zz = mirror_real(z, w)
    assert got.h_xx == pytest.approx(ref_xx, rel=1e-9)
    assert got.h_zz == pytest.approx(ref_zz, rel=1e-9)
    assert got.axis == "real"


def test_real_axis_response_grows_with_frequency():
    # |Re h_xx| at omega z/c = 10 is ~145x the static value for a mirror
    z = 1e-6
    static = magnetic_green_diag_imag(PC, z, 0.0).h_xx
    g = magnetic_green_diag_real(PC, z, 10.0 * C / z)
    ratio = g.h_xx.real / static
    expected = (math.cos(20.0) * (1 - 400.0) + 20.0 * math.sin(20.0)) / 1.0
    assert ratio == pytest.approx(expected, rel=1e-6)
    assert abs(ratio) > 100.0


def test_real_axis_static_continuity():
    z = 1e-7
    g = magnetic_green_diag_real(PC, z, 1e-3 * C / z)
    static = magnetic_green_diag_imag(PC, z, 0.0)
    assert g.h_xx.real == pytest.approx(static.h_xx, rel=1e-5)
    assert g.h_zz.real == pytest.approx(static.h_zz, rel=1e-5)


def test_surface_mode_region_rejected():
    # lossless permittivity <= -1 puts a pole on the integration path
    with pytest.raises(UnsupportedModelError):
        magnetic_green_diag_real(GOLD_PLASMA, 1e-7, 0.5 * GOLD_PLASMA.omega_p)
    w_t = SILICON_DL.omega_t
    with pytest.raises(UnsupportedModelError):
        magnetic_green_diag_real(SILICON_DL, 1e-7, 1.01 * w_t)


def test_real_axis_outside_surface_mode_region():
    # plasma is transparent above omega_p; dielectric below resonance
    g = magnetic_green_diag_real(GOLD_PLASMA, 1e-7, 2.0 * GOLD_PLASMA.omega_p)
    assert math.isfinite(abs(g.h_xx)) and math.isfinite(abs(g.h_zz))
    g2 = magnetic_green_diag_real(SILICON_DL, 1e-7, 1e15)
    assert math.isfinite(abs(g2.h_xx))
    g3 = magnetic_green_diag_real(GOLD_DRUDE, 1e-7, 1e12)
    assert math.isfinite(abs(g3.h_xx))


def test_non_convergence_carries_result():
    # tolerance below the roundoff floor cannot be met; the error object
    # still exposes the best estimate for diagnostics
    with pytest.raises(IntegrationError) as info:
        magnetic_green_diag_imag(GOLD_PLASMA, 1e-7, 1e15, rel_tol=1e-15)
    res = info.value.result
    assert res.abs_error > 0.0
    assert not res.converged
