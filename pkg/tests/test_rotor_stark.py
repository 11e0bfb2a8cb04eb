import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from rydmol.errors import LabelingError, PhysicsDomainError
from rydmol.rotor_stark import (
    RigidRotorSpec,
    build_hamiltonian,
    cos_theta_element,
    shift_scan,
    stark_shifts,
)
from rydmol.rydberg_core import RydbergLevel, solve_radial
from rydmol.units import Quantity, to_au

from oracles import second_order_stark


@pytest.fixture(scope="module")
def rb50s():
    return solve_radial(RydbergLevel(50, 0, 3.13))


@pytest.fixture(scope="module")
def krb():
    return RigidRotorSpec.krb()


def test_cos_theta_elements():
    assert cos_theta_element(0, 1) == pytest.approx(1 / math.sqrt(3), abs=1e-12)
    assert cos_theta_element(1, 2) == pytest.approx(2 / math.sqrt(15), abs=1e-12)
    assert cos_theta_element(1, 3) == 0.0
    assert cos_theta_element(2, 1) == cos_theta_element(1, 2)


def test_cos_theta_against_symbolic_integral():
    th = sp.symbols("theta")
    for J, K in [(0, 1), (1, 2), (2, 3), (3, 4)]:
        yJ = sp.sqrt(sp.Rational(2 * J + 1, 2)) * sp.legendre(J, sp.cos(th))
        yK = sp.sqrt(sp.Rational(2 * K + 1, 2)) * sp.legendre(K, sp.cos(th))
        val = sp.integrate(yJ * sp.cos(th) * yK * sp.sin(th), (th, 0, sp.pi))
        assert cos_theta_element(J, K) == pytest.approx(float(val), abs=1e-12)


def test_hamiltonian_hand_example():
    spec = RigidRotorSpec(1.0, 1.0, j_max=4)
    H = build_hamiltonian(spec, 0.1)
    expected = np.array([[0, -0.057735, 0], [-0.057735, 1, -0.051640], [0, -0.051640, 3]])
    np.testing.assert_allclose(H[:3, :3], expected, atol=1e-6)
    np.testing.assert_array_equal(H, H.T)


def test_zero_field_and_zero_dipole():
    spec = RigidRotorSpec(2.0, 0.5, j_max=6)
    J = np.arange(7)
    np.testing.assert_allclose(np.linalg.eigvalsh(build_hamiltonian(spec, 0.0)),
                               spec.rotational_energy(J))
    spec0 = RigidRotorSpec(2.0, 0.0, j_max=6)
    np.testing.assert_array_equal(build_hamiltonian(spec0, 0.3), build_hamiltonian(spec0, 0.0))
    for lv in stark_shifts(spec, 0.0):
        assert lv.shift == 0.0 and lv.mixing == 0.0


def test_standard_convention_doubles_spacing():
    a = RigidRotorSpec(1.0, 1.0, convention="paper")
    b = RigidRotorSpec(1.0, 1.0, convention="standard")
    assert b.rotational_energy(3) == 2 * a.rotational_energy(3)


def test_ground_state_pushed_down(krb):
    levels = stark_shifts(krb, 1e-7)
    assert levels[0].j == 0 and levels[0].shift < 0
    assert [lv.j for lv in levels] == list(range(krb.j_max - 2))


def test_krb_matches_perturbation_theory(krb):
    F = 1e-7
    pt = second_order_stark(krb.b_rot, krb.d0, F, krb.j_max)
    bound = (F * krb.d0 / krb.b_rot) ** 2
    for lv in stark_shifts(krb, F):
        assert abs(lv.shift - pt[lv.j]) <= bound * abs(pt[lv.j])


@settings(max_examples=50, deadline=None)
@given(b=st.floats(0.5, 5.0), d0=st.floats(0.1, 2.0), x=st.floats(1e-4, 1e-2),
       conv=st.sampled_from(["paper", "standard"]))
def test_diagonalisation_vs_perturbation_random(b, d0, x, conv):
    # x = F d0 / b_rot sets how perturbative the draw is
    F = x * b / d0
    spec = RigidRotorSpec(b, d0, j_max=8, convention=conv)
    pt = second_order_stark(b, d0, F, 8, conv)
    for lv in stark_shifts(spec, F)[:4]:
        # eigenvalues carry ~eps * b_rot absolute round-off
        assert abs(lv.shift - pt[lv.j]) <= 10 * x**2 * abs(pt[lv.j]) + 1e-13 * b


def test_quadratic_regime(krb):
    F = 1e-9
    s1 = np.array([lv.shift for lv in stark_shifts(krb, F)])
    s2 = np.array([lv.shift for lv in stark_shifts(krb, F / 2)])
    np.testing.assert_allclose(s1[:4] / s2[:4], 4.0, rtol=0.01)


def test_truncation_convergence(krb):
    big = RigidRotorSpec(krb.b_rot, krb.d0, j_max=krb.j_max + 2)
    one_khz = to_au(1.0, "kHz")
    for F in (1e-8, 1e-7, 1e-6):
        a = stark_shifts(krb, F)[:4]
        b = stark_shifts(big, F)[:4]
        for la, lb in zip(a, b):
            assert abs(la.shift - lb.shift) < one_khz


def test_labeling_error_when_strongly_mixed():
    spec = RigidRotorSpec(1.0, 1.0, j_max=6)
    with pytest.raises(LabelingError):
        stark_shifts(spec, 50.0)


def test_negative_field_rejected():
    with pytest.raises(PhysicsDomainError):
        build_hamiltonian(RigidRotorSpec(1.0, 1.0), -1.0)


def test_spec_validation():
    with pytest.raises(PhysicsDomainError):
        RigidRotorSpec(1.0, 1.0, j_max=3)
    with pytest.raises(PhysicsDomainError):
        RigidRotorSpec(-1.0, 1.0)


def test_krb_defaults_from_species_table(krb):
    assert Quantity(krb.b_rot, "hartree").to("MHz").value == pytest.approx(2227.9)
    assert krb.d0 == 0.223


def test_scan_at_100nm(rb50s, krb):
    curve = shift_scan(krb, rb50s, [Quantity(100.0, "nm")])
    shifts = curve.shifts_mhz[0, :4]
    assert shifts[0] < 0
    assert 1 <= np.max(np.abs(shifts)) <= 30
    assert np.all(curve.mixing[0, :4] < 0.02)


def test_scan_screened_beyond_orbit(rb50s, krb):
    R = 0.97 * rb50s.r_grid[-1]
    curve = shift_scan(krb, rb50s, np.array([R]))
    assert np.all(np.abs(curve.shifts_mhz) < 1e-3)


def test_scan_thread_count_irrelevant(rb50s, krb):
    r = to_au(np.linspace(60, 250, 40), "nm")
    a = shift_scan(krb, rb50s, r, threads=1)
    b = shift_scan(krb, rb50s, r, threads=4)
    np.testing.assert_array_equal(a.shifts_mhz, b.shifts_mhz)
    np.testing.assert_array_equal(a.mixing, b.mixing)


def test_scan_error_names_separation(rb50s, krb):
    with pytest.raises(PhysicsDomainError, match="bohr"):
        shift_scan(krb, rb50s, np.array([1e6]))


def test_csv_rows(rb50s, krb):
    curve = shift_scan(krb, rb50s, to_au(np.array([100.0, 150.0]), "nm"))
    header, rows = curve.to_rows(2)
    assert header == ["R_nm", "shift_J0_MHz", "mixing_J0", "shift_J1_MHz", "mixing_J1",
                      "shift_J2_MHz", "mixing_J2"]
    assert rows[0][0] == pytest.approx(100.0)
    assert len(rows[1]) == 7
