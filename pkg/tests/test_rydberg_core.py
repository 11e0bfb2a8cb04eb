import math

import numpy as np
import pytest

from rydmol.errors import PhysicsDomainError, UnsupportedStateError
from rydmol.rydberg_core import GridSpec, RydbergLevel, shielded_core_field, solve_radial
from rydmol.units import Quantity

from oracles import direct_core_field


@pytest.fixture(scope="module")
def rb50s():
    return solve_radial(RydbergLevel(50, 0, 3.13))


def test_level_energy_and_nodes():
    lv = RydbergLevel(50, 0, 3.13)
    assert lv.n_eff == pytest.approx(46.87)
    assert lv.energy == pytest.approx(-0.5 / 46.87**2)
    assert lv.expected_nodes == 46
    assert RydbergLevel(3, 1).expected_nodes == 1


def test_invalid_levels():
    with pytest.raises(PhysicsDomainError):
        RydbergLevel(2, 2)
    with pytest.raises(PhysicsDomainError):
        RydbergLevel(5, 0, -0.1)


def test_hydrogen_1s_matches_analytic():
    wf = solve_radial(RydbergLevel(1, 0))
    exact = 2.0 * wf.r_grid * np.exp(-wf.r_grid)
    assert np.max(np.abs(wf.u - exact)) < 1e-6
    assert wf.norm() == pytest.approx(1.0, abs=1e-10)
    assert wf.expectation_r() == pytest.approx(1.5, rel=1e-6)


def test_hydrogen_2p_matches_analytic():
    wf = solve_radial(RydbergLevel(2, 1))
    r = wf.r_grid
    exact = r**2 * np.exp(-r / 2) / math.sqrt(24.0)
    assert np.max(np.abs(np.abs(wf.u) - exact)) < 1e-6
    assert wf.expectation_r() == pytest.approx(5.0, rel=1e-6)


def test_hydrogen_2s_nodes_and_mean_radius():
    wf = solve_radial(RydbergLevel(2, 0))
    assert wf.node_count() == 1
    assert wf.expectation_r() == pytest.approx(6.0, rel=1e-6)


def test_rb50s_structure(rb50s):
    assert rb50s.node_count() == 46
    assert rb50s.norm() == pytest.approx(1.0, abs=1e-10)
    tail = np.max(np.abs(rb50s.u[-10:])) / np.max(np.abs(rb50s.u))
    assert tail < 1e-6
    # <r> of a hydrogenic s state at n* is 1.5 n*^2
    assert rb50s.expectation_r() == pytest.approx(1.5 * 46.87**2, rel=0.01)


def test_enclosed_probability_is_monotone(rb50s):
    r = np.linspace(rb50s.r_grid[0], rb50s.r_grid[-1], 20000)
    P = rb50s.enclosed_probability(r)
    assert np.all(np.diff(P) >= -1e-15)
    assert P[0] == pytest.approx(0.0, abs=1e-12)
    assert P[-1] == pytest.approx(1.0, abs=1e-10)


def test_field_limits(rb50s):
    # deep inside the orbit the core is nearly bare; far outside it is fully screened
    R_in = 20.0
    assert shielded_core_field(rb50s, R_in) == pytest.approx(1 / R_in**2, rel=1e-3)
    assert shielded_core_field(rb50s, 0.98 * rb50s.r_grid[-1]) < 1e-15


def test_field_at_100nm_order_of_magnitude(rb50s):
    F = shielded_core_field(rb50s, Quantity(100.0, "nm"))
    assert 1e-7 <= F < 1e-6
    assert Quantity(F, "au_field").to("V/cm").value == pytest.approx(1238, rel=0.01)


def test_field_matches_direct_quadrature(rb50s):
    for R in (300.0, 1889.7, 4000.0, 6000.0):
        F = shielded_core_field(rb50s, R)
        ref = direct_core_field(rb50s, R)
        assert F == pytest.approx(ref, rel=1e-6, abs=1e-18)


def test_field_converged_in_grid_density():
    lv = RydbergLevel(30, 0, 3.13)
    a = solve_radial(lv)
    b = solve_radial(lv, GridSpec(points_per_unit=400))
    for R in (100.0, 500.0, 1000.0):
        assert shielded_core_field(a, R) == pytest.approx(shielded_core_field(b, R), rel=1e-6)


def test_field_array_input(rb50s):
    R = np.array([500.0, 1000.0])
    F = shielded_core_field(rb50s, R)
    assert F.shape == (2,)
    assert F[1] == pytest.approx(shielded_core_field(rb50s, 1000.0))


def test_field_errors(rb50s):
    with pytest.raises(UnsupportedStateError):
        shielded_core_field(solve_radial(RydbergLevel(3, 1)), 5.0)
    with pytest.raises(PhysicsDomainError):
        shielded_core_field(rb50s, 10 * rb50s.r_grid[-1])


def test_wavefunction_csv(tmp_path, rb50s):
    p = tmp_path / "wf.csv"
    rb50s.to_csv(p)
    head = p.read_text().splitlines()
    assert head[0] == "r_bohr,u"
    assert len(head) == len(rb50s.r_grid) + 1


def test_arrays_are_read_only(rb50s):
    with pytest.raises(ValueError):
        rb50s.u[0] = 1.0
