import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qaaspin.driver import DriverMatrix, deterministic_params, parametrized_A
from qaaspin.phase_diagram import (
    analytic_success, critical_gamma_batch, gamma_c_of_L, gamma_condition, instance_critical,
    interval_draws, mass_condition, p_grid, success_fraction, tunnels_batch,
)
from qaaspin.problem import HwpInstance
from qaaspin.semiclassical import solve_a3
from qaaspin.spectral import min_gap_scaling

BASE = HwpInstance((0.0, 3.0, 1.0, 1.0))


def test_deterministic_tunnels_and_critical_value():
    assert tunnels_batch(BASE.beta[None, :])[0]
    assert not tunnels_batch(BASE.beta[None, :], gamma4=-8)[0]
    pc = instance_critical(BASE)
    assert pc.solved and pc.gamma_4c == pytest.approx(solve_a3(BASE.beta).gamma_4c, abs=1e-9)


def test_batch_matches_single_solver():
    rng = np.random.default_rng(4)
    ps = rng.uniform(0, 3, (6, 4))
    ps = np.vstack([ps, BASE.p])
    betas = np.array([HwpInstance(tuple(p)).beta for p in ps])
    g, t, ok = critical_gamma_batch(betas)
    for b, gi, oki in zip(betas, g, ok):
        pc = instance_critical(HwpInstance.from_betas(b))
        assert oki == pc.solved
        if oki:
            assert gi == pytest.approx(pc.gamma_4c, abs=1e-7)


def test_p_grid_shapes():
    assert p_grid(3, 5).shape == (625, 4)
    assert p_grid(3, 5, "symmetric").min() == -3
    with pytest.raises(ValueError):
        gamma_c_of_L(-1, 11)


def test_gamma_c_monotone_on_nested_small_grids():
    vals = [gamma_c_of_L(L, 5)[0] for L in (0.5, 1.0, 2.0)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_mass_condition_and_analytic_value():
    g = np.array([[0, 1, 0, 0, 0, 0], [0, 3, 0, 0, 0, 0], [1, 1, 1, 1, 1, 1]], float)
    assert list(mass_condition(g)) == [True, False, True]
    assert analytic_success(1e6, 0.0) == pytest.approx(0.359375)
    assert analytic_success(1e6, -0.95) == pytest.approx(0.359, abs=0.005)


def test_gamma_condition_sides():
    g4 = np.array([-2.0, -0.5, 0.5, 2.0])
    assert list(gamma_condition(g4, -1.0)) == [True, False, False, False]
    assert list(gamma_condition(g4, 1.0)) == [False, False, False, True]
    assert gamma_condition(g4, 0.0).all()
    assert not gamma_condition(g4, -np.inf).any()


def test_interval_mass_fraction():
    x, y, _ = interval_draws(3.0, 200_000, 0)
    assert np.mean(x <= 1 + y / 2) == pytest.approx(0.71875, abs=0.05)


def test_success_fraction_with_infinite_barrier():
    rep = success_fraction(BASE, 3.0, samples=2000, gamma_4c=-np.inf)
    assert rep.frac_gamma_ok == 0 and rep.frac_joint == 0


@pytest.mark.parametrize("ensemble", ["entries", "interval"])
def test_mirror_instance_same_fractions(ensemble):
    a = success_fraction(BASE, 3.0, samples=50_000, seed=1, ensemble=ensemble)
    b = success_fraction(BASE.reflected(), 3.0, samples=50_000, seed=2, ensemble=ensemble)
    assert b.gamma_4c == pytest.approx(-a.gamma_4c, abs=1e-9)
    for key in ("frac_mass_ok", "frac_gamma_ok", "frac_joint"):
        fa, fb = getattr(a, key), getattr(b, key)
        assert abs(fa - fb) <= 4 * np.hypot(getattr(a, "se" + key[4:].replace("_ok", "")), getattr(b, "se" + key[4:].replace("_ok", "")))


def test_report_json_echoes_seed():
    rep = success_fraction(BASE, 3.0, samples=1000, seed=42, ensemble="interval", gamma_4c=-0.9)
    assert '"seed": 42' in rep.to_json()
    with pytest.raises(ValueError):
        success_fraction(BASE, 3.0, samples=10, gamma_4c=-0.9)


def test_deterministic_driver_avoids_tunnelling():
    fit = min_gap_scaling(BASE, parametrized_A(deterministic_params()), [20, 30, 40, 50, 60], grid=101)
    assert fit.verdict == "power-law"


def test_tiny_driver_still_tunnels():
    from qaaspin.phase_diagram import verify_success_by_gap

    assert verify_success_by_gap(BASE, 1e-3, samples=3, seed=0) == 0.0


@pytest.mark.xfail(strict=True, reason="gap-verified fraction 0.44 vs sampled joint fraction 0.31; see the ledger")
def test_gap_cross_validation():
    from qaaspin.phase_diagram import verify_success_by_gap

    frac = verify_success_by_gap(BASE, 3.0, samples=200, seed=0)
    joint = success_fraction(BASE, 3.0, samples=100_000, seed=0).frac_joint
    assert abs(frac - joint) <= 0.1
