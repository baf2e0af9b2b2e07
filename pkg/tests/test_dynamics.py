"""Integrator, frequency extraction, and linearization diagnostics."""

import math

import numpy as np
import pytest

from kamlab import (
    IMPLICIT_MIDPOINT,
    RK4,
    DomainExit,
    InvalidInput,
    MuAffinePolynomial,
    NonpositiveRho,
    NotACenterOrbit,
    PolarState,
    StepFailure,
    ToyModel,
    apply_involution,
    default_model,
    first_integral,
    floquet_residual,
    integrate,
    perturb,
    torus_frequencies,
)

TWO_PI = 2.0 * math.pi


def with_w(model, w_coeffs):
    return ToyModel(
        u=model.u,
        v=model.v,
        w=MuAffinePolynomial(tuple((c, 0.0) for c in w_coeffs)),
        mu=model.mu,
    )


# ---------------------------------------------------------------------------
# integrate


def test_trajectory_layout():
    traj = integrate(PolarState(0.1, 0.4, 0.0), default_model(), 1.0, 1e-3)
    assert len(traj) == 1001
    assert traj.scheme == IMPLICIT_MIDPOINT
    assert traj.dt == 1e-3
    assert traj.times[0] == 0.0
    assert traj.times[-1] == pytest.approx(1.0, abs=1e-12)
    assert traj.states.shape == (1001, 3)
    first = traj.state_at(0)
    assert (first.y, first.rho, first.phi) == (0.1, 0.4, 0.0)


def test_on_cycle_orbit_is_rigid_rotation():
    traj = integrate(PolarState(0.0, 0.5, 0.0), default_model(), 20.0, 1e-3)
    assert np.max(np.abs(traj.y)) == 0.0
    assert np.max(np.abs(traj.rho - 0.5)) == 0.0
    assert np.max(np.abs(traj.phi - 1.5 * traj.times)) < 1e-9
    final = traj.final_state()
    assert final.phi == pytest.approx((1.5 * 20.0) % TWO_PI, abs=1e-9)


def test_orbit_brackets_the_cycle():
    traj = integrate(PolarState(0.1, 0.4, 0.0), default_model(), 50.0, 1e-3)
    assert traj.rho.min() < 0.5 < traj.rho.max()
    assert traj.y.min() < 0.0 < traj.y.max()
    assert np.all(traj.rho > 0.0)


def test_first_integral_is_conserved():
    model = default_model()
    traj = integrate(PolarState(0.1, 0.4, 0.0), model, 50.0, 1e-3)
    values = [first_integral(traj.state_at(i), model) for i in range(0, len(traj), 2500)]
    drift = max(abs(v - values[0]) for v in values)
    assert drift < 1e-8


def test_time_reversal_symmetry():
    # G then flow then G undoes the flow
    model = default_model()
    start = PolarState(0.1, 0.4, 0.0)
    forward = integrate(start, model, 10.0, 1e-3)
    turned = apply_involution(forward.final_state())
    back = apply_involution(integrate(turned, model, 10.0, 1e-3).final_state())
    assert abs(back.y - start.y) < 1e-9
    assert abs(back.rho - start.rho) < 1e-9
    assert abs((back.phi - start.phi + math.pi) % TWO_PI - math.pi) < 1e-9


def test_schemes_agree():
    start = PolarState(0.1, 0.4, 0.0)
    mid = integrate(start, default_model(), 10.0, 1e-3).final_state()
    rk4 = integrate(start, default_model(), 10.0, 1e-3, scheme=RK4).final_state()
    assert abs(mid.y - rk4.y) < 1e-6
    assert abs(mid.rho - rk4.rho) < 1e-6
    assert abs(mid.phi - rk4.phi) < 1e-6


def test_scheme_names_are_normalized():
    start = PolarState(0.0, 0.5, 0.0)
    for name in ("implicit-midpoint", "IMPLICIT_MIDPOINT", "implicitmidpoint"):
        assert integrate(start, default_model(), 0.1, 1e-2, scheme=name).scheme == IMPLICIT_MIDPOINT
    assert integrate(start, default_model(), 0.1, 1e-2, scheme="rk4").scheme == RK4


def test_integrate_rejects_bad_arguments():
    start = PolarState(0.1, 0.4, 0.0)
    model = default_model()
    with pytest.raises(InvalidInput):
        integrate(start, model, 1.0, 1e-3, scheme="euler")
    with pytest.raises(InvalidInput):
        integrate(start, model, 1.0, 0.0)
    with pytest.raises(InvalidInput):
        integrate(start, model, -1.0, 1e-3)
    with pytest.raises(NonpositiveRho):
        integrate(PolarState(0.1, 0.0, 0.0), model, 1.0, 1e-3)


def test_domain_exit_on_nonpositive_w():
    # w = rho - 0.39 turns negative once the orbit dips below 0.39
    model = with_w(default_model(), (-0.39, 1.0))
    with pytest.raises(DomainExit) as info:
        integrate(PolarState(0.1, 0.4, 0.0), model, 50.0, 1e-3)
    assert "step" in str(info.value)
    with pytest.raises(DomainExit) as info:
        integrate(PolarState(0.1, 0.2, 0.0), model, 1.0, 1e-3)
    assert "initial" in str(info.value)


def test_step_failure_on_huge_dt():
    with pytest.raises(StepFailure):
        integrate(PolarState(0.1, 0.4, 0.0), default_model(), 100.0, 10.0)


def test_perturbed_orbit_stays_near_base_orbit():
    # O(eps) deformation of the invariant band, plus a frozen regression point
    model = default_model()
    start = PolarState(0.1, 0.45, 0.0)
    base = integrate(start, model, 100.0, 1e-3)
    pert = integrate(start, perturb(model, 1e-3), 100.0, 1e-3)
    assert abs(pert.rho.min() - base.rho.min()) < 50 * 1e-3
    assert abs(pert.rho.max() - base.rho.max()) < 50 * 1e-3
    assert pert.rho.min() == pytest.approx(0.39597140106849393, rel=1e-9)
    assert pert.rho.max() == pytest.approx(0.6221129116499585, rel=1e-9)
    final = pert.final_state()
    assert final.y == pytest.approx(0.04275853673793313, rel=1e-9)
    assert final.rho == pytest.approx(0.40305455024037373, rel=1e-9)


# ---------------------------------------------------------------------------
# torus frequencies


def test_torus_frequencies_small_amplitude_limit():
    # linearized frequencies are (|chi|, W(rho0)) = (1, 1.5)
    freqs = torus_frequencies(default_model(), PolarState(0.0, 0.525, 0.0), 200.0, 1e-3)
    assert freqs.amplitude == pytest.approx(0.025, abs=1e-6)
    assert abs(freqs.omega_section - 1.0) < 5e-4
    assert abs(freqs.omega_phase - 1.5) < 1e-9


def test_torus_frequencies_moderate_amplitude():
    freqs = torus_frequencies(default_model(), PolarState(0.0, 0.6, 0.0), 200.0, 1e-3)
    assert freqs.amplitude == pytest.approx(0.1, abs=1e-6)
    assert abs(freqs.omega_section - 1.0) < 0.05
    assert abs(freqs.omega_phase - 1.5) < 0.05


def test_torus_frequency_deviation_is_quadratic_in_amplitude():
    devs = []
    for drho in (0.1, 0.05, 0.025):
        freqs = torus_frequencies(default_model(), PolarState(0.0, 0.5 + drho, 0.0), 200.0, 1e-3)
        devs.append(abs(freqs.omega_section - 1.0))
    assert 3.0 < devs[0] / devs[1] < 5.0
    assert 3.0 < devs[1] / devs[2] < 5.0


def test_torus_frequencies_accepts_explicit_center():
    auto = torus_frequencies(default_model(), PolarState(0.0, 0.6, 0.0), 100.0, 1e-3)
    pinned = torus_frequencies(default_model(), PolarState(0.0, 0.6, 0.0), 100.0, 1e-3, rho0=0.5)
    assert pinned.omega_section == auto.omega_section
    assert pinned.omega_phase == auto.omega_phase
    assert pinned.amplitude == auto.amplitude


def test_torus_frequencies_rejects_non_oscillating_orbit():
    with pytest.raises(NotACenterOrbit):
        torus_frequencies(default_model(), PolarState(0.0, 0.5, 0.0), 50.0, 1e-3)


def test_torus_frequencies_returns_plain_floats():
    freqs = torus_frequencies(default_model(), PolarState(0.0, 0.6, 0.0), 100.0, 1e-3)
    assert type(freqs.omega_section) is float
    assert type(freqs.omega_phase) is float
    assert type(freqs.amplitude) is float


# ---------------------------------------------------------------------------
# floquet residual


def test_floquet_residual_orders():
    # linear u and w make the residuals exact: r1 = radius, r2 = radius^2
    model = default_model()
    for radius in (1e-2, 5e-3, 2.5e-3):
        r1, r2 = floquet_residual(model, 0.5, radius)
        assert r1 == pytest.approx(radius, rel=1e-12)
        assert r2 == pytest.approx(radius**2, rel=1e-12)
    assert floquet_residual(model, 0.5, 0.0) == (0.0, 0.0)


def test_floquet_residual_halving():
    model = default_model()
    r1a, r2a = floquet_residual(model, 0.5, 1e-2)
    r1b, r2b = floquet_residual(model, 0.5, 5e-3)
    assert r1a / r1b == pytest.approx(2.0, rel=0.25)
    assert r2a / r2b == pytest.approx(4.0, rel=0.25)


def test_floquet_residual_saddle():
    model = ToyModel(
        u=default_model().u,
        v=MuAffinePolynomial(((-1.0, 0.0),)),
        w=default_model().w,
        mu=(0.5,),
    )
    r1, r2 = floquet_residual(model, 0.5, 1e-2)
    assert r1 == pytest.approx(1e-2, rel=1e-12)
    assert r2 == pytest.approx(1e-4, rel=1e-12)


def test_floquet_residual_guards():
    model = default_model()
    with pytest.raises(InvalidInput):
        floquet_residual(model, 0.5, -1e-3)
    with pytest.raises(InvalidInput):
        floquet_residual(model, 0.5, 0.5)
    with pytest.raises(NonpositiveRho):
        floquet_residual(model, 0.0, 0.0)
