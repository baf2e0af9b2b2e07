"""Time integration and cycle diagnostics for the planar-phase model.

The workhorse is an implicit midpoint integrator: it is time-symmetric, so it
respects the reversing involution structurally, and in practice conserves the
first integral to a small drift over long runs.  A classical RK4 stepper is
included for cross-validation only.  Both are compiled with numba; the stage
equation of the midpoint rule is solved by fixed-point iteration (the field is
smooth and dt is small, so the iteration contracts).

On top of integration:

* ``torus_frequencies`` measures the two frequencies of a quasi-periodic
  orbit: the (y, rho) oscillation frequency from return times to the section
  {y = 0, rho > rho0} and the average angular speed of phi, both over the
  window between the first and last section crossing so that whole
  oscillation periods are averaged.
* ``floquet_residual`` checks the rotating-frame normal form near a cycle
  rho = rho0: the phase speed deviates from W(rho0) at first order in the
  distance, the (y, rho - rho0) part deviates from its linearization at
  second order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from numba import njit
from numpy.polynomial import polynomial as npoly

from .errors import DomainExit, InvalidInput, NonpositiveRho, NotACenterOrbit, StepFailure
from .toymodel import (
    PerturbedField,
    PolarState,
    State,
    ToyModel,
    as_polar,
    find_equilibria,
)

__all__ = [
    "IMPLICIT_MIDPOINT",
    "RK4",
    "Trajectory",
    "integrate",
    "TorusFrequencies",
    "torus_frequencies",
    "floquet_residual",
]

TWO_PI = 2.0 * math.pi

IMPLICIT_MIDPOINT = "ImplicitMidpoint"
RK4 = "RK4"

# kernel exit codes
_OK = 0
_NO_CONVERGENCE = 1
_NOT_FINITE = 2
_RHO_EXIT = 3
_W_EXIT = 4


@njit(cache=True, inline="always")
def _polyval(x, c):
    acc = 0.0
    for i in range(c.shape[0] - 1, -1, -1):
        acc = acc * x + c[i]
    return acc


@njit(cache=True, inline="always")
def _rhs(y, rho, phi, cu, cv, cw, eps, cf, cg, ch):
    dy = _polyval(rho, cu)
    drho = 2.0 * rho * y * _polyval(rho, cv)
    dphi = _polyval(rho, cw)
    if eps != 0.0:
        s = math.sin(phi)
        c = math.cos(phi)
        dy += eps * _polyval(rho, cf) * c
        drho += eps * rho * _polyval(rho, cg) * s
        dphi += eps * y * _polyval(rho, ch) * s
    return dy, drho, dphi


@njit(cache=True)
def _run_midpoint(out, cu, cv, cw, eps, cf, cg, ch, dt, fp_tol, max_fp_iter):
    half = 0.5 * dt
    n_steps = out.shape[0] - 1
    y, rho, phi = out[0, 0], out[0, 1], out[0, 2]
    for k in range(n_steps):
        fy, frho, fphi = _rhs(y, rho, phi, cu, cv, cw, eps, cf, cg, ch)
        sy = y + half * fy
        srho = rho + half * frho
        sphi = phi + half * fphi
        converged = False
        prev_d = np.inf
        for it in range(max_fp_iter):
            fy, frho, fphi = _rhs(sy, srho, sphi, cu, cv, cw, eps, cf, cg, ch)
            ny = y + half * fy
            nrho = rho + half * frho
            nphi = phi + half * fphi
            d = max(abs(ny - sy), abs(nrho - srho), abs(nphi - sphi))
            sy, srho, sphi = ny, nrho, nphi
            if not (np.isfinite(sy) and np.isfinite(srho) and np.isfinite(sphi)):
                return _NOT_FINITE, k
            scale = 1.0 + max(abs(sy), max(abs(srho), abs(sphi)))
            if d <= 1e-16 * scale:
                converged = True
                break
            if it > 1 and d >= prev_d:
                # stalled at the rounding floor, or not contracting at all
                converged = d <= fp_tol * scale
                break
            prev_d = d
        if not converged:
            return _NO_CONVERGENCE, k
        y = 2.0 * sy - y
        rho = 2.0 * srho - rho
        phi = 2.0 * sphi - phi
        if not (np.isfinite(y) and np.isfinite(rho) and np.isfinite(phi)):
            return _NOT_FINITE, k
        if rho <= 0.0:
            return _RHO_EXIT, k + 1
        if _polyval(rho, cw) <= 0.0:
            return _W_EXIT, k + 1
        out[k + 1, 0] = y
        out[k + 1, 1] = rho
        out[k + 1, 2] = phi
    return _OK, n_steps


@njit(cache=True)
def _run_rk4(out, cu, cv, cw, eps, cf, cg, ch, dt):
    n_steps = out.shape[0] - 1
    y, rho, phi = out[0, 0], out[0, 1], out[0, 2]
    for k in range(n_steps):
        a1, b1, c1 = _rhs(y, rho, phi, cu, cv, cw, eps, cf, cg, ch)
        a2, b2, c2 = _rhs(
            y + 0.5 * dt * a1, rho + 0.5 * dt * b1, phi + 0.5 * dt * c1, cu, cv, cw, eps, cf, cg, ch
        )
        a3, b3, c3 = _rhs(
            y + 0.5 * dt * a2, rho + 0.5 * dt * b2, phi + 0.5 * dt * c2, cu, cv, cw, eps, cf, cg, ch
        )
        a4, b4, c4 = _rhs(y + dt * a3, rho + dt * b3, phi + dt * c3, cu, cv, cw, eps, cf, cg, ch)
        y += dt * (a1 + 2.0 * a2 + 2.0 * a3 + a4) / 6.0
        rho += dt * (b1 + 2.0 * b2 + 2.0 * b3 + b4) / 6.0
        phi += dt * (c1 + 2.0 * c2 + 2.0 * c3 + c4) / 6.0
        if not (np.isfinite(y) and np.isfinite(rho) and np.isfinite(phi)):
            return _NOT_FINITE, k
        if rho <= 0.0:
            return _RHO_EXIT, k + 1
        if _polyval(rho, cw) <= 0.0:
            return _W_EXIT, k + 1
        out[k + 1, 0] = y
        out[k + 1, 1] = rho
        out[k + 1, 2] = phi
    return _OK, n_steps


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Equispaced samples of one orbit.

    ``states`` has one row (y, rho, phi) per sample; phi is the accumulated
    (unwrapped) angle so that phase differences over long windows are exact.
    """

    times: np.ndarray
    states: np.ndarray
    scheme: str
    dt: float

    @property
    def y(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def rho(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def phi(self) -> np.ndarray:
        return self.states[:, 2]

    def state_at(self, index: int) -> PolarState:
        y, rho, phi = self.states[index]
        return PolarState(y, rho, phi)

    def final_state(self) -> PolarState:
        return self.state_at(-1)

    def __len__(self) -> int:
        return self.states.shape[0]


def _canonical_scheme(scheme: str) -> str:
    key = str(scheme).replace("_", "").replace("-", "").lower()
    if key == "implicitmidpoint":
        return IMPLICIT_MIDPOINT
    if key == "rk4":
        return RK4
    raise InvalidInput(f"unknown scheme {scheme!r}; choose {IMPLICIT_MIDPOINT} or {RK4}")


def _field_arrays(
    field: Union[ToyModel, PerturbedField]
) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float, np.ndarray, np.ndarray, np.ndarray]:
    if isinstance(field, PerturbedField):
        model = field.model
        eps = field.eps
        cf = np.ascontiguousarray(field.f, dtype=float)
        cg = np.ascontiguousarray(field.g, dtype=float)
        ch = np.ascontiguousarray(field.h, dtype=float)
    elif isinstance(field, ToyModel):
        model, eps = field, 0.0
        cf = cg = ch = np.zeros(1)
    else:
        raise InvalidInput(f"expected a ToyModel or PerturbedField, got {type(field).__name__}")
    cu = np.ascontiguousarray(model.u_coeffs(), dtype=float)
    cv = np.ascontiguousarray(model.v_coeffs(), dtype=float)
    cw = np.ascontiguousarray(model.w_coeffs(), dtype=float)
    return cu, cv, cw, eps, cf, cg, ch


def integrate(
    state0: State,
    model: Union[ToyModel, PerturbedField],
    t_end: float,
    dt: float,
    scheme: str = IMPLICIT_MIDPOINT,
    fp_tol: float = 1e-13,
    max_fp_iter: int = 50,
) -> Trajectory:
    """Integrate from ``state0`` with fixed step dt up to t = round(t_end/dt)*dt.

    The default scheme is implicit midpoint with its stage equation solved by
    fixed-point iteration: the iteration runs to the rounding floor and fails
    (``StepFailure``) if the last contraction step is still above
    ``fp_tol`` relative to the state.  ``DomainExit`` reports an accepted
    state with rho <= 0 or W(rho) <= 0; the model is only meaningful where
    rho > 0 and the angular speed stays positive.
    """
    s0 = as_polar(state0)
    if s0.rho <= 0.0:
        raise NonpositiveRho(f"integration needs rho > 0, got {s0.rho!r}")
    dt = float(dt)
    t_end = float(t_end)
    if not (dt > 0.0) or not np.isfinite(dt):
        raise InvalidInput(f"dt must be positive and finite, got {dt!r}")
    if not (t_end > 0.0) or not np.isfinite(t_end):
        raise InvalidInput(f"t_end must be positive and finite, got {t_end!r}")
    n_steps = max(1, int(round(t_end / dt)))
    canonical = _canonical_scheme(scheme)
    cu, cv, cw, eps, cf, cg, ch = _field_arrays(model)

    if float(npoly.polyval(s0.rho, cw)) <= 0.0:
        raise DomainExit(f"W(rho) <= 0 at the initial state rho = {s0.rho!r}")

    out = np.empty((n_steps + 1, 3))
    out[0, 0], out[0, 1], out[0, 2] = s0.y, s0.rho, s0.phi
    if canonical == IMPLICIT_MIDPOINT:
        status, k = _run_midpoint(out, cu, cv, cw, eps, cf, cg, ch, dt, fp_tol, max_fp_iter)
    else:
        status, k = _run_rk4(out, cu, cv, cw, eps, cf, cg, ch, dt)

    if status == _NO_CONVERGENCE:
        raise StepFailure(f"stage iteration did not converge at step {k} (t = {k * dt!r})")
    if status == _NOT_FINITE:
        raise StepFailure(f"state became non-finite at step {k} (t = {k * dt!r})")
    if status == _RHO_EXIT:
        raise DomainExit(f"rho <= 0 at step {k} (t = {k * dt!r})")
    if status == _W_EXIT:
        raise DomainExit(f"W(rho) <= 0 at step {k} (t = {k * dt!r})")
    return Trajectory(times=dt * np.arange(n_steps + 1), states=out, scheme=canonical, dt=dt)


# ---------------------------------------------------------------------------
# section crossings and torus frequencies


@dataclass(frozen=True)
class TorusFrequencies:
    """Measured frequencies of a quasi-periodic orbit around a center.

    ``omega_section`` is 2*pi over the mean first-return time to the section
    {y = 0, rho > rho0}; ``omega_phase`` is the average of dphi/dt = W(rho)
    over the same whole number of oscillation periods; ``amplitude`` is the
    largest |rho - rho0| along the orbit.
    """

    omega_section: float
    omega_phase: float
    amplitude: float


def _hermite(xi: float, v0: float, v1: float, m0: float, m1: float, h: float) -> float:
    """Cubic Hermite value on [0, 1] with endpoint values/slopes (slopes per unit t)."""
    xi2 = xi * xi
    xi3 = xi2 * xi
    return (
        (2.0 * xi3 - 3.0 * xi2 + 1.0) * v0
        + (xi3 - 2.0 * xi2 + xi) * h * m0
        + (-2.0 * xi3 + 3.0 * xi2) * v1
        + (xi3 - xi2) * h * m1
    )


def _crossing_offset(y0: float, y1: float, m0: float, m1: float, h: float) -> float:
    """Root in [0, 1] of the Hermite cubic through (y0, m0), (y1, m1); bisection."""
    if y0 == 0.0:
        return 0.0
    if y1 == 0.0:
        return 1.0
    a, b = 0.0, 1.0
    fa = y0
    for _ in range(60):
        c = 0.5 * (a + b)
        fc = _hermite(c, y0, y1, m0, m1, h)
        if fc == 0.0:
            return c
        if (fa < 0.0) != (fc < 0.0):
            b = c
        else:
            a, fa = c, fc
    return 0.5 * (a + b)


def torus_frequencies(
    model: ToyModel,
    state0: State,
    t_end: float,
    dt: float,
    scheme: str = IMPLICIT_MIDPOINT,
    rho0: Optional[float] = None,
) -> TorusFrequencies:
    """Measure the two frequencies of an orbit circling a center at rho0.

    The orbit is integrated with the given scheme; crossings of the section
    {y = 0, rho > rho0} are located by cubic Hermite interpolation of y
    between samples (field slopes are exact).  Both frequencies are averaged
    between the first and the last crossing, i.e. over a whole number of
    oscillation periods, which cancels the windowing bias.  ``rho0`` defaults
    to the root of u enclosed by the orbit's rho-range.

    Raises ``NotACenterOrbit`` when fewer than two usable crossings exist
    (e.g. started exactly on the cycle) or no enclosed root is found.
    """
    traj = integrate(state0, model, t_end, dt, scheme=scheme)
    y = traj.y
    rho = traj.rho
    phi = traj.phi

    neg = y < 0.0
    raw = np.nonzero(neg[:-1] != neg[1:])[0]
    if raw.size < 2:
        raise NotACenterOrbit(
            f"only {raw.size} section crossing(s) in t <= {t_end!r}; orbit is not recurrent"
        )

    rho_min, rho_max = float(rho.min()), float(rho.max())
    if rho0 is None:
        lo = max(1e-9, 0.25 * rho_min)
        hi = 4.0 * rho_max
        enclosed = [r for r in find_equilibria(model, (lo, hi)) if rho_min < r < rho_max]
        if not enclosed:
            raise NotACenterOrbit(
                f"no root of u inside the orbit's rho-range [{rho_min!r}, {rho_max!r}]"
            )
        mid = 0.5 * (rho_min + rho_max)
        rho0 = min(enclosed, key=lambda r: abs(r - mid))
    rho0 = float(rho0)

    side = 0.5 * (rho[raw] + rho[raw + 1]) > rho0
    idx = raw[side]
    if idx.size < 2:
        raise NotACenterOrbit(
            f"only {idx.size} crossing(s) of the section {{y = 0, rho > {rho0!r}}}"
        )

    uc = model.u_coeffs()
    wc = model.w_coeffs()
    times = np.empty(idx.size)
    phases = np.empty(idx.size)
    for j, i in enumerate(idx):
        m0, m1 = float(npoly.polyval(rho[i], uc)), float(npoly.polyval(rho[i + 1], uc))
        xi = _crossing_offset(float(y[i]), float(y[i + 1]), m0, m1, traj.dt)
        times[j] = traj.times[i] + xi * traj.dt
        w0, w1 = float(npoly.polyval(rho[i], wc)), float(npoly.polyval(rho[i + 1], wc))
        phases[j] = _hermite(xi, float(phi[i]), float(phi[i + 1]), w0, w1, traj.dt)

    window = times[-1] - times[0]
    if window <= 0.0:
        raise NotACenterOrbit("section crossings do not span a positive time window")
    omega_section = TWO_PI * (idx.size - 1) / window
    omega_phase = (phases[-1] - phases[0]) / window
    amplitude = max(rho_max - rho0, rho0 - rho_min)
    return TorusFrequencies(
        omega_section=float(omega_section),
        omega_phase=float(omega_phase),
        amplitude=float(amplitude),
    )


# ---------------------------------------------------------------------------
# normal-form residuals near a cycle


def floquet_residual(
    model: ToyModel, rho0: float, radius: float, n_angles: int = 64
) -> Tuple[float, float]:
    """Deviation of the field from its rotating-frame normal form near the
    cycle rho = rho0, probed on a circle of the given radius in X = (y, rho - rho0).

    Returns (r1, r2): r1 = max |dphi/dt - W(rho0)|, first order in radius;
    r2 = max ||dX/dt - Lambda X||_2 with Lambda = [[0, u'(rho0)],
    [2 rho0 v(rho0), 0]], second order in radius.
    """
    rho0 = float(rho0)
    radius = float(radius)
    if rho0 <= 0.0:
        raise NonpositiveRho(f"rho0 must be positive, got {rho0!r}")
    if radius < 0.0 or radius >= rho0:
        raise InvalidInput(f"radius must satisfy 0 <= radius < rho0, got {radius!r}")
    uc, vc, wc = model.u_coeffs(), model.v_coeffs(), model.w_coeffs()
    duc = npoly.polyder(uc) if uc.size > 1 else np.zeros(1)
    up = float(npoly.polyval(rho0, duc))
    vv = float(npoly.polyval(rho0, vc))
    w0 = float(npoly.polyval(rho0, wc))

    theta = TWO_PI * np.arange(n_angles) / n_angles
    ys = radius * np.cos(theta)
    deltas = radius * np.sin(theta)
    rhos = rho0 + deltas

    dys = npoly.polyval(rhos, uc)
    drhos = 2.0 * rhos * ys * npoly.polyval(rhos, vc)
    dphis = npoly.polyval(rhos, wc)

    r1 = float(np.max(np.abs(dphis - w0)))
    ex = dys - up * deltas
    ey = drhos - 2.0 * rho0 * vv * ys
    r2 = float(np.max(np.hypot(ex, ey)))
    return (r1, r2)
