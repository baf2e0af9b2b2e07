"""Planar-oscillator model with one rotational phase and a reversing symmetry.

The system lives on (y, z) with y real and z complex,

    dy/dt   = u(|z|^2),
    dz/dt   = i z W(|z|^2) + z y v(|z|^2),

or in polar form z = sqrt(rho) * exp(i*phi),

    dy/dt   = u(rho),
    drho/dt = 2 rho y v(rho),
    dphi/dt = W(rho),

and is reversible with respect to the involution G: (y, z) -> (-y, conj(z)),
in polar form (y, rho, phi) -> (-y, rho, -phi).  The coefficient functions
u, v, W are polynomials in rho whose coefficients depend affinely on an
external parameter vector mu.

The module provides the model class with JSON (de)serialization, state
types and conversions, field evaluation, the conserved quantity
E = y^2 - int u/(eta v) d eta, equilibrium location and linear
classification, residual diagnostics for the rotating-frame normal form,
an exactly reversible trigonometric perturbation family, and a parameter
sweep.  Time integration lives in ``dynamics``.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.integrate import quad

from .errors import (
    DegenerateEquilibrium,
    InvalidInput,
    InvalidModel,
    NonpositiveRho,
    NotAnEquilibrium,
    SingularIntegrand,
)

__all__ = [
    "SADDLE",
    "CENTER",
    "MuAffinePolynomial",
    "ToyModel",
    "PolarState",
    "CartesianState",
    "State",
    "polar_to_cartesian",
    "cartesian_to_polar",
    "as_polar",
    "eval_field",
    "apply_involution",
    "reversibility_residual",
    "first_integral",
    "find_equilibria",
    "equilibrium_at_origin",
    "EquilibriumInfo",
    "classify_equilibrium",
    "PerturbedField",
    "perturb",
    "SweepRecord",
    "sweep",
    "default_model",
    "model_to_dict",
    "model_from_dict",
    "save_model",
    "load_model",
]

TWO_PI = 2.0 * math.pi

SADDLE = "Saddle"
CENTER = "Center"


# ---------------------------------------------------------------------------
# model


@dataclass(frozen=True)
class MuAffinePolynomial:
    """Polynomial in rho whose coefficients are affine in the parameter mu.

    ``rows[i]`` describes the coefficient of rho**i as
    ``(const, c_1, ..., c_s)``: the coefficient evaluates to
    ``const + c_1*mu_1 + ... + c_s*mu_s``.  All rows must have equal
    length 1 + s.  An empty ``rows`` is the zero polynomial.
    """

    rows: Tuple[Tuple[float, ...], ...]

    def __post_init__(self) -> None:
        try:
            rows = tuple(tuple(float(c) for c in row) for row in self.rows)
        except (TypeError, ValueError) as exc:
            raise InvalidModel(f"coefficient table must be numeric: {exc}") from exc
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise InvalidModel(f"coefficient rows must have equal length, got {sorted(widths)}")
        if rows and min(widths) < 1:
            raise InvalidModel("coefficient rows need at least the constant entry")
        object.__setattr__(self, "rows", rows)

    @property
    def n_params(self) -> Optional[int]:
        """Number of mu components the table expects, None for empty tables."""
        if not self.rows:
            return None
        return len(self.rows[0]) - 1

    def coefficients(self, mu: Sequence[float]) -> np.ndarray:
        """Concrete rho-coefficients at mu, ascending degree."""
        if not self.rows:
            return np.zeros(1)
        table = np.asarray(self.rows, dtype=float)
        m = np.asarray(mu, dtype=float)
        if table.shape[1] != 1 + m.size:
            raise InvalidModel(
                f"coefficient rows have width {table.shape[1]}, expected {1 + m.size} for mu of length {m.size}"
            )
        return table[:, 0] + table[:, 1:] @ m


@dataclass(frozen=True)
class ToyModel:
    """Concrete model: the tables for u, v, w plus the parameter value mu."""

    u: MuAffinePolynomial
    v: MuAffinePolynomial
    w: MuAffinePolynomial
    mu: Tuple[float, ...]

    def __post_init__(self) -> None:
        try:
            mu = tuple(float(c) for c in self.mu)
        except (TypeError, ValueError) as exc:
            raise InvalidModel(f"mu must be a sequence of numbers: {exc}") from exc
        if len(mu) < 1:
            raise InvalidModel("mu must have at least one component")
        object.__setattr__(self, "mu", mu)
        for name in ("u", "v", "w"):
            poly = getattr(self, name)
            if not isinstance(poly, MuAffinePolynomial):
                raise InvalidModel(f"{name} must be a MuAffinePolynomial, got {type(poly).__name__}")
            if poly.n_params is not None and poly.n_params != len(mu):
                raise InvalidModel(
                    f"{name} expects mu of length {poly.n_params}, model has {len(mu)}"
                )

    def with_mu(self, mu: Sequence[float]) -> "ToyModel":
        return ToyModel(u=self.u, v=self.v, w=self.w, mu=tuple(float(c) for c in mu))

    def u_coeffs(self) -> np.ndarray:
        return self.u.coefficients(self.mu)

    def v_coeffs(self) -> np.ndarray:
        return self.v.coefficients(self.mu)

    def w_coeffs(self) -> np.ndarray:
        return self.w.coefficients(self.mu)


def default_model() -> ToyModel:
    """The reference family u = mu_1 - rho, v = 1, w = 1 + rho at mu_1 = 0.5.

    u has the single positive root rho0 = mu_1; there u' * v = -1 < 0, so the
    equilibrium of the (y, rho) subsystem is a center with exponents +/- i
    and cycle frequency W(rho0) = 1 + mu_1.
    """
    return ToyModel(
        u=MuAffinePolynomial(((0.0, 1.0), (-1.0, 0.0))),
        v=MuAffinePolynomial(((1.0, 0.0),)),
        w=MuAffinePolynomial(((1.0, 0.0), (1.0, 0.0))),
        mu=(0.5,),
    )


# ---------------------------------------------------------------------------
# states


@dataclass(frozen=True)
class PolarState:
    """State (y, rho, phi); rho >= 0, phi stored in [0, 2*pi)."""

    y: float
    rho: float
    phi: float

    def __post_init__(self) -> None:
        y, rho, phi = float(self.y), float(self.rho), float(self.phi)
        if not (rho >= 0.0):
            raise NonpositiveRho(f"rho must be nonnegative, got {rho!r}")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "phi", phi % TWO_PI)


@dataclass(frozen=True)
class CartesianState:
    """State (y, z) with z complex; rho = |z|^2."""

    y: float
    z: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", complex(self.z))


State = Union[PolarState, CartesianState]


def polar_to_cartesian(state: PolarState) -> CartesianState:
    r = math.sqrt(state.rho)
    return CartesianState(state.y, complex(r * math.cos(state.phi), r * math.sin(state.phi)))


def cartesian_to_polar(state: CartesianState) -> PolarState:
    z = state.z
    return PolarState(state.y, z.real * z.real + z.imag * z.imag, math.atan2(z.imag, z.real))


def as_polar(state: State) -> PolarState:
    if isinstance(state, PolarState):
        return state
    if isinstance(state, CartesianState):
        return cartesian_to_polar(state)
    raise InvalidInput(f"expected a PolarState or CartesianState, got {type(state).__name__}")


# ---------------------------------------------------------------------------
# field and symmetry


def eval_field(
    state: State, model: ToyModel
) -> Union[Tuple[float, float, float], Tuple[float, complex]]:
    """Vector field at ``state``, in the state's own coordinates.

    Polar input yields (dy, drho, dphi) = (u(rho), 2*rho*y*v(rho), W(rho));
    cartesian input yields (dy, dz) with
    dz = i*z*W(|z|^2) + z*y*v(|z|^2).  The two forms agree under
    z = sqrt(rho)*exp(i*phi).
    """
    if isinstance(state, PolarState):
        rho = state.rho
        uc, vc, wc = model.u_coeffs(), model.v_coeffs(), model.w_coeffs()
        return (
            float(npoly.polyval(rho, uc)),
            2.0 * rho * state.y * float(npoly.polyval(rho, vc)),
            float(npoly.polyval(rho, wc)),
        )
    if isinstance(state, CartesianState):
        z = state.z
        rho = z.real * z.real + z.imag * z.imag
        uc, vc, wc = model.u_coeffs(), model.v_coeffs(), model.w_coeffs()
        wval = float(npoly.polyval(rho, wc))
        vval = float(npoly.polyval(rho, vc))
        return (float(npoly.polyval(rho, uc)), 1j * z * wval + z * state.y * vval)
    raise InvalidInput(f"expected a PolarState or CartesianState, got {type(state).__name__}")


def apply_involution(state: State) -> State:
    """The reversing involution G: (y, z) -> (-y, conj(z)), polar (-y, rho, -phi)."""
    if isinstance(state, PolarState):
        return PolarState(-state.y, state.rho, -state.phi)
    if isinstance(state, CartesianState):
        return CartesianState(-state.y, state.z.conjugate())
    raise InvalidInput(f"expected a PolarState or CartesianState, got {type(state).__name__}")


FieldLike = Union[ToyModel, "PerturbedField", Callable[[float, float, float], Tuple[float, float, float]]]


def _polar_rhs(field: FieldLike) -> Callable[[float, float, float], Tuple[float, float, float]]:
    """Normalize a model, perturbed field, or raw callable to an (y, rho, phi) rhs."""
    if isinstance(field, ToyModel):
        uc, vc, wc = field.u_coeffs(), field.v_coeffs(), field.w_coeffs()

        def rhs(y: float, rho: float, phi: float) -> Tuple[float, float, float]:
            return (
                float(npoly.polyval(rho, uc)),
                2.0 * rho * y * float(npoly.polyval(rho, vc)),
                float(npoly.polyval(rho, wc)),
            )

        return rhs
    if isinstance(field, PerturbedField):
        return field.rhs
    if callable(field):
        return field
    raise InvalidInput(f"expected a model, perturbed field, or callable, got {type(field).__name__}")


def reversibility_residual(field: FieldLike, samples: Iterable[State]) -> float:
    """Largest violation of G-reversibility over the samples.

    A field F is reversible when DG * F(G(w)) = -F(w) with DG = diag(-1, 1, -1),
    so the residual at w is the max-norm of DG * F(G(w)) + F(w).  The involution
    is applied to the raw coordinates (phi -> -phi without wrapping), which keeps
    the residual of an exactly reversible field at zero in floating point.
    Returns 0.0 for an empty sample list.
    """
    rhs = _polar_rhs(field)
    worst = 0.0
    for sample in samples:
        if isinstance(sample, (PolarState, CartesianState)):
            s = as_polar(sample)
            y, rho, phi = s.y, s.rho, s.phi
        else:
            y, rho, phi = (float(c) for c in sample)
        fy, frho, fphi = rhs(y, rho, phi)
        gy, grho, gphi = rhs(-y, rho, -phi)
        worst = max(
            worst,
            abs(-gy + fy),
            abs(grho + frho),
            abs(-gphi + fphi),
        )
    return worst


# ---------------------------------------------------------------------------
# first integral


def first_integral(state: State, model: ToyModel, rho_ref: float = 1.0) -> float:
    """Conserved quantity E = y^2 - int_{rho_ref}^{rho} u(eta)/(eta*v(eta)) d eta.

    The base point only shifts E by a constant; differences and conservation
    along orbits are the meaningful quantities.  Quadrature is adaptive with
    relative tolerance 1e-12.

    Raises ``SingularIntegrand`` when v has a root on the integration path and
    ``NonpositiveRho`` when rho or rho_ref is not positive.
    """
    s = as_polar(state)
    rho = s.rho
    if rho <= 0.0:
        raise NonpositiveRho(f"first integral needs rho > 0, got {rho!r}")
    rho_ref = float(rho_ref)
    if rho_ref <= 0.0:
        raise NonpositiveRho(f"rho_ref must be positive, got {rho_ref!r}")

    uc, vc = model.u_coeffs(), model.v_coeffs()
    lo, hi = (rho, rho_ref) if rho < rho_ref else (rho_ref, rho)
    _reject_v_roots(vc, lo, hi)

    def integrand(eta: float) -> float:
        return float(npoly.polyval(eta, uc)) / (eta * float(npoly.polyval(eta, vc)))

    q, _ = quad(integrand, rho_ref, rho, epsabs=1e-14, epsrel=1e-12, limit=200)
    return s.y * s.y - q


def _reject_v_roots(vc: np.ndarray, lo: float, hi: float) -> None:
    """Raise SingularIntegrand when v vanishes somewhere on [lo, hi]."""
    trimmed = np.trim_zeros(np.atleast_1d(vc), "b")
    if trimmed.size == 0:
        raise SingularIntegrand("v is identically zero")
    if trimmed.size == 1:
        return
    pad = 1e-12 * max(1.0, hi)
    for root in npoly.polyroots(trimmed):
        if abs(root.imag) <= 1e-9 and lo - pad <= root.real <= hi + pad:
            raise SingularIntegrand(
                f"v has a root at rho = {root.real!r} inside the integration interval [{lo!r}, {hi!r}]"
            )


# ---------------------------------------------------------------------------
# equilibria of the (y, rho) subsystem on Fix G = {y = 0}


def find_equilibria(
    model: ToyModel, rho_interval: Tuple[float, float], n_scan: int = 2048
) -> List[float]:
    """Simple roots of u in [lo, hi], lo > 0, sorted ascending.

    Roots are bracketed by sign changes of u on a uniform scan grid, narrowed
    by bisection, and polished by Newton steps to 1e-13.  Tangencies without a
    sign change (double roots) are not reported.
    """
    lo, hi = (float(rho_interval[0]), float(rho_interval[1]))
    if not (0.0 < lo < hi):
        raise InvalidInput(f"need 0 < lo < hi, got [{lo!r}, {hi!r}]")
    uc = model.u_coeffs()
    duc = npoly.polyder(uc) if uc.size > 1 else np.zeros(1)

    xs = np.linspace(lo, hi, n_scan + 1)
    vals = npoly.polyval(xs, uc)

    roots: List[float] = []
    for i in range(n_scan):
        a, b, fa, fb = xs[i], xs[i + 1], vals[i], vals[i + 1]
        if fa == 0.0:
            roots.append(float(a))
            continue
        if fa * fb >= 0.0:
            continue
        for _ in range(80):
            c = 0.5 * (a + b)
            fc = float(npoly.polyval(c, uc))
            if fc == 0.0:
                a = b = c
                break
            if fa * fc < 0.0:
                b, fb = c, fc
            else:
                a, fa = c, fc
            if b - a <= 1e-15 * max(1.0, abs(a)):
                break
        x = 0.5 * (a + b)
        for _ in range(8):
            fx = float(npoly.polyval(x, uc))
            dfx = float(npoly.polyval(x, duc))
            if dfx == 0.0:
                break
            step = fx / dfx
            x -= step
            if abs(step) <= 1e-13 * max(1.0, abs(x)):
                break
        roots.append(float(min(max(x, lo), hi)))
    if vals[-1] == 0.0:
        roots.append(float(xs[-1]))

    roots.sort()
    deduped: List[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > 1e-9 * max(1.0, abs(r)):
            deduped.append(r)
    return deduped


def equilibrium_at_origin(model: ToyModel, atol: float = 1e-12) -> bool:
    """True when u(0) vanishes within tolerance: the system then has exactly
    one equilibrium on the symmetry axis {y = 0, z = 0}."""
    return abs(float(npoly.polyval(0.0, model.u_coeffs()))) < atol


@dataclass(frozen=True, eq=False)
class EquilibriumInfo:
    """Linearization data of an equilibrium (y, rho) = (0, rho0) of the planar
    subsystem, equivalently of the circular cycle rho = rho0 of the full flow.

    ``floquet_matrix`` is [[0, u'(rho0)], [2*rho0*v(rho0), 0]]; its eigenvalue
    pair ``exponents`` satisfies chi^2 = 2*rho0*u'(rho0)*v(rho0) and is real
    for a Saddle (u'*v > 0), purely imaginary for a Center (u'*v < 0).
    ``cycle_frequency`` is the angular speed W(rho0) along the cycle.
    """

    rho0: float
    kind: str
    floquet_matrix: np.ndarray
    exponents: Tuple[complex, complex]
    cycle_frequency: float


def classify_equilibrium(
    model: ToyModel,
    rho0: float,
    atol: float = 1e-9,
    degenerate_tol: float = 1e-12,
) -> EquilibriumInfo:
    """Classify the equilibrium at rho0 > 0 from exact polynomial derivatives.

    Raises ``NotAnEquilibrium`` when |u(rho0)| exceeds ``atol`` and
    ``DegenerateEquilibrium`` when u'(rho0)*v(rho0) vanishes within
    ``degenerate_tol`` (only the generic signs are classified).
    """
    rho0 = float(rho0)
    if rho0 <= 0.0:
        raise NonpositiveRho(f"rho0 must be positive, got {rho0!r}")
    uc, vc, wc = model.u_coeffs(), model.v_coeffs(), model.w_coeffs()
    ur = float(npoly.polyval(rho0, uc))
    if abs(ur) >= atol:
        raise NotAnEquilibrium(f"|u(rho0)| = {abs(ur)!r} exceeds tolerance {atol!r}")
    duc = npoly.polyder(uc) if uc.size > 1 else np.zeros(1)
    up = float(npoly.polyval(rho0, duc))
    vv = float(npoly.polyval(rho0, vc))
    if abs(up * vv) <= degenerate_tol:
        raise DegenerateEquilibrium(
            f"u'(rho0)*v(rho0) = {up * vv!r} is zero within tolerance; classification undefined"
        )
    chi_sq = 2.0 * rho0 * up * vv
    if chi_sq > 0.0:
        chi = math.sqrt(chi_sq)
        kind, exponents = SADDLE, (complex(chi, 0.0), complex(-chi, 0.0))
    else:
        chi = math.sqrt(-chi_sq)
        kind, exponents = CENTER, (complex(0.0, chi), complex(0.0, -chi))
    matrix = np.array([[0.0, up], [2.0 * rho0 * vv, 0.0]])
    return EquilibriumInfo(
        rho0=rho0,
        kind=kind,
        floquet_matrix=matrix,
        exponents=exponents,
        cycle_frequency=float(npoly.polyval(rho0, wc)),
    )


# ---------------------------------------------------------------------------
# reversible perturbation


@dataclass(frozen=True)
class PerturbedField:
    """The model field plus the exactly reversible trigonometric family

        dy   += eps * f(rho) * cos(phi)
        drho += eps * rho * g(rho) * sin(phi)
        dphi += eps * y * h(rho) * sin(phi)

    Each term has the parity required by G (phi -> -phi flips sin, fixes cos,
    y flips sign), so the perturbed field is reversible for every eps, and the
    rho factor keeps {rho = 0} invariant.  f, g, h are plain rho-polynomials,
    ascending coefficients.
    """

    model: ToyModel
    eps: float
    f: Tuple[float, ...]
    g: Tuple[float, ...]
    h: Tuple[float, ...]

    def rhs(self, y: float, rho: float, phi: float) -> Tuple[float, float, float]:
        m = self.model
        dy = float(npoly.polyval(rho, m.u_coeffs()))
        drho = 2.0 * rho * y * float(npoly.polyval(rho, m.v_coeffs()))
        dphi = float(npoly.polyval(rho, m.w_coeffs()))
        if self.eps != 0.0:
            sin_phi, cos_phi = math.sin(phi), math.cos(phi)
            dy += self.eps * float(npoly.polyval(rho, np.asarray(self.f))) * cos_phi
            drho += self.eps * rho * float(npoly.polyval(rho, np.asarray(self.g))) * sin_phi
            dphi += self.eps * y * float(npoly.polyval(rho, np.asarray(self.h))) * sin_phi
        return (dy, drho, dphi)


def _as_poly_tuple(p: Union[float, Sequence[float]], name: str) -> Tuple[float, ...]:
    if isinstance(p, (int, float)) and not isinstance(p, bool):
        return (float(p),)
    try:
        coeffs = tuple(float(c) for c in p)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"{name} must be a number or coefficient sequence: {exc}") from exc
    return coeffs if coeffs else (0.0,)


def perturb(
    model: ToyModel,
    eps: float,
    f: Union[float, Sequence[float]] = 1.0,
    g: Union[float, Sequence[float]] = 1.0,
    h: Union[float, Sequence[float]] = 1.0,
) -> PerturbedField:
    """Attach the reversible trigonometric perturbation to a model.

    f, g, h may be scalars (constant polynomials) or ascending coefficient
    sequences.  eps = 0 reproduces the unperturbed field exactly.
    """
    return PerturbedField(
        model=model,
        eps=float(eps),
        f=_as_poly_tuple(f, "f"),
        g=_as_poly_tuple(g, "g"),
        h=_as_poly_tuple(h, "h"),
    )


# ---------------------------------------------------------------------------
# parameter sweep


@dataclass(frozen=True, eq=False)
class SweepRecord:
    """Equilibrium inventory at one parameter value.

    ``equilibria`` holds classified roots of u in the scanned interval;
    ``degenerate_roots`` lists roots where u'*v vanished (no classification);
    ``origin_equilibrium`` flags u(0) = 0, the codimension-1 surface where an
    equilibrium sits at the origin of the z-plane.
    """

    mu: Tuple[float, ...]
    equilibria: Tuple[EquilibriumInfo, ...]
    degenerate_roots: Tuple[float, ...]
    origin_equilibrium: bool


ModelFamily = Union[ToyModel, Callable[[Tuple[float, ...]], ToyModel]]


def _sweep_point(
    family: ModelFamily, mu: Tuple[float, ...], rho_interval: Tuple[float, float], n_scan: int
) -> SweepRecord:
    at_mu = family.with_mu(mu) if isinstance(family, ToyModel) else family(mu)
    infos: List[EquilibriumInfo] = []
    degenerate: List[float] = []
    for rho0 in find_equilibria(at_mu, rho_interval, n_scan=n_scan):
        try:
            infos.append(classify_equilibrium(at_mu, rho0))
        except DegenerateEquilibrium:
            degenerate.append(rho0)
    return SweepRecord(
        mu=mu,
        equilibria=tuple(infos),
        degenerate_roots=tuple(degenerate),
        origin_equilibrium=equilibrium_at_origin(at_mu),
    )


def _normalize_mu(point: Union[float, Sequence[float]]) -> Tuple[float, ...]:
    if isinstance(point, (int, float)) and not isinstance(point, bool):
        return (float(point),)
    return tuple(float(c) for c in point)


def sweep(
    model_family: ModelFamily,
    mu_grid: Iterable[Union[float, Sequence[float]]],
    rho_interval: Tuple[float, float],
    jobs: int = 1,
    n_scan: int = 2048,
) -> List[SweepRecord]:
    """Equilibrium inventory of ``model_family`` over a grid of mu values.

    The family is either a template ``ToyModel`` (re-parameterized through
    ``with_mu``, so coefficients stay affine in mu) or a callable
    mu -> ToyModel for families outside the affine class.  Records come back
    in grid order regardless of scheduling; ``jobs > 1`` distributes points
    over a process pool (the family must then be picklable: a model or a
    module-level function).  An empty grid yields [].
    """
    points = [_normalize_mu(p) for p in mu_grid]
    if not points:
        return []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(
                pool.map(
                    _sweep_point,
                    [model_family] * len(points),
                    points,
                    [rho_interval] * len(points),
                    [n_scan] * len(points),
                )
            )
    return [_sweep_point(model_family, p, rho_interval, n_scan) for p in points]


# ---------------------------------------------------------------------------
# model files


def model_to_dict(model: ToyModel) -> dict:
    return {
        "s": len(model.mu),
        "mu": list(model.mu),
        "u": [list(row) for row in model.u.rows],
        "v": [list(row) for row in model.v.rows],
        "w": [list(row) for row in model.w.rows],
    }


def model_from_dict(data: dict) -> ToyModel:
    """Build a model from the JSON shape
    {"s": int, "mu": [..], "u": [[const, mu-coefs..] per degree], "v": .., "w": ..}.

    Raises ``InvalidModel`` on missing keys, wrong shapes, or s != len(mu).
    """
    if not isinstance(data, dict):
        raise InvalidModel(f"model data must be an object, got {type(data).__name__}")
    missing = [key for key in ("s", "mu", "u", "v", "w") if key not in data]
    if missing:
        raise InvalidModel(f"model data is missing keys: {', '.join(missing)}")
    s = data["s"]
    if not isinstance(s, int) or isinstance(s, bool) or s < 1:
        raise InvalidModel(f"s must be an integer >= 1, got {s!r}")
    mu = data["mu"]
    if not isinstance(mu, (list, tuple)) or len(mu) != s:
        raise InvalidModel(f"mu must be a list of length s = {s}, got {mu!r}")
    tables = {}
    for name in ("u", "v", "w"):
        table = data[name]
        if not isinstance(table, (list, tuple)) or not all(
            isinstance(row, (list, tuple)) for row in table
        ):
            raise InvalidModel(f"{name} must be a list of coefficient rows, got {table!r}")
        if any(len(row) != 1 + s for row in table):
            raise InvalidModel(f"every row of {name} must have 1 + s = {1 + s} entries")
        tables[name] = MuAffinePolynomial(tuple(tuple(row) for row in table))
    return ToyModel(u=tables["u"], v=tables["v"], w=tables["w"], mu=tuple(mu))


def load_model(path: str) -> ToyModel:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidModel(f"cannot read model file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidModel(f"model file {path!r} is not valid JSON: {exc}") from exc
    return model_from_dict(data)


def save_model(model: ToyModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=2)
        fh.write("\n")
