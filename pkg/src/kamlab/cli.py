"""``kam`` command line tool.

Three subcommand groups mirror the libraries:

* ``kam context``: integer bookkeeping of invariant-torus contexts
  (profile, destroy, excite, context2).
* ``kam dioph``: truncated small-divisor checks (check, quality, measure).
* ``kam toy``: the planar-phase model laboratory (simulate, equilibria,
  classify, torus, sweep, perturb).

Reports go to stdout as single-line JSON; error diagnostics go to stderr.
Exit codes: 0 success, 1 usage or input parsing, 2 structural infeasibility,
3 a well-posed check that failed, 4 numerical failure.  All floats are
serialized with full precision (shortest round-trip in JSON, %.17g in CSV);
CSV output uses '.' as the decimal separator and '\\n' line endings on every
platform, and seeded invocations are byte-identical across reruns.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import product
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.interpolate import CubicSpline

from .contexts import (
    AnyContext,
    GeneralDissipative,
    HamiltonianIsotropic,
    Reversible,
    VolumePreserving,
    context2_excitation_diagnostics,
    destroy_resonant,
    excite_modes,
    profile,
)
from .diophantine import (
    CheckResult,
    DiophantineParams,
    check_affine_diophantine,
    check_diophantine,
    measure_estimate,
    min_quality,
)
from .dynamics import IMPLICIT_MIDPOINT, Trajectory, integrate, torus_frequencies
from .errors import FeasibilityError, InvalidInput, KamError, NumericalError
from .toymodel import (
    EquilibriumInfo,
    PolarState,
    ToyModel,
    classify_equilibrium,
    find_equilibria,
    load_model,
    perturb,
    reversibility_residual,
    sweep,
    _reject_v_roots,
)

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors by default; the CLI contract
    # reserves 2 for infeasibility and uses 1 for usage/parse problems
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _floats(text: str, flag: str) -> Tuple[float, ...]:
    try:
        return tuple(float(part) for part in str(text).split(",") if part != "")
    except ValueError as exc:
        raise InvalidInput(f"{flag} expects comma-separated numbers, got {text!r}") from exc


def _fmt(x: float) -> str:
    return "%.17g" % x


def _emit(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False))


def _perr(exc: BaseException) -> None:
    print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)


# ---------------------------------------------------------------------------
# context group


def _context_from_args(args: argparse.Namespace) -> AnyContext:
    def need(name: str) -> int:
        value = getattr(args, name)
        if value is None:
            raise InvalidInput(f"--{name} is required for this context kind")
        return value

    if args.hamiltonian:
        return HamiltonianIsotropic(n=need("n"), p=need("p"), s=need("s"))
    if args.volume_preserving:
        return VolumePreserving(n=need("n"), p=need("p"), s=need("s"))
    if args.dissipative:
        return GeneralDissipative(n=need("n"), p=need("p"), s=need("s"))
    if args.reversible:
        return Reversible(n=need("n"), a=need("a"), b=need("b"), s=need("s"))
    raise InvalidInput(
        "choose a context kind: --hamiltonian, --volume-preserving, --dissipative, or --reversible"
    )


def _ctx_dict(ctx: AnyContext) -> dict:
    out = {"kind": type(ctx).__name__}
    for name in ("n", "p", "a", "b", "s"):
        if hasattr(ctx, name):
            out[name] = getattr(ctx, name)
    return out


def _profile_dict(ctx: AnyContext) -> dict:
    prof = profile(ctx)
    out = {
        "context": _ctx_dict(ctx),
        "dim_m": prof.dim_m,
        "m": prof.m,
        "s_lower_bound": prof.s_lower_bound,
        "c": prof.c,
        "c_minus_s": prof.c_minus_s,
        "g": prof.g,
        "zero_floquet_multiplicity": prof.zero_floquet_multiplicity,
        "spectrum_shape": prof.spectrum_shape,
    }
    if prof.reversible_class is not None:
        out["class"] = prof.reversible_class
    return out


def _cmd_context_profile(args: argparse.Namespace) -> int:
    _emit(_profile_dict(_context_from_args(args)))
    return 0


def _transition_dict(result) -> dict:
    return {
        "source": _ctx_dict(result.source),
        "target": _ctx_dict(result.target),
        "r": result.r,
        "family_smoothness": result.family_smoothness,
        "note": result.note,
    }


def _cmd_context_destroy(args: argparse.Namespace) -> int:
    _emit(_transition_dict(destroy_resonant(_context_from_args(args), args.r)))
    return 0


def _cmd_context_excite(args: argparse.Namespace) -> int:
    _emit(_transition_dict(excite_modes(_context_from_args(args), args.r)))
    return 0


def _cmd_context_context2(args: argparse.Namespace) -> int:
    ctx = Reversible(n=args.n, a=args.a, b=args.b, s=args.s)
    report = context2_excitation_diagnostics(ctx, args.r)
    _emit(
        {
            "source": _ctx_dict(ctx),
            "r": report.r,
            "kappa1": report.kappa1,
            "kappa2": report.kappa2,
            "defect": report.defect,
            "d": report.d,
            "c_prime_minus_s": report.c_prime_minus_s,
            "resulting_class": report.resulting_class,
        }
    )
    return 0


# ---------------------------------------------------------------------------
# dioph group


def _check_dict(result: CheckResult) -> dict:
    return {
        "passed": result.passed,
        "min_product": result.min_product,
        "witness_k": ",".join(str(c) for c in result.witness_k) if result.witness_k else None,
        "witness_l": ",".join(str(c) for c in result.witness_l)
        if result.witness_l is not None
        else None,
        "gamma": result.gamma,
        "tau": result.tau,
        "k_max": result.k_max,
    }


def _cmd_dioph_check(args: argparse.Namespace) -> int:
    omega = _floats(args.omega, "--omega")
    params = DiophantineParams(gamma=args.gamma, tau=args.tau, k_max=args.kmax)
    if args.beta is not None:
        result = check_affine_diophantine(omega, _floats(args.beta, "--beta"), params)
    else:
        result = check_diophantine(omega, params)
    _emit(_check_dict(result))
    return 0 if result.passed else 3


def _cmd_dioph_quality(args: argparse.Namespace) -> int:
    omega = _floats(args.omega, "--omega")
    value = min_quality(omega, args.tau, args.kmax)
    _emit({"min_quality": value, "omega": list(omega), "tau": args.tau, "k_max": args.kmax})
    return 0


def _cmd_dioph_measure(args: argparse.Namespace) -> int:
    flat = _floats(args.box, "--box")
    if len(flat) % 2 != 0 or not flat:
        raise InvalidInput(f"--box expects lo,hi pairs, got {len(flat)} numbers")
    box = [(flat[i], flat[i + 1]) for i in range(0, len(flat), 2)]
    params = DiophantineParams(gamma=args.gamma, tau=args.tau, k_max=args.kmax)
    fraction = measure_estimate(box, params, n_samples=args.samples, seed=args.seed)
    _emit(
        {
            "fraction": fraction,
            "n_samples": args.samples,
            "seed": args.seed,
            "gamma": args.gamma,
            "tau": args.tau,
            "k_max": args.kmax,
            "box": [list(pair) for pair in box],
        }
    )
    return 0


# ---------------------------------------------------------------------------
# toy group


def _energy_series(model: ToyModel, traj: Trajectory, rho_ref: float = 1.0) -> np.ndarray:
    """E = y^2 - Q(rho) along a trajectory, with Q evaluated through the
    antiderivative of a dense spline of the integrand (one quadrature for the
    whole column instead of one per sample)."""
    rho = traj.rho
    uc, vc = model.u_coeffs(), model.v_coeffs()
    lo = min(float(rho.min()), rho_ref)
    hi = max(float(rho.max()), rho_ref)
    _reject_v_roots(vc, lo, hi)
    pad = max(1e-6, 1e-12 * hi)
    grid = np.linspace(max(0.5 * lo, lo - pad), hi + pad, 4097)
    vals = npoly.polyval(grid, uc) / (grid * npoly.polyval(grid, vc))
    # a v-root inside the pad margin would poison the cumulative antiderivative;
    # the pad pieces cancel in Q differences, so their values are irrelevant
    vals = np.nan_to_num(vals, nan=0.0, posinf=0.0, neginf=0.0)
    antideriv = CubicSpline(grid, vals).antiderivative()
    q = antideriv(rho) - antideriv(rho_ref)
    return traj.y**2 - q


def _write_csv(path: str, header: Sequence[str], columns: Sequence[np.ndarray]) -> None:
    rows = len(columns[0])
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(rows):
            fh.write(",".join(_fmt(float(col[i])) for col in columns) + "\n")


def _initial_state(args: argparse.Namespace) -> PolarState:
    return PolarState(args.y0, args.rho0, args.phi0)


def _cmd_toy_simulate(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    traj = integrate(
        _initial_state(args), model, args.t, args.dt, scheme=args.scheme, fp_tol=args.fp_tol
    )
    energy = _energy_series(model, traj)
    _write_csv(
        args.out, ("t", "y", "rho", "phi", "E"), (traj.times, traj.y, traj.rho, traj.phi, energy)
    )
    _emit(
        {
            "out": args.out,
            "rows": len(traj),
            "t_end": traj.times[-1],
            "scheme": traj.scheme,
            "e_drift": float(np.max(np.abs(energy - energy[0]))),
        }
    )
    return 0


def _cmd_toy_equilibria(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    _emit(find_equilibria(model, (args.rho_lo, args.rho_hi)))
    return 0


def _equilibrium_dict(info: EquilibriumInfo) -> dict:
    pair = info.exponents
    magnitude = abs(pair[0])
    pretty = f"±{magnitude:g}i" if pair[0].real == 0.0 else f"±{magnitude:g}"
    return {
        "rho0": info.rho0,
        "kind": info.kind,
        "floquet_matrix": [list(row) for row in info.floquet_matrix.tolist()],
        "exponents": [[pair[0].real, pair[0].imag], [pair[1].real, pair[1].imag]],
        "exponents_text": pretty,
        "cycle_frequency": info.cycle_frequency,
    }


def _cmd_toy_classify(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    _emit(_equilibrium_dict(classify_equilibrium(model, args.rho0)))
    return 0


def _cmd_toy_torus(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    result = torus_frequencies(
        model, _initial_state(args), args.t, args.dt, scheme=args.scheme, rho0=args.center
    )
    _emit(
        {
            "omega_section": result.omega_section,
            "omega_phase": result.omega_phase,
            "amplitude": result.amplitude,
        }
    )
    return 0


def _cmd_toy_sweep(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    if not args.grid:
        raise InvalidInput("--grid is required (one comma-separated list per mu component)")
    axes = [_floats(axis, "--grid") for axis in args.grid]
    if len(axes) != len(model.mu):
        raise InvalidInput(
            f"model has {len(model.mu)} mu component(s) but {len(axes)} --grid flag(s) were given"
        )
    grid = [point for point in product(*axes)]
    records = sweep(model, grid, (args.rho_lo, args.rho_hi), jobs=args.jobs)

    if args.format == "json":
        payload = [
            {
                "mu": list(rec.mu),
                "equilibria": [_equilibrium_dict(info) for info in rec.equilibria],
                "degenerate_roots": list(rec.degenerate_roots),
                "origin_equilibrium": rec.origin_equilibrium,
            }
            for rec in records
        ]
        text = json.dumps(payload, ensure_ascii=False)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text + "\n")
            _emit({"out": args.out, "records": len(records)})
        else:
            print(text)
        return 0

    # csv: one row per (grid point, equilibrium); points without equilibria
    # keep one row with empty equilibrium fields
    n_mu = len(model.mu)
    header = [f"mu_{i + 1}" for i in range(n_mu)]
    header += ["rho0", "kind", "exp_re", "exp_im", "cycle_frequency", "origin_equilibrium"]
    lines = [",".join(header)]
    for rec in records:
        prefix = [_fmt(c) for c in rec.mu]
        flag = "1" if rec.origin_equilibrium else "0"
        if rec.equilibria:
            for info in rec.equilibria:
                chi = info.exponents[0]
                lines.append(
                    ",".join(
                        prefix
                        + [
                            _fmt(info.rho0),
                            info.kind,
                            _fmt(chi.real),
                            _fmt(chi.imag),
                            _fmt(info.cycle_frequency),
                            flag,
                        ]
                    )
                )
        else:
            lines.append(",".join(prefix + ["", "", "", "", "", flag]))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        _emit({"out": args.out, "records": len(records)})
    else:
        sys.stdout.write(text)
    return 0


def _cmd_toy_perturb(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    field = perturb(
        model,
        args.eps,
        f=_floats(args.f, "--f"),
        g=_floats(args.g, "--g"),
        h=_floats(args.h, "--h"),
    )

    rng = np.random.default_rng(args.seed)
    states = np.column_stack(
        [
            rng.uniform(-1.0, 1.0, args.samples),
            rng.uniform(0.05, 2.0, args.samples),
            rng.uniform(0.0, 2.0 * np.pi, args.samples),
        ]
    )
    residual = reversibility_residual(field, [tuple(row) for row in states])

    traj = integrate(
        _initial_state(args), field, args.t, args.dt, scheme=args.scheme, fp_tol=args.fp_tol
    )
    if args.out:
        energy = _energy_series(model, traj)
        _write_csv(
            args.out,
            ("t", "y", "rho", "phi", "E"),
            (traj.times, traj.y, traj.rho, traj.phi, energy),
        )
    _emit(
        {
            "eps": args.eps,
            "reversibility_residual": residual,
            "samples": args.samples,
            "seed": args.seed,
            "rho_min": float(traj.rho.min()),
            "rho_max": float(traj.rho.max()),
            "out": args.out,
        }
    )
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_context_flags(sub: argparse.ArgumentParser, with_r: bool) -> None:
    kind = sub.add_mutually_exclusive_group(required=True)
    kind.add_argument("--hamiltonian", action="store_true", help="isotropic Hamiltonian context")
    kind.add_argument("--volume-preserving", action="store_true", help="volume-preserving context")
    kind.add_argument("--dissipative", action="store_true", help="general dissipative context")
    kind.add_argument("--reversible", action="store_true", help="reversible context")
    sub.add_argument("--n", type=int, default=None, help="torus dimension n")
    sub.add_argument("--p", type=int, default=None, help="pair count p (non-reversible kinds)")
    sub.add_argument("--a", type=int, default=None, help="reversible count a")
    sub.add_argument("--b", type=int, default=None, help="reversible count b")
    sub.add_argument("--s", type=int, default=None, help="parameter count s")
    if with_r:
        sub.add_argument("--r", type=int, required=True, help="transition order r")


def _add_orbit_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--y0", type=float, required=True, help="initial y")
    sub.add_argument("--rho0", type=float, required=True, help="initial rho")
    sub.add_argument("--phi0", type=float, default=0.0, help="initial phi")
    sub.add_argument("--dt", type=float, required=True, help="time step")
    sub.add_argument("--t", type=float, required=True, help="integration time")
    sub.add_argument(
        "--scheme", default=IMPLICIT_MIDPOINT, help="ImplicitMidpoint (default) or RK4"
    )
    sub.add_argument("--fp-tol", type=float, default=1e-13, help="stage iteration tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kam", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    groups = parser.add_subparsers(dest="group", required=True)

    ctx = groups.add_parser("context", help="torus-context bookkeeping")
    ctx_sub = ctx.add_subparsers(dest="command", required=True)
    prof = ctx_sub.add_parser("profile", help="characteristic counts of a context")
    _add_context_flags(prof, with_r=False)
    prof.set_defaults(func=_cmd_context_profile)
    dest = ctx_sub.add_parser("destroy", help="resonant destruction of r torus dimensions")
    _add_context_flags(dest, with_r=True)
    dest.set_defaults(func=_cmd_context_destroy)
    exc = ctx_sub.add_parser("excite", help="excitation of r opposite mode pairs")
    _add_context_flags(exc, with_r=True)
    exc.set_defaults(func=_cmd_context_excite)
    c2 = ctx_sub.add_parser("context2", help="excitation diagnostics when a < b")
    c2.add_argument("--n", type=int, default=0, help="torus dimension n")
    c2.add_argument("--a", type=int, required=True)
    c2.add_argument("--b", type=int, required=True)
    c2.add_argument("--s", type=int, required=True)
    c2.add_argument("--r", type=int, required=True)
    c2.set_defaults(func=_cmd_context_context2)

    dioph = groups.add_parser("dioph", help="truncated small-divisor checks")
    dioph_sub = dioph.add_subparsers(dest="command", required=True)
    chk = dioph_sub.add_parser("check", help="check omega against (gamma, tau, k_max)")
    chk.add_argument("--omega", required=True, help="comma-separated frequency vector")
    chk.add_argument("--beta", default=None, help="comma-separated affine offsets (optional)")
    chk.add_argument("--gamma", type=float, required=True)
    chk.add_argument("--tau", type=float, required=True)
    chk.add_argument("--kmax", type=int, required=True)
    chk.set_defaults(func=_cmd_dioph_check)
    qual = dioph_sub.add_parser("quality", help="best gamma supported up to the cutoff")
    qual.add_argument("--omega", required=True)
    qual.add_argument("--tau", type=float, required=True)
    qual.add_argument("--kmax", type=int, required=True)
    qual.set_defaults(func=_cmd_dioph_quality)
    meas = dioph_sub.add_parser("measure", help="Monte-Carlo measure of the passing set in a box")
    meas.add_argument("--box", required=True, help="lo,hi per component, flattened")
    meas.add_argument("--gamma", type=float, required=True)
    meas.add_argument("--tau", type=float, required=True)
    meas.add_argument("--kmax", type=int, required=True)
    meas.add_argument("--samples", type=int, default=10_000)
    meas.add_argument("--seed", type=int, required=True, help="RNG seed (required)")
    meas.set_defaults(func=_cmd_dioph_measure)

    toy = groups.add_parser("toy", help="planar-phase model laboratory")
    toy_sub = toy.add_subparsers(dest="command", required=True)
    sim = toy_sub.add_parser("simulate", help="integrate one orbit to CSV")
    sim.add_argument("--model", required=True, help="model JSON file")
    _add_orbit_flags(sim)
    sim.add_argument("--out", required=True, help="CSV output path (t,y,rho,phi,E)")
    sim.set_defaults(func=_cmd_toy_simulate)
    equ = toy_sub.add_parser("equilibria", help="roots of u in a rho interval")
    equ.add_argument("--model", required=True)
    equ.add_argument("--rho-lo", type=float, required=True)
    equ.add_argument("--rho-hi", type=float, required=True)
    equ.set_defaults(func=_cmd_toy_equilibria)
    cls = toy_sub.add_parser("classify", help="linearization at an equilibrium rho0")
    cls.add_argument("--model", required=True)
    cls.add_argument("--rho0", type=float, required=True)
    cls.set_defaults(func=_cmd_toy_classify)
    tor = toy_sub.add_parser("torus", help="frequencies of an orbit around a center")
    tor.add_argument("--model", required=True)
    _add_orbit_flags(tor)
    tor.add_argument("--center", type=float, default=None, help="cycle rho0 (default: located)")
    tor.set_defaults(func=_cmd_toy_torus)
    swp = toy_sub.add_parser("sweep", help="equilibrium inventory over a mu grid")
    swp.add_argument("--model", required=True)
    swp.add_argument(
        "--grid",
        action="append",
        help="comma-separated values for one mu component; repeat per component",
    )
    swp.add_argument("--rho-lo", type=float, required=True)
    swp.add_argument("--rho-hi", type=float, required=True)
    swp.add_argument("--jobs", type=int, default=1, help="worker processes")
    swp.add_argument("--format", choices=("json", "csv"), default="json")
    swp.add_argument("--out", default=None, help="output file (default: stdout)")
    swp.set_defaults(func=_cmd_toy_sweep)
    per = toy_sub.add_parser("perturb", help="reversible perturbation experiment")
    per.add_argument("--model", required=True)
    per.add_argument("--eps", type=float, required=True)
    per.add_argument("--f", default="1", help="cos-phi forcing of y (coefficients)")
    per.add_argument("--g", default="1", help="sin-phi forcing of rho (coefficients)")
    per.add_argument("--h", default="1", help="sin-phi forcing of phi (coefficients)")
    _add_orbit_flags(per)
    per.add_argument("--samples", type=int, default=100, help="residual sample count")
    per.add_argument("--seed", type=int, default=0, help="residual sample seed")
    per.add_argument("--out", default=None, help="optional orbit CSV")
    per.set_defaults(func=_cmd_toy_perturb)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FeasibilityError as exc:
        _perr(exc)
        return 2
    except NumericalError as exc:
        _perr(exc)
        return 4
    except InvalidInput as exc:
        _perr(exc)
        return 1
    except (TypeError, ValueError) as exc:
        _perr(exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
