"""Invariant-torus context bookkeeping, truncated small-divisor checks, and a
numerical laboratory for a reversible planar-phase model.

Three layers:

* ``contexts``: exact integer calculus: characteristic counts of the four
  classical context kinds, resonant destruction and mode excitation of
  invariant tori, and the defect diagnostics of reversible contexts with
  more unstable than stable normal directions.
* ``diophantine``: finite-cutoff small-divisor tests for frequency vectors,
  with witnesses and Monte-Carlo measure estimates.
* ``toymodel`` / ``dynamics``: a concrete reversible model with one
  rotational phase: field evaluation, conserved quantity, equilibria and
  their Floquet data, a time-symmetric integrator, torus frequency
  measurement, normal-form residuals, and reversible perturbations.

The ``kam`` console script exposes all three.
"""

from .contexts import (
    CONTEXT1,
    CONTEXT2,
    PLUS_MINUS_PAIRS_WITH_ZEROS,
    SMOOTH,
    TRACE_ZERO,
    UNCONSTRAINED,
    WHITNEY_CANTOR_LIKE,
    AnyContext,
    Context2Report,
    ContextProfile,
    GeneralDissipative,
    HamiltonianIsotropic,
    KamContext,
    Reversible,
    TransitionResult,
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
from .dynamics import (
    IMPLICIT_MIDPOINT,
    RK4,
    Trajectory,
    TorusFrequencies,
    floquet_residual,
    integrate,
    torus_frequencies,
)
from .errors import (
    BadOrder,
    BadTau,
    DegenerateBox,
    DegenerateEquilibrium,
    DomainExit,
    EmptyVector,
    FeasibilityError,
    Impossible,
    InfeasibleParameters,
    InvalidInput,
    InvalidModel,
    KamError,
    NonpositiveRho,
    NotACenterOrbit,
    NotAnEquilibrium,
    NotContext2,
    NumericalError,
    SingularIntegrand,
    StepFailure,
)
from .toymodel import (
    CENTER,
    SADDLE,
    CartesianState,
    EquilibriumInfo,
    MuAffinePolynomial,
    PerturbedField,
    PolarState,
    State,
    SweepRecord,
    ToyModel,
    apply_involution,
    as_polar,
    cartesian_to_polar,
    classify_equilibrium,
    default_model,
    equilibrium_at_origin,
    eval_field,
    find_equilibria,
    first_integral,
    load_model,
    model_from_dict,
    model_to_dict,
    perturb,
    polar_to_cartesian,
    reversibility_residual,
    save_model,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # contexts
    "KamContext",
    "HamiltonianIsotropic",
    "VolumePreserving",
    "GeneralDissipative",
    "Reversible",
    "AnyContext",
    "ContextProfile",
    "TransitionResult",
    "Context2Report",
    "profile",
    "destroy_resonant",
    "excite_modes",
    "context2_excitation_diagnostics",
    "PLUS_MINUS_PAIRS_WITH_ZEROS",
    "TRACE_ZERO",
    "UNCONSTRAINED",
    "CONTEXT1",
    "CONTEXT2",
    "SMOOTH",
    "WHITNEY_CANTOR_LIKE",
    # diophantine
    "DiophantineParams",
    "CheckResult",
    "min_quality",
    "check_diophantine",
    "check_affine_diophantine",
    "measure_estimate",
    # toy model
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
    "SADDLE",
    "CENTER",
    # dynamics
    "Trajectory",
    "integrate",
    "TorusFrequencies",
    "torus_frequencies",
    "floquet_residual",
    "IMPLICIT_MIDPOINT",
    "RK4",
    # errors
    "KamError",
    "FeasibilityError",
    "Impossible",
    "InfeasibleParameters",
    "BadOrder",
    "NotContext2",
    "InvalidInput",
    "BadTau",
    "EmptyVector",
    "DegenerateBox",
    "NonpositiveRho",
    "InvalidModel",
    "NumericalError",
    "StepFailure",
    "DomainExit",
    "SingularIntegrand",
    "NotAnEquilibrium",
    "DegenerateEquilibrium",
    "NotACenterOrbit",
]
