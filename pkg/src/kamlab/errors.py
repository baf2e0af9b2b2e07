"""Exception taxonomy shared by the library and the command line tool.

Three coarse classes matter for callers:

* ``FeasibilityError``: the requested object cannot exist for structural or
  parameter-count reasons.  The command line tool maps these to exit code 2.
* ``InvalidInput``: malformed arguments or model files.  Doubles as a
  ``ValueError`` so sloppy call sites still fail loudly.  Exit code 1.
* ``NumericalError``: a solver or a diagnostic broke down at run time.
  Exit code 4.
"""

__all__ = [
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


class KamError(Exception):
    """Base class for every error raised by this package."""


class FeasibilityError(KamError):
    """A transition or diagnostic is ruled out by the integer bookkeeping."""


class Impossible(FeasibilityError):
    """The operation cannot happen in this context for any parameter values."""


class InfeasibleParameters(FeasibilityError):
    """The operation exists in this context but not for these parameters."""


class BadOrder(FeasibilityError):
    """The transition order r lies outside its admissible range."""


class NotContext2(FeasibilityError):
    """A second-class reversible context was required (more reflected than
    non-reflected normal directions, b > a)."""


class InvalidInput(KamError, ValueError):
    """Malformed argument values; also raised while parsing model files."""


class BadTau(InvalidInput):
    """Diophantine exponent out of range."""


class EmptyVector(InvalidInput):
    """A frequency vector must have at least one component."""


class DegenerateBox(InvalidInput):
    """A sampling box must have positive width in every coordinate."""


class NonpositiveRho(InvalidInput):
    """The radial coordinate must be positive here."""


class InvalidModel(InvalidInput):
    """A model description violates the documented schema."""


class NumericalError(KamError):
    """A numerical procedure failed to produce a trustworthy result."""


class StepFailure(NumericalError):
    """The implicit stage equation did not converge."""


class DomainExit(NumericalError):
    """A trajectory left the working domain (rho <= 0 or W <= 0)."""


class SingularIntegrand(NumericalError):
    """The first-integral integrand has a singularity on the integration path."""


class NotAnEquilibrium(NumericalError):
    """The given radius is not a zero of the radial drift."""


class DegenerateEquilibrium(NumericalError):
    """Both Floquet exponents vanish, the saddle/center split does not apply."""


class NotACenterOrbit(NumericalError):
    """The orbit never returned to the section, so no frequencies exist."""
