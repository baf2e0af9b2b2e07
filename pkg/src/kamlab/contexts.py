"""Integer bookkeeping for generic families of quasi-periodic invariant tori.

Four settings are covered: Hamiltonian flows with isotropic tori, volume
preserving flows, general dissipative flows, and reversible flows.  In each
setting a handful of nonnegative integers (torus dimension ``n``, normal
counts ``p`` or ``a``/``b``, number of external parameters ``s``) determines
the phase space dimension, the number ``m`` of Floquet exponents of a
reducible torus, how many of them vanish generically, and the effective
parameter count ``c`` of a generic family.  ``profile`` tabulates these
characteristics.  ``destroy_resonant`` and ``excite_modes`` compute the
context reached when a resonant torus breaks up into lower dimensional ones,
or when elliptic normal modes are turned into new angular directions, and
report whether the resulting family is smooth or only Whitney-smooth on a
Cantor-like parameter set.

For reversible flows the two halves of the normal space (reflected by the
linearized involution or not) need not balance.  The unbalanced case ``b > a``
behaves differently under excitation; ``context2_excitation_diagnostics``
quantifies the mismatch between the naive and the actual count of vanishing
Floquet exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import BadOrder, Impossible, InfeasibleParameters, NotContext2

__all__ = [
    "HamiltonianIsotropic",
    "VolumePreserving",
    "GeneralDissipative",
    "Reversible",
    "KamContext",
    "ContextProfile",
    "TransitionResult",
    "Context2Report",
    "PLUS_MINUS_PAIRS_WITH_ZEROS",
    "TRACE_ZERO",
    "UNCONSTRAINED",
    "CONTEXT1",
    "CONTEXT2",
    "SMOOTH",
    "WHITNEY_CANTOR_LIKE",
    "profile",
    "destroy_resonant",
    "excite_modes",
    "context2_excitation_diagnostics",
]

# Floquet spectrum shapes of a generic reducible torus.
PLUS_MINUS_PAIRS_WITH_ZEROS = "PlusMinusPairsWithZeros"
TRACE_ZERO = "TraceZero"
UNCONSTRAINED = "Unconstrained"

# Reversible subclasses: first class has at least as many reflected normal
# directions as non-reflected ones (a >= b), second class has a < b.
CONTEXT1 = "Context1"
CONTEXT2 = "Context2"

# Smoothness of the family produced by a transition.
SMOOTH = "Smooth"
WHITNEY_CANTOR_LIKE = "WhitneyCantorLike"


def _check_counts(**fields: int) -> None:
    for name, value in fields.items():
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError(f"{name} must be an int, got {value!r}")
        if value < 0:
            raise ValueError(f"{name} must be nonnegative, got {value}")


class KamContext:
    """Marker base class for the four context kinds."""

    __slots__ = ()


@dataclass(frozen=True)
class HamiltonianIsotropic(KamContext):
    """Hamiltonian flow, isotropic n-tori, p pairs of normal directions,
    s external parameters."""

    n: int
    p: int
    s: int

    def __post_init__(self) -> None:
        _check_counts(n=self.n, p=self.p, s=self.s)


@dataclass(frozen=True)
class VolumePreserving(KamContext):
    """Volume preserving flow with p normal directions.  p = 0 would leave
    no room for the preserved volume form to constrain anything, so it is
    rejected at construction."""

    n: int
    p: int
    s: int

    def __post_init__(self) -> None:
        _check_counts(n=self.n, p=self.p, s=self.s)
        if self.p < 1:
            raise Impossible("volume preserving context requires p >= 1")


@dataclass(frozen=True)
class GeneralDissipative(KamContext):
    """Flow with no preserved structure, p normal directions."""

    n: int
    p: int
    s: int

    def __post_init__(self) -> None:
        _check_counts(n=self.n, p=self.p, s=self.s)


@dataclass(frozen=True)
class Reversible(KamContext):
    """Flow reversible under an involution whose fixed-point set meets the
    torus normal space in ``a`` directions; ``b`` counts the complementary
    ones.  ``a >= b`` is the classical (first) subclass."""

    n: int
    a: int
    b: int
    s: int

    def __post_init__(self) -> None:
        _check_counts(n=self.n, a=self.a, b=self.b, s=self.s)


AnyContext = Union[HamiltonianIsotropic, VolumePreserving, GeneralDissipative, Reversible]


@dataclass(frozen=True)
class ContextProfile:
    """Integer characteristics of the generic invariant-torus family.

    dim_m
        Dimension of the ambient phase space.
    m
        Number of Floquet exponents of a reducible torus.
    s_lower_bound
        Least number of external parameters for which generic families of
        these tori exist.
    c
        Effective parameter count of the family (may drop below zero when
        s is below ``s_lower_bound``).
    c_minus_s
        Context-intrinsic part of ``c``; it does not depend on s.
    g
        Number of generically nonzero Floquet exponents.
    zero_floquet_multiplicity
        Number of generically vanishing Floquet exponents, ``m - g``.
    spectrum_shape
        Structure of the nonzero part of the Floquet spectrum.
    reversible_class
        ``Context1``/``Context2`` for reversible contexts, ``None`` otherwise.
    """

    dim_m: int
    m: int
    s_lower_bound: int
    c: int
    c_minus_s: int
    g: int
    zero_floquet_multiplicity: int
    spectrum_shape: str
    reversible_class: Optional[str] = None


@dataclass(frozen=True)
class TransitionResult:
    """Outcome of a destruction or excitation step."""

    source: AnyContext
    target: AnyContext
    r: int
    family_smoothness: str
    note: str = ""


@dataclass(frozen=True)
class Context2Report:
    """Zero-exponent bookkeeping for excitation out of a second-class
    reversible context (b > a >= 1, excitation order 1 <= r <= a).

    kappa1 is the actual multiplicity of the zero Floquet exponent after the
    excitation, kappa2 the naive count obtained by extrapolating first-class
    behavior (one more zero per excited pair on top of the b - a inherited
    ones).  Their difference ``defect`` is always even and positive; half of
    it, ``d``, counts the exponent pairs that leave zero against the naive
    expectation.
    """

    source: Reversible
    r: int
    kappa1: int
    kappa2: int
    defect: int
    d: int
    c_prime_minus_s: int
    resulting_class: str


def profile(ctx: AnyContext) -> ContextProfile:
    """Tabulate the integer characteristics of a context.

    Total on well-formed contexts; the only failures possible here are
    construction-time ones.
    """
    if isinstance(ctx, HamiltonianIsotropic):
        n, p, s = ctx.n, ctx.p, ctx.s
        return ContextProfile(
            dim_m=2 * (n + p),
            m=n + 2 * p,
            s_lower_bound=0,
            c=n + s,
            c_minus_s=n,
            g=2 * p,
            zero_floquet_multiplicity=n,
            spectrum_shape=PLUS_MINUS_PAIRS_WITH_ZEROS,
        )
    if isinstance(ctx, VolumePreserving):
        n, p, s = ctx.n, ctx.p, ctx.s
        # tori with n >= 2 internal frequencies need a free parameter unless
        # the single normal direction already supplies one
        lower = max(int(n >= 2) - int(p == 1), 0)
        return ContextProfile(
            dim_m=n + p,
            m=p,
            s_lower_bound=lower,
            c=int(p == 1) + s,
            c_minus_s=int(p == 1),
            g=p - int(p == 1),
            zero_floquet_multiplicity=int(p == 1),
            spectrum_shape=TRACE_ZERO,
        )
    if isinstance(ctx, GeneralDissipative):
        n, p, s = ctx.n, ctx.p, ctx.s
        return ContextProfile(
            dim_m=n + p,
            m=p,
            s_lower_bound=int(n >= 2),
            c=s,
            c_minus_s=0,
            g=p,
            zero_floquet_multiplicity=0,
            spectrum_shape=UNCONSTRAINED,
        )
    if isinstance(ctx, Reversible):
        n, a, b, s = ctx.n, ctx.a, ctx.b, ctx.s
        return ContextProfile(
            dim_m=n + a + b,
            m=a + b,
            s_lower_bound=max(int(n >= 2) + b - a, 0),
            c=a - b + s,
            c_minus_s=a - b,
            g=2 * min(a, b),
            zero_floquet_multiplicity=abs(a - b),
            spectrum_shape=PLUS_MINUS_PAIRS_WITH_ZEROS,
            reversible_class=CONTEXT1 if a >= b else CONTEXT2,
        )
    raise TypeError(f"not a context: {ctx!r}")


def _check_order_positive(r: int) -> None:
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise BadOrder(f"transition order must be a positive integer, got {r!r}")


def destroy_resonant(ctx: AnyContext, r: int) -> TransitionResult:
    """Break up resonant n-tori into invariant (n-r)-tori.

    Shrinks the torus dimension by ``r`` (1 <= r <= n-1) and moves the freed
    directions into the normal space.  Requires at least ``r`` effective
    parameters in the source family.  Impossible for general dissipative
    flows (the intrinsic part of the parameter count cannot change) and for
    volume preserving flows except the single step p = 1, r = 1.

    Raises Impossible, BadOrder or InfeasibleParameters accordingly.
    """
    _check_order_positive(r)

    if isinstance(ctx, GeneralDissipative):
        raise Impossible("no proper destruction in the general dissipative context")
    if isinstance(ctx, VolumePreserving) and (ctx.p != 1 or r != 1):
        raise Impossible(
            "volume preserving destruction exists only for p = 1 with r = 1, "
            f"got p = {ctx.p}, r = {r}"
        )

    n = ctx.n
    if n < 2 or r > n - 1:
        raise BadOrder(f"need 1 <= r <= n-1 with n >= 2, got n = {n}, r = {r}")

    prof = profile(ctx)
    if prof.c < r:
        raise InfeasibleParameters(
            f"destruction of order {r} needs c >= {r}, context has c = {prof.c}"
        )

    note = ""
    if isinstance(ctx, HamiltonianIsotropic):
        target: AnyContext = HamiltonianIsotropic(n - r, ctx.p + r, ctx.s)
    elif isinstance(ctx, VolumePreserving):
        # p = 1, r = 1 here; retaining n-1 >= 2 internal frequencies costs
        # one external parameter
        if n >= 3 and ctx.s < 1:
            raise InfeasibleParameters(
                f"volume preserving destruction with n = {n} needs s >= 1, got s = {ctx.s}"
            )
        target = VolumePreserving(n - 1, 2, ctx.s)
        note = "volume preserving destruction is a bookkeeping prediction, not yet established"
    else:
        assert isinstance(ctx, Reversible)
        need = int(n - r >= 2) + ctx.b + r - ctx.a
        if ctx.s < need:
            raise InfeasibleParameters(
                f"reversible destruction of order {r} needs s >= {need}, got s = {ctx.s}"
            )
        target = Reversible(n - r, ctx.a, ctx.b + r, ctx.s)

    if r == n - 1:
        smooth = SMOOTH
    else:
        smooth = WHITNEY_CANTOR_LIKE
        if prof.c == r:
            # the resulting family has no internal parameters left; its
            # smoothness class is not settled, Cantor-like is the safe report
            note = (note + "; " if note else "") + (
                "c equals r, smoothness of the resulting isolated family is unverified"
            )
    return TransitionResult(source=ctx, target=target, r=r, family_smoothness=smooth, note=note)


def excite_modes(ctx: AnyContext, r: int) -> TransitionResult:
    """Turn r elliptic normal-mode pairs into new angular directions.

    Grows the torus dimension by ``r`` while removing the excited pairs from
    the normal space.  Needs a context whose generic Floquet spectrum carries
    pairs of opposite exponents: Hamiltonian with p >= 1 (r <= p), volume
    preserving with p = 2 (r = 1), reversible with min(a, b) >= 1
    (r <= min(a, b)).  General dissipative flows never have such pairs, and
    neither do volume preserving flows with p != 2.
    """
    _check_order_positive(r)

    if isinstance(ctx, GeneralDissipative):
        raise Impossible("generic dissipative spectra have no opposite exponent pairs")

    note = ""
    if isinstance(ctx, HamiltonianIsotropic):
        if r > ctx.p:
            raise BadOrder(f"need 1 <= r <= p, got p = {ctx.p}, r = {r}")
        target: AnyContext = HamiltonianIsotropic(ctx.n + r, ctx.p - r, ctx.s)
    elif isinstance(ctx, VolumePreserving):
        if ctx.p != 2:
            raise Impossible(
                "volume preserving excitation needs exactly one opposite pair, "
                f"i.e. p = 2, got p = {ctx.p}"
            )
        if r != 1:
            raise BadOrder(f"volume preserving excitation has order 1, got r = {r}")
        target = VolumePreserving(ctx.n + 1, 1, ctx.s)
    else:
        assert isinstance(ctx, Reversible)
        g_pairs = min(ctx.a, ctx.b)
        if g_pairs < 1 or r > g_pairs:
            raise BadOrder(f"need 1 <= r <= min(a, b), got a = {ctx.a}, b = {ctx.b}, r = {r}")
        target = Reversible(ctx.n + r, ctx.a, ctx.b - r, ctx.s)
        if ctx.a < ctx.b:
            note = (
                "source is a second-class reversible context; "
                "see context2_excitation_diagnostics for the zero-exponent defect"
            )

    smooth = SMOOTH if (ctx.n == 0 and r == 1) else WHITNEY_CANTOR_LIKE
    return TransitionResult(source=ctx, target=target, r=r, family_smoothness=smooth, note=note)


def context2_excitation_diagnostics(ctx: Reversible, r: int) -> Context2Report:
    """Compare actual and naive zero-exponent counts for an excitation out of
    a second-class reversible context.

    The source has b - a extra zero Floquet exponents.  Extrapolating
    first-class behavior, exciting r pairs would add r more zeros
    (kappa2 = b - a + r); the actual count after the excitation is
    kappa1 = |b - a - r|.  The shortfall defect = kappa2 - kappa1
    = 2 min(b - a, r) is even, and d = defect / 2 >= 1 pairs of exponents
    leave zero against the naive expectation.
    """
    if not isinstance(ctx, Reversible):
        raise NotContext2(f"need a reversible context, got {type(ctx).__name__}")
    if ctx.a >= ctx.b:
        raise NotContext2(f"need b > a, got a = {ctx.a}, b = {ctx.b}")
    _check_order_positive(r)
    if ctx.a < 1 or r > ctx.a:
        raise BadOrder(f"need 1 <= r <= a with a >= 1, got a = {ctx.a}, r = {r}")

    gap = ctx.b - ctx.a
    kappa1 = abs(gap - r)
    kappa2 = gap + r
    defect = kappa2 - kappa1
    return Context2Report(
        source=ctx,
        r=r,
        kappa1=kappa1,
        kappa2=kappa2,
        defect=defect,
        d=defect // 2,
        c_prime_minus_s=r - gap,
        resulting_class=CONTEXT2 if r < gap else CONTEXT1,
    )
