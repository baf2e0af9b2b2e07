"""Finite-cutoff small-divisor tests for frequency vectors.

The classical condition asks for |<omega, k>| >= gamma * |k|**(-tau) over all
nonzero integer vectors k; only a truncated scan is computable, so every
routine here works on the finite lattice 0 < |k|_1 <= k_max and reports the
cutoff with its result.  ``min_quality`` returns the best gamma the vector
supports up to the cutoff, ``check_diophantine`` compares it against a given
gamma and produces a witness on failure, ``check_affine_diophantine`` adds
integer combinations of a second vector with weight at most 2, and
``measure_estimate`` samples a box uniformly to estimate the measure of the
passing set.

Conventions, fixed for reproducibility:

* |k| is the 1-norm.
* The scan visits one representative of each +/-k pair, the one whose first
  nonzero component is positive.
* Witnesses are reported smallest 1-norm first, ties broken lexicographically
  (and the same ordering on l for affine checks).
* Sampling uses ``numpy.random.default_rng`` (PCG64) with an explicit seed;
  estimates are reproducible bit for bit.

The classical theory needs tau > n - 1 for the passing set to have full
measure; the finite scan itself is well defined for any tau > 0, so only
tau >= max(n - 1, 0), tau > 0 is enforced here (the boundary value is useful:
constant-type vectors such as the golden mean satisfy the condition at
tau = n - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import BadTau, DegenerateBox, EmptyVector, InvalidInput

__all__ = [
    "DiophantineParams",
    "CheckResult",
    "min_quality",
    "check_diophantine",
    "check_affine_diophantine",
    "measure_estimate",
]

# hard cap on the enumerated integer box (2*k_max+1)**n, to fail fast instead
# of exhausting memory
_MAX_BOX_POINTS = 40_000_000


@dataclass(frozen=True)
class DiophantineParams:
    """Constants of one truncated check: threshold gamma, exponent tau,
    1-norm cutoff k_max."""

    gamma: float
    tau: float
    k_max: int

    def __post_init__(self) -> None:
        if not np.isfinite(self.gamma) or self.gamma <= 0.0:
            raise InvalidInput(f"gamma must be positive and finite, got {self.gamma!r}")
        if not np.isfinite(self.tau) or self.tau <= 0.0:
            raise BadTau(f"tau must be positive and finite, got {self.tau!r}")
        if not isinstance(self.k_max, int) or isinstance(self.k_max, bool) or self.k_max < 1:
            raise InvalidInput(f"k_max must be an integer >= 1, got {self.k_max!r}")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a truncated check.

    ``passed`` is ``min_product >= gamma`` where ``min_product`` is the
    smallest |<omega, k> (+ <beta, l>)| * |k|**tau over the scanned lattice.
    ``witness_k`` (and ``witness_l`` for affine checks) is present exactly
    when the check failed and names the first violating lattice point in
    (1-norm, lexicographic) order.  gamma, tau and k_max echo the parameters
    so a stored result is self-describing.
    """

    passed: bool
    min_product: float
    witness_k: Optional[Tuple[int, ...]]
    witness_l: Optional[Tuple[int, ...]]
    gamma: float
    tau: float
    k_max: int


def _as_vector(values: Sequence[float], name: str) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(values, dtype=float))
    if arr.ndim != 1:
        raise InvalidInput(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise EmptyVector(f"{name} must have at least one component")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} must have finite entries")
    return arr


def _check_tau(tau: float, n: int) -> None:
    if not np.isfinite(tau) or tau <= 0.0 or tau < max(n - 1, 0):
        raise BadTau(
            f"tau must be positive and at least max(n-1, 0) = {max(n - 1, 0)}, got {tau!r}"
        )


def _check_k_max(k_max: int) -> None:
    if not isinstance(k_max, int) or isinstance(k_max, bool) or k_max < 1:
        raise InvalidInput(f"k_max must be an integer >= 1, got {k_max!r}")


@lru_cache(maxsize=64)
def _half_lattice(n: int, k_max: int) -> Tuple[np.ndarray, np.ndarray]:
    """Integer points with 0 < |k|_1 <= k_max, one per +/-k pair (first
    nonzero component positive), sorted by (1-norm, lexicographic).

    Returns read-only (points, 1-norms).
    """
    if (2 * k_max + 1) ** n > _MAX_BOX_POINTS:
        raise InvalidInput(
            f"lattice too large: (2*{k_max}+1)**{n} points; lower k_max or n"
        )
    axes = [np.arange(-k_max, k_max + 1, dtype=np.int64)] * n
    grid = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grid], axis=1)
    norms = np.abs(pts).sum(axis=1)
    keep = (norms > 0) & (norms <= k_max)
    pts, norms = pts[keep], norms[keep]
    lead = pts[np.arange(pts.shape[0]), (pts != 0).argmax(axis=1)]
    keep = lead > 0
    pts, norms = pts[keep], norms[keep]
    order = np.lexsort(tuple(pts[:, j] for j in range(n - 1, -1, -1)) + (norms,))
    pts = np.ascontiguousarray(pts[order])
    norms = norms[order].astype(float)
    pts.setflags(write=False)
    norms.setflags(write=False)
    return pts, norms


@lru_cache(maxsize=16)
def _weight_lattice(q: int, l_max: int) -> np.ndarray:
    """All integer points with |l|_1 <= l_max (zero included, both signs),
    sorted by (1-norm, lexicographic)."""
    if q == 0:
        return np.zeros((1, 0), dtype=np.int64)
    axes = [np.arange(-l_max, l_max + 1, dtype=np.int64)] * q
    grid = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grid], axis=1)
    norms = np.abs(pts).sum(axis=1)
    pts, norms = pts[norms <= l_max], norms[norms <= l_max]
    order = np.lexsort(tuple(pts[:, j] for j in range(q - 1, -1, -1)) + (norms,))
    pts = np.ascontiguousarray(pts[order])
    pts.setflags(write=False)
    return pts


def min_quality(omega: Sequence[float], tau: float, k_max: int) -> float:
    """Smallest |<omega, k>| * |k|**tau over 0 < |k|_1 <= k_max.

    This is the largest gamma for which the truncated condition holds;
    it is nonincreasing in k_max and scales linearly with omega.
    """
    w = _as_vector(omega, "omega")
    _check_tau(tau, w.size)
    _check_k_max(k_max)
    pts, norms = _half_lattice(w.size, k_max)
    products = np.abs(pts @ w) * norms**tau
    return float(products.min())


def check_diophantine(omega: Sequence[float], params: DiophantineParams) -> CheckResult:
    """Truncated small-divisor check of omega against (gamma, tau, k_max)."""
    w = _as_vector(omega, "omega")
    _check_tau(params.tau, w.size)
    pts, norms = _half_lattice(w.size, params.k_max)
    products = np.abs(pts @ w) * norms**params.tau
    min_product = float(products.min())
    passed = min_product >= params.gamma
    witness = None
    if not passed:
        first_bad = int(np.argmax(products < params.gamma))
        witness = tuple(int(c) for c in pts[first_bad])
    return CheckResult(
        passed=passed,
        min_product=min_product,
        witness_k=witness,
        witness_l=None,
        gamma=params.gamma,
        tau=params.tau,
        k_max=params.k_max,
    )


def check_affine_diophantine(
    omega: Sequence[float],
    beta: Sequence[float],
    params: DiophantineParams,
    l_max: int = 2,
) -> CheckResult:
    """Truncated affine check: |<omega, k> + <beta, l>| >= gamma * |k|**(-tau)
    over 0 < |k|_1 <= k_max and all integer l with |l|_1 <= l_max.

    k = 0 stays excluded; l = 0 is included, so this is at least as strict as
    the plain check.  An empty beta reduces to ``check_diophantine`` exactly.
    """
    w = _as_vector(omega, "omega")
    _check_tau(params.tau, w.size)
    if beta is None:
        beta = ()
    b = np.atleast_1d(np.asarray(beta, dtype=float))
    if b.size and not np.all(np.isfinite(b)):
        raise InvalidInput("beta must have finite entries")
    if b.size == 0:
        return check_diophantine(omega, params)

    pts, norms = _half_lattice(w.size, params.k_max)
    lpts = _weight_lattice(b.size, l_max)
    base = pts @ w
    offsets = lpts @ b
    products = np.abs(base[:, None] + offsets[None, :]) * (norms**params.tau)[:, None]
    min_product = float(products.min())
    passed = min_product >= params.gamma
    wk = wl = None
    if not passed:
        bad = products < params.gamma
        rows = bad.any(axis=1)
        i = int(np.argmax(rows))
        j = int(np.argmax(bad[i]))
        wk = tuple(int(c) for c in pts[i])
        wl = tuple(int(c) for c in lpts[j])
    return CheckResult(
        passed=passed,
        min_product=min_product,
        witness_k=wk,
        witness_l=wl,
        gamma=params.gamma,
        tau=params.tau,
        k_max=params.k_max,
    )


def measure_estimate(
    box: Sequence[Tuple[float, float]],
    params: DiophantineParams,
    n_samples: int = 10_000,
    seed: int = 0,
) -> float:
    """Fraction of frequency vectors sampled uniformly from ``box`` that pass
    ``check_diophantine`` at the given parameters.

    ``box`` is a sequence of (lo, hi) pairs, one per frequency component.
    The whole sample array is drawn in one call from
    ``numpy.random.default_rng(seed)``, so the estimate does not depend on
    chunking or scheduling.
    """
    bounds = np.asarray(box, dtype=float)
    if bounds.ndim != 2 or bounds.shape[0] < 1 or bounds.shape[1] != 2:
        raise DegenerateBox(f"box must be a nonempty list of (lo, hi) pairs, got {box!r}")
    if not np.all(np.isfinite(bounds)):
        raise DegenerateBox("box bounds must be finite")
    lo, hi = bounds[:, 0], bounds[:, 1]
    if not np.all(hi > lo):
        raise DegenerateBox("box must have positive width in every coordinate")
    if not isinstance(n_samples, int) or isinstance(n_samples, bool) or n_samples < 1:
        raise InvalidInput(f"n_samples must be an integer >= 1, got {n_samples!r}")
    n = bounds.shape[0]
    _check_tau(params.tau, n)

    rng = np.random.default_rng(seed)
    samples = rng.uniform(lo, hi, size=(n_samples, n))

    pts, norms = _half_lattice(n, params.k_max)
    weights = norms**params.tau
    n_pass = 0
    chunk = max(1, 4_000_000 // pts.shape[0])
    for start in range(0, n_samples, chunk):
        block = samples[start : start + chunk]
        worst = (np.abs(block @ pts.T) * weights).min(axis=1)
        n_pass += int(np.count_nonzero(worst >= params.gamma))
    return n_pass / n_samples
