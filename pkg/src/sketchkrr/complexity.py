"""Kernel complexity function, critical radius, and statistical dimension.

Given a spectrum mu_1 >= mu_2 >= ... >= 0 and a sample count n, the
complexity at level delta is the truncated-eigenvalue sum

    R(delta) = sqrt( (1/n) * sum_j min(delta^2, mu_j) ),

which is nondecreasing in delta while R(delta)/delta is nonincreasing.  The
critical radius delta_n is the smallest delta > 0 with
R(delta)/delta <= delta/sigma; because the left side decreases and the
right side increases, it is found by bracketing then bisection.  The
statistical dimension d_n counts the eigenvalues exceeding delta_n^2 and
plays the role of an effective degrees-of-freedom (and of the target
sketch size).

The module also provides population-level spectra for the three built-in
kernel families, used for rate checks against the known decay of delta_n^2
(~ 1/n for a rank-(D+1) polynomial kernel, ~ sqrt(log n)/n for the
gaussian kernel, ~ n^(-2/3) for the first-order Sobolev kernel).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError
from .kernels import KernelSpec

__all__ = [
    "ComplexityProfile",
    "kernel_complexity",
    "critical_radius",
    "statistical_dimension",
    "complexity_profile",
    "population_eigenvalues",
    "rate_exponent_check",
]

BISECT_REL_TOL = 1e-10
BISECT_MAX_STEPS = 200


@dataclass(frozen=True)
class ComplexityProfile:
    """Critical radius and statistical dimension of one kernel matrix."""

    sigma: float
    delta_n: float
    delta_n_sq: float
    d_n: int
    n: int


def _check_spectrum(mu_hat) -> np.ndarray:
    mu = np.asarray(mu_hat, dtype=np.float64)
    if mu.ndim != 1 or mu.size < 1:
        raise DomainError("spectrum must be a nonempty 1-D sequence")
    if not np.isfinite(mu).all() or mu.min() < 0.0:
        raise DomainError("spectrum must be finite and nonnegative")
    return mu


def kernel_complexity(mu_hat, n: int, delta: float) -> float:
    """R(delta) = sqrt((1/n) * sum_j min(delta^2, mu_j))."""
    mu = _check_spectrum(mu_hat)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not delta >= 0.0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    return float(np.sqrt(np.minimum(delta * delta, mu).sum() / n))


def critical_radius(mu_hat, n: int, sigma: float) -> float:
    """Smallest delta > 0 with R(delta)/delta <= delta/sigma.

    Returns 0.0 for an all-zero spectrum (the inequality then holds for
    every positive delta).  Found by halving/doubling until the sign change
    is bracketed, then bisecting to relative tolerance 1e-10; the returned
    value sits on the feasible side of the bracket.
    """
    mu = _check_spectrum(mu_hat)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not sigma > 0.0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    if mu.max() == 0.0:
        return 0.0

    def excess(delta: float) -> float:
        # R(delta)/delta - delta/sigma; strictly decreasing in delta
        return np.sqrt(np.minimum(delta * delta, mu).sum() / n) / delta - delta / sigma

    lo = min(sigma, 1e-3)
    while excess(lo) <= 0.0:
        lo /= 2.0
        if lo < 1e-300:
            return 0.0
    hi = lo
    doublings = 0
    while excess(hi) > 0.0:
        hi *= 2.0
        doublings += 1
        if doublings > BISECT_MAX_STEPS:
            raise NumericalError("critical radius bracketing did not terminate")
    for _ in range(BISECT_MAX_STEPS):
        if hi - lo <= BISECT_REL_TOL * hi:
            break
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    else:
        raise NumericalError("critical radius bisection did not converge")
    return hi


def statistical_dimension(mu_hat, delta_n: float) -> int:
    """Number of eigenvalues strictly above delta_n^2 (n if all exceed it)."""
    mu = _check_spectrum(mu_hat)
    return int((mu > delta_n * delta_n).sum())


def complexity_profile(mu_hat, n: int, sigma: float) -> ComplexityProfile:
    """Critical radius and statistical dimension for one spectrum."""
    delta_n = critical_radius(mu_hat, n, sigma)
    d_n = statistical_dimension(mu_hat, delta_n)
    return ComplexityProfile(
        sigma=float(sigma), delta_n=delta_n, delta_n_sq=delta_n * delta_n, d_n=d_n, n=int(n)
    )


def population_eigenvalues(spec: KernelSpec, j_max: int) -> np.ndarray:
    """First j_max population eigenvalues of the kernel integral operator.

    polynomial(D): rank model with D+1 unit eigenvalues, zero beyond.
    gaussian(h):   exp(-pi * h^2 * j^2).
    sobolev1:      (2 / ((2j - 1) * pi))^2.
    """
    if j_max < 1:
        raise DomainError(f"j_max must be >= 1, got {j_max}")
    j = np.arange(1, j_max + 1, dtype=np.float64)
    if spec.kind == "polynomial":
        return np.where(j <= spec.degree + 1, 1.0, 0.0)
    if spec.kind == "gaussian":
        return np.exp(-np.pi * spec.bandwidth**2 * j**2)
    return (2.0 / ((2.0 * j - 1.0) * np.pi)) ** 2


def rate_exponent_check(spec: KernelSpec, n_grid, sigma: float) -> float:
    """Least-squares slope of log(delta_n^2) against log(n).

    delta_n is computed from the population spectrum truncated at j_max = n
    for each n in the grid.  The slope estimates the decay exponent of the
    squared critical radius (-1 for polynomial, -2/3 for sobolev1, -1 up to
    a slowly varying factor for gaussian).
    """
    ns = np.asarray(n_grid, dtype=np.int64)
    if ns.size < 4 or (np.diff(ns) <= 0).any():
        raise DomainError("n_grid must be increasing with at least 4 entries")
    log_dsq = np.empty(ns.size)
    for i, n in enumerate(ns):
        mu = population_eigenvalues(spec, int(n))
        delta = critical_radius(mu, int(n), sigma)
        log_dsq[i] = np.log(delta * delta)
    slope = np.polyfit(np.log(ns.astype(np.float64)), log_dsq, 1)[0]
    return float(slope)
