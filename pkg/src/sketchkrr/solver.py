"""Exact, sketched, and dual solvers for the kernel ridge regression program.

With the 1/n-scaled kernel matrix K, the exact coefficient vector solves

    min_w  (1/2) w^T K^2 w - w^T K y / sqrt(n) + lam * w^T K w,

whose stationarity condition is K[(K + 2*lam*I) w - y/sqrt(n)] = 0; the
shifted system (K + 2*lam*I) w = y/sqrt(n) is solved directly (positive
definite for lam > 0).  The fitted function is f(.) = (1/sqrt(n)) *
sum_i w_i kernel(., x_i), so the training-point values are sqrt(n) * K w.

The sketched program restricts w to the row span of an m x n sketch S,
w = S^T a, giving the m-dimensional normal equations

    (S K^2 S^T + 2*lam * S K S^T) a = S K y / sqrt(n).

A rank-deficient system falls back to the minimum-norm least-squares
solution (eigenvalues below 1e-12 of the largest truncated) and the result
is flagged.  The same normal equations with y replaced by the noiseless
values z* give the zero-noise projected solution, whose fitted values
split the prediction error into approximation and estimation parts:

    (1/2) ||fhat - f*||_n^2  <=  ||fdag - f*||_n^2 + ||fdag - fhat||_n^2.

Two dual routes are provided as independent checks: the ridge dual
xi = [(n/(2*lam)) K + n I]^{-1} y with w = (sqrt(n)/(2*lam)) xi, and its
sketched counterpart with K replaced by the low-rank surrogate
Ktil = K S^T (S K S^T)^+ S K, which for a sub-sampling sketch is exactly
the Nystrom approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import DomainError, NumericalError
from .kernels import DesignPoints, KernelMatrix, KernelSpec, kernel_eval
from .sketch import SketchOperator, apply_sketch, apply_sketch_t

__all__ = [
    "FitResult",
    "RegressionSample",
    "solve_krr",
    "solve_sketched_krr",
    "solve_zero_noise",
    "error_decomposition",
    "predict",
    "empirical_error",
    "solve_dual_krr",
    "solve_nystrom_dual",
    "krr_objective",
    "sketched_krr_objective",
    "zero_noise_objective",
]

# singular values below PINV_REL_CUTOFF * largest are truncated
PINV_REL_CUTOFF = 1e-12


@dataclass(frozen=True)
class RegressionSample:
    """Design points, responses, and (optionally) the true function values."""

    pts: DesignPoints
    y: np.ndarray
    fstar: np.ndarray | None = None
    sigma: float = 0.0

    def __post_init__(self) -> None:
        y = np.asarray(self.y, dtype=np.float64)
        if y.shape != (self.pts.n,):
            raise DomainError(f"y must have length n={self.pts.n}")
        object.__setattr__(self, "y", y)
        if self.fstar is not None:
            f = np.asarray(self.fstar, dtype=np.float64)
            if f.shape != (self.pts.n,):
                raise DomainError(f"fstar must have length n={self.pts.n}")
            object.__setattr__(self, "fstar", f)

    @property
    def n(self) -> int:
        return self.pts.n


@dataclass(frozen=True)
class FitResult:
    """Solver output.

    ``coefficients`` is the n-vector w for variant ``exact`` and the
    m-vector a for variants ``sketched`` / ``nystrom_dual`` (the implied
    expansion weights are then S^T a).  ``fitted`` holds the training-point
    values of the fitted function.  ``rank_deficient`` is set when a
    singular system was resolved by minimum-norm pseudo-inversion.
    """

    variant: str
    coefficients: np.ndarray
    sketch: SketchOperator | None
    lambda_n: float
    fitted: np.ndarray
    rank_deficient: bool = False

    def expansion_weights(self) -> np.ndarray:
        """Length-n kernel expansion weights (S^T a for sketched fits)."""
        if self.sketch is None:
            return self.coefficients
        return apply_sketch_t(self.sketch, self.coefficients)


def _check_vector(v, n: int, name: str) -> np.ndarray:
    a = np.asarray(v, dtype=np.float64)
    if a.shape != (n,):
        raise DomainError(f"{name} must be a length-{n} vector, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise DomainError(f"{name} must be finite")
    return a


def _check_lambda(lambda_n: float) -> float:
    if not lambda_n > 0.0:
        raise DomainError(f"lambda_n must be > 0, got {lambda_n}")
    return float(lambda_n)


def _solve_psd(A: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, bool]:
    """Solve A x = b for symmetric PSD A.

    Cholesky on the definite path; on failure, the minimum-norm
    least-squares solution with spectrum truncated at PINV_REL_CUTOFF
    relative, flagged as rank-deficient when truncation removed directions.
    """
    try:
        c = sla.cho_factor(A, lower=True, check_finite=False)
        return sla.cho_solve(c, b, check_finite=False), False
    except np.linalg.LinAlgError:
        pass
    w, V = np.linalg.eigh(A)
    cutoff = PINV_REL_CUTOFF * max(float(w[-1]), 0.0)
    keep = w > cutoff
    x = V[:, keep] @ ((V[:, keep].T @ b) / w[keep])
    return x, bool(keep.sum() < A.shape[0])


def _pinv_psd(A: np.ndarray) -> tuple[np.ndarray, bool]:
    """Pseudo-inverse of a symmetric PSD matrix with relative cutoff."""
    w, V = np.linalg.eigh(A)
    cutoff = PINV_REL_CUTOFF * max(float(w[-1]), 0.0)
    keep = w > cutoff
    pinv = (V[:, keep] / w[keep]) @ V[:, keep].T
    return pinv, bool(keep.sum() < A.shape[0])


def solve_krr(K: KernelMatrix, y, lambda_n: float) -> FitResult:
    """Exact kernel ridge regression: (K + 2*lam*I) w = y / sqrt(n)."""
    lam = _check_lambda(lambda_n)
    yv = _check_vector(y, K.n, "y")
    A = K.matrix + 2.0 * lam * np.eye(K.n)
    try:
        c = sla.cho_factor(A, lower=True, check_finite=False)
        omega = sla.cho_solve(c, yv / np.sqrt(K.n), check_finite=False)
    except np.linalg.LinAlgError as exc:  # unreachable for lam > 0 and PSD K
        raise NumericalError(f"shifted kernel system could not be solved: {exc}") from exc
    fitted = np.sqrt(K.n) * (K.matrix @ omega)
    return FitResult("exact", omega, None, lam, fitted)


def _sketched_normal_system(
    K: KernelMatrix, S: SketchOperator
) -> tuple[np.ndarray, np.ndarray]:
    """The m x n product S K and the m x m Gram S K S^T, each computed
    once via the fast apply path and shared by the solvers."""
    if S.n != K.n:
        raise DomainError(f"sketch ambient dimension {S.n} != kernel size {K.n}")
    SK = apply_sketch(S, K.matrix)
    SKSt = apply_sketch(S, SK.T)
    return SK, SKSt


def _solve_sketched(
    K: KernelMatrix, rhs: np.ndarray, S: SketchOperator, lam: float,
    SK: np.ndarray, SKSt: np.ndarray,
) -> tuple[np.ndarray, np.ndarray, bool]:
    A = SK @ SK.T + 2.0 * lam * SKSt
    b = SK @ rhs / np.sqrt(K.n)
    alpha, rank_def = _solve_psd(A, b)
    fitted = np.sqrt(K.n) * (SK.T @ alpha)
    return alpha, fitted, rank_def


def solve_sketched_krr(K: KernelMatrix, y, S: SketchOperator, lambda_n: float) -> FitResult:
    """Sketched KRR: (S K^2 S^T + 2*lam * S K S^T) a = S K y / sqrt(n)."""
    lam = _check_lambda(lambda_n)
    yv = _check_vector(y, K.n, "y")
    SK, SKSt = _sketched_normal_system(K, S)
    alpha, fitted, rank_def = _solve_sketched(K, yv, S, lam, SK, SKSt)
    return FitResult("sketched", alpha, S, lam, fitted, rank_deficient=rank_def)


def solve_zero_noise(K: KernelMatrix, z_star, S: SketchOperator, lambda_n: float) -> np.ndarray:
    """Coefficients of the noiseless projected program.

    Minimizes (1/(2n)) ||z* - sqrt(n) K S^T a||^2 + lam ||sqrt(K) S^T a||^2,
    whose normal equations are the sketched KRR system with y replaced by
    the true values z*.
    """
    return solve_sketched_krr(K, z_star, S, lambda_n).coefficients


def error_decomposition(
    K: KernelMatrix, z_star, y, S: SketchOperator, lambda_n: float
) -> tuple[float, float, float]:
    """(approximation, estimation, total) squared empirical errors.

    approximation = ||fdag - f*||_n^2 for the zero-noise fit fdag,
    estimation    = ||fdag - fhat||_n^2 against the noisy fit fhat,
    total         = ||fhat - f*||_n^2; half the total never exceeds their sum.
    """
    lam = _check_lambda(lambda_n)
    zv = _check_vector(z_star, K.n, "z_star")
    yv = _check_vector(y, K.n, "y")
    SK, SKSt = _sketched_normal_system(K, S)
    _, fitted_hat, _ = _solve_sketched(K, yv, S, lam, SK, SKSt)
    _, fitted_dag, _ = _solve_sketched(K, zv, S, lam, SK, SKSt)
    approx = empirical_error(fitted_dag, zv)
    est = empirical_error(fitted_dag, fitted_hat)
    total = empirical_error(fitted_hat, zv)
    return approx, est, total


def predict(fit: FitResult, spec: KernelSpec, train: DesignPoints, query) -> np.ndarray | float:
    """Evaluate the fitted kernel expansion at query points.

    f(q) = (1/sqrt(n)) * sum_i w_i kernel(q, x_i) with w the expansion
    weights of the fit; at the training points this reproduces ``fitted``.
    """
    w = fit.expansion_weights()
    if w.shape != (train.n,):
        raise DomainError("fit is inconsistent with the training points")
    q = np.asarray(query, dtype=np.float64)
    vals = kernel_eval(spec, q[..., None], train.x) @ w / np.sqrt(train.n)
    if q.ndim == 0:
        return float(vals)
    return vals


def empirical_error(fhat_vals, fstar_vals) -> float:
    """Squared empirical error (1/n) sum_i (fhat(x_i) - f*(x_i))^2."""
    a = np.asarray(fhat_vals, dtype=np.float64)
    b = np.asarray(fstar_vals, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1 or a.size < 1:
        raise DomainError(f"value vectors must share a 1-D shape, got {a.shape} and {b.shape}")
    d = a - b
    return float(d @ d / a.size)


def solve_dual_krr(K: KernelMatrix, y, lambda_n: float) -> tuple[np.ndarray, np.ndarray]:
    """Dual route to exact KRR.

    Maximizes -(n/(4*lam)) xi^T K xi + xi^T y - (n/2) xi^T xi, i.e. solves
    [(n/(2*lam)) K + n I] xi = y, and recovers w = (sqrt(n)/(2*lam)) xi,
    which matches the primal coefficients.
    """
    lam = _check_lambda(lambda_n)
    yv = _check_vector(y, K.n, "y")
    n = K.n
    A = (n / (2.0 * lam)) * K.matrix + n * np.eye(n)
    try:
        c = sla.cho_factor(A, lower=True, check_finite=False)
        xi = sla.cho_solve(c, yv, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"dual system could not be solved: {exc}") from exc
    omega = (np.sqrt(n) / (2.0 * lam)) * xi
    return xi, omega


def solve_nystrom_dual(K: KernelMatrix, y, S: SketchOperator, lambda_n: float) -> FitResult:
    """Sketched KRR through the dual with the low-rank surrogate
    Ktil = K S^T (S K S^T)^+ S K.

    For a sub-sampling sketch Ktil is the Nystrom approximation of K. The
    dual solve [(n/(2*lam)) Ktil + n I] xi = y recovers
    a = (sqrt(n)/(2*lam)) (S K S^T)^+ S K xi, whose fitted values coincide
    with the primal sketched solution.  Severe ill-conditioning of
    S K S^T is absorbed by the pseudo-inverse and flagged.
    """
    lam = _check_lambda(lambda_n)
    yv = _check_vector(y, K.n, "y")
    n = K.n
    SK, SKSt = _sketched_normal_system(K, S)
    gram_pinv, ill = _pinv_psd(0.5 * (SKSt + SKSt.T))
    Ktil = SK.T @ (gram_pinv @ SK)
    A = (n / (2.0 * lam)) * Ktil + n * np.eye(n)
    try:
        c = sla.cho_factor(0.5 * (A + A.T), lower=True, check_finite=False)
        xi = sla.cho_solve(c, yv, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"Nystrom dual system could not be solved: {exc}") from exc
    alpha = (np.sqrt(n) / (2.0 * lam)) * (gram_pinv @ (SK @ xi))
    fitted = np.sqrt(n) * (SK.T @ alpha)
    return FitResult("nystrom_dual", alpha, S, lam, fitted, rank_deficient=ill)


def krr_objective(K: KernelMatrix, y, lambda_n: float, omega) -> float:
    """Objective of the exact program at coefficients omega."""
    yv = _check_vector(y, K.n, "y")
    w = _check_vector(omega, K.n, "omega")
    Kw = K.matrix @ w
    return float(0.5 * (Kw @ Kw) - Kw @ yv / np.sqrt(K.n) + lambda_n * (w @ Kw))


def sketched_krr_objective(K: KernelMatrix, y, S: SketchOperator, lambda_n: float, alpha) -> float:
    """Objective of the sketched program at coefficients alpha."""
    return krr_objective(K, y, lambda_n, apply_sketch_t(S, np.asarray(alpha, dtype=np.float64)))


def zero_noise_objective(K: KernelMatrix, z_star, S: SketchOperator, lambda_n: float, alpha) -> float:
    """Objective of the noiseless projected program at coefficients alpha."""
    zv = _check_vector(z_star, K.n, "z_star")
    w = apply_sketch_t(S, np.asarray(alpha, dtype=np.float64))
    r = zv - np.sqrt(K.n) * (K.matrix @ w)
    return float(r @ r / (2.0 * K.n) + lambda_n * (w @ (K.matrix @ w)))
