"""Kernel functions and the rescaled empirical kernel matrix.

Three univariate kernel families are supported:

* ``polynomial`` with integer degree ``D``:  (1 + u*v)**D
* ``gaussian`` with bandwidth ``h``:         exp(-(u - v)**2 / (2*h**2))
* ``sobolev1`` (first-order Sobolev):        min(u, v), intended for [0, 1]

The empirical kernel matrix carries a 1/n scaling, ``K[i, j] =
kernel(x_i, x_j) / n``, which keeps its spectrum on the same scale as the
population eigenvalues of the kernel integral operator.  Its symmetric
eigendecomposition (eigenvalues sorted descending, round-off negatives
clamped to zero) is computed lazily and cached, since it is the dominant
O(n^3) cost and every downstream diagnostic reuses it.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError

__all__ = [
    "KernelSpec",
    "DesignPoints",
    "KernelMatrix",
    "kernel_eval",
    "build_kernel_matrix",
    "eigendecompose",
]

# Eigenvalues above -EIG_CLAMP_REL * mu_1 are treated as round-off and
# clamped to zero; anything more negative means the matrix is not PSD.
EIG_CLAMP_REL = 1e-10


@dataclass(frozen=True)
class KernelSpec:
    """Selects a kernel family and its hyperparameter.

    Use the factory classmethods rather than the raw constructor::

        KernelSpec.polynomial(3)
        KernelSpec.gaussian(0.25)
        KernelSpec.sobolev1()
    """

    kind: str
    degree: int | None = None
    bandwidth: float | None = None

    def __post_init__(self) -> None:
        if self.kind == "polynomial":
            if self.degree is None or int(self.degree) != self.degree or self.degree < 1:
                raise DomainError(f"polynomial kernel needs integer degree >= 1, got {self.degree!r}")
            if self.bandwidth is not None:
                raise DomainError("polynomial kernel takes no bandwidth")
        elif self.kind == "gaussian":
            if self.bandwidth is None or not self.bandwidth > 0:
                raise DomainError(f"gaussian kernel needs bandwidth > 0, got {self.bandwidth!r}")
            if self.degree is not None:
                raise DomainError("gaussian kernel takes no degree")
        elif self.kind == "sobolev1":
            if self.degree is not None or self.bandwidth is not None:
                raise DomainError("sobolev1 kernel takes no hyperparameters")
        else:
            raise DomainError(f"unknown kernel kind {self.kind!r}")

    @classmethod
    def polynomial(cls, degree: int) -> "KernelSpec":
        return cls("polynomial", degree=int(degree))

    @classmethod
    def gaussian(cls, bandwidth: float) -> "KernelSpec":
        return cls("gaussian", bandwidth=float(bandwidth))

    @classmethod
    def sobolev1(cls) -> "KernelSpec":
        return cls("sobolev1")


@dataclass(frozen=True)
class DesignPoints:
    """An ordered sequence of n scalar covariates."""

    x: np.ndarray

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=np.float64)
        if x.ndim != 1 or x.size < 1:
            raise DomainError("design points must be a nonempty 1-D sequence")
        if not np.isfinite(x).all():
            raise DomainError("design points must be finite")
        x = x.copy()
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return self.x.size


def kernel_eval(spec: KernelSpec, u, v):
    """Evaluate the kernel at (u, v); u and v may be scalars or broadcastable arrays."""
    ua = np.asarray(u, dtype=np.float64)
    va = np.asarray(v, dtype=np.float64)
    if not (np.isfinite(ua).all() and np.isfinite(va).all()):
        raise DomainError("kernel arguments must be finite")
    if spec.kind == "polynomial":
        out = (1.0 + ua * va) ** spec.degree
    elif spec.kind == "gaussian":
        d = ua - va
        out = np.exp(-(d * d) / (2.0 * spec.bandwidth**2))
    else:  # sobolev1
        out = np.minimum(ua, va)
    if np.ndim(u) == 0 and np.ndim(v) == 0:
        return float(out)
    return out


class KernelMatrix:
    """Symmetric n x n kernel matrix with a cached eigendecomposition.

    The matrix is immutable after construction.  The decomposition is
    computed on first access and cached; compute it eagerly (``.eig()``)
    before sharing an instance across threads.
    """

    def __init__(self, matrix: np.ndarray):
        K = np.asarray(matrix, dtype=np.float64)
        if K.ndim != 2 or K.shape[0] != K.shape[1] or K.shape[0] < 1:
            raise DomainError("kernel matrix must be square and nonempty")
        if not np.isfinite(K).all():
            raise DomainError("kernel matrix must be finite")
        if not np.array_equal(K, K.T):
            raise DomainError("kernel matrix must be exactly symmetric")
        K = K.copy()
        K.setflags(write=False)
        self._matrix = K
        self._eig: tuple[np.ndarray, np.ndarray] | None = None

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def n(self) -> int:
        return self._matrix.shape[0]

    def eig(self) -> tuple[np.ndarray, np.ndarray]:
        """Return (U, mu_hat) with K = U diag(mu_hat) U^T, mu_hat descending."""
        if self._eig is None:
            self._eig = _eigh_descending(self._matrix)
        return self._eig

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.eig()[1]

    @property
    def eigenvectors(self) -> np.ndarray:
        return self.eig()[0]

    def __repr__(self) -> str:  # pragma: no cover
        state = "decomposed" if self._eig is not None else "lazy"
        return f"KernelMatrix(n={self.n}, {state})"


def build_kernel_matrix(spec: KernelSpec, pts: DesignPoints) -> KernelMatrix:
    """Build K with K[i, j] = kernel(x_i, x_j) / n.

    Both triangles are filled from a single evaluation of the upper one, so
    the result is exactly symmetric.  No eigendecomposition is performed.
    """
    x = pts.x
    n = pts.n
    if spec.kind == "sobolev1" and (x.min() < 0.0 or x.max() > 1.0):
        warnings.warn("sobolev1 kernel is intended for covariates in [0, 1]", stacklevel=2)
    full = kernel_eval(spec, x[:, None], x[None, :]) / n
    K = np.empty((n, n))
    iu = np.triu_indices(n)
    K[iu] = full[iu]
    K.T[iu] = full[iu]
    return KernelMatrix(K)


def eigendecompose(K: KernelMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Decompose (and cache) K = U diag(mu_hat) U^T.

    Eigenvalues are sorted descending and clamped at zero; a value below
    -1e-10 * mu_1 indicates the matrix is not PSD at working precision and
    raises :class:`NumericalError`.
    """
    return K.eig()


def _eigh_descending(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        w, v = np.linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    top = max(float(w[0]), 0.0)
    thresh = EIG_CLAMP_REL * top
    if w[-1] < -thresh:
        raise NumericalError(
            f"matrix is not PSD at working precision: min eigenvalue {w[-1]:.3e} "
            f"vs clamp threshold {-thresh:.3e}"
        )
    np.clip(w, 0.0, None, out=w)
    w.setflags(write=False)
    v.setflags(write=False)
    return v, w
