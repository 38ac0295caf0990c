"""Independent oracles shared by the test modules.

These deliberately avoid the library's own fast paths: the Hadamard matrix
is built by Sylvester recursion, the critical radius by brute-force grid
scan, and the ROS operator by direct matrix assembly.
"""

import numpy as np

from sketchkrr import SketchOperator


def naive_hadamard(n: int) -> np.ndarray:
    """Unnormalized +-1 Hadamard matrix by Sylvester doubling."""
    assert n >= 1 and (n & (n - 1)) == 0
    H = np.array([[1.0]])
    while H.shape[0] < n:
        H = np.block([[H, H], [H, -H]])
    return H


def ros_dense_oracle(S: SketchOperator) -> np.ndarray:
    """Dense ROS matrix assembled from the explicit Hadamard matrix."""
    assert S.kind == "ros"
    H = naive_hadamard(S.n_pad) / np.sqrt(S.n_pad)
    return S.scale * (H[S.indices] * S.signs[None, :])[:, : S.n]


def grid_critical_radius(mu, n: int, sigma: float, step: float = 1e-6) -> float:
    """Smallest grid point delta in (0, 1] with R(delta)/delta <= delta/sigma."""
    mu = np.asarray(mu, dtype=np.float64)
    chunk = 50_000
    for start in range(0, 1_000_000, chunk):
        deltas = (np.arange(start, start + chunk) + 1) * step
        # R(delta)/delta <= delta/sigma  <=>  R(delta)^2 <= delta^4 / sigma^2
        rsq = np.minimum(deltas[:, None] ** 2, mu[None, :]).sum(axis=1) / n
        ok = rsq <= deltas**4 / sigma**2
        if ok.any():
            return float(deltas[np.argmax(ok)])
    raise AssertionError("no grid point satisfied the critical inequality")


def sobolev_uniform_matrix(n: int) -> np.ndarray:
    """min(x_i, x_j)/n on the uniform grid x_i = i/n."""
    x = np.arange(1, n + 1, dtype=np.float64) / n
    return np.minimum.outer(x, x) / n


def rel_dev(a, b) -> float:
    """Max deviation relative to the larger of 1 and the operand scales."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    scale = max(1.0, float(np.abs(a).max(initial=0.0)), float(np.abs(b).max(initial=0.0)))
    return float(np.abs(a - b).max(initial=0.0)) / scale
