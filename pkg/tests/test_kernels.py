import numpy as np
import pytest

from sketchkrr import (
    DesignPoints,
    DomainError,
    KernelMatrix,
    KernelSpec,
    NumericalError,
    build_kernel_matrix,
    eigendecompose,
    kernel_eval,
)

SPECS = [
    KernelSpec.polynomial(2),
    KernelSpec.gaussian(0.25),
    KernelSpec.sobolev1(),
]


class TestKernelSpec:
    def test_factories(self):
        assert KernelSpec.polynomial(3).degree == 3
        assert KernelSpec.gaussian(0.5).bandwidth == 0.5
        assert KernelSpec.sobolev1().kind == "sobolev1"

    @pytest.mark.parametrize(
        "bad",
        [
            lambda: KernelSpec.polynomial(0),
            lambda: KernelSpec.gaussian(0.0),
            lambda: KernelSpec.gaussian(-1.0),
            lambda: KernelSpec("fourier"),
            lambda: KernelSpec("sobolev1", degree=2),
        ],
    )
    def test_invalid_specs(self, bad):
        with pytest.raises(DomainError):
            bad()


class TestKernelEval:
    def test_known_values(self):
        assert kernel_eval(KernelSpec.sobolev1(), 0.3, 0.7) == 0.3
        assert kernel_eval(KernelSpec.polynomial(2), 1.0, 1.0) == 4.0
        assert kernel_eval(KernelSpec.gaussian(0.25), 0.9, 0.9) == 1.0
        # exponent (0.5)^2 / (2 * 0.25^2) = 2
        np.testing.assert_allclose(
            kernel_eval(KernelSpec.gaussian(0.25), 0.0, 0.5), np.exp(-2.0), rtol=1e-15
        )

    @pytest.mark.parametrize("spec", SPECS)
    def test_symmetry(self, spec):
        rng = np.random.default_rng(0)
        u = rng.uniform(0, 1, 200)
        v = rng.uniform(0, 1, 200)
        np.testing.assert_array_equal(kernel_eval(spec, u, v), kernel_eval(spec, v, u))

    @pytest.mark.parametrize("spec", SPECS)
    def test_positive_semidefinite_quadratic_forms(self, spec):
        rng = np.random.default_rng(1)
        for _ in range(20):
            pts = rng.uniform(0, 1, rng.integers(1, 12))
            w = rng.standard_normal(pts.size)
            gram = kernel_eval(spec, pts[:, None], pts[None, :])
            quad = w @ gram @ w
            assert quad >= -1e-10 * max(1.0, np.abs(gram).max()) * (w @ w)

    def test_nonfinite_input_rejected(self):
        with pytest.raises(DomainError):
            kernel_eval(KernelSpec.sobolev1(), np.nan, 0.5)
        with pytest.raises(DomainError):
            kernel_eval(KernelSpec.gaussian(1.0), 0.1, np.inf)


class TestDesignPoints:
    def test_basic(self):
        pts = DesignPoints(np.array([0.1, 0.9]))
        assert pts.n == 2
        assert not pts.x.flags.writeable

    def test_invalid(self):
        with pytest.raises(DomainError):
            DesignPoints(np.array([]))
        with pytest.raises(DomainError):
            DesignPoints(np.array([[0.1], [0.2]]))
        with pytest.raises(DomainError):
            DesignPoints(np.array([0.1, np.nan]))


class TestBuildKernelMatrix:
    def test_sobolev_two_points(self):
        # min(., .)/2 on {0.5, 1.0}, evaluated by hand
        K = build_kernel_matrix(KernelSpec.sobolev1(), DesignPoints(np.array([0.5, 1.0])))
        np.testing.assert_array_equal(K.matrix, [[0.25, 0.25], [0.25, 0.5]])

    def test_single_point_keeps_full_kernel_value(self):
        spec = KernelSpec.gaussian(0.3)
        K = build_kernel_matrix(spec, DesignPoints(np.array([0.4])))
        assert K.matrix[0, 0] == kernel_eval(spec, 0.4, 0.4)

    def test_linear_kernel_repeated_origin(self):
        K = build_kernel_matrix(KernelSpec.polynomial(1), DesignPoints(np.array([0.0, 0.0])))
        np.testing.assert_array_equal(K.matrix, [[0.5, 0.5], [0.5, 0.5]])

    @pytest.mark.parametrize("spec", SPECS)
    def test_exact_symmetry(self, spec):
        rng = np.random.default_rng(2)
        K = build_kernel_matrix(spec, DesignPoints(rng.uniform(0, 1, 37)))
        assert np.abs(K.matrix - K.matrix.T).max() == 0.0

    def test_sobolev_warns_outside_unit_interval(self):
        with pytest.warns(UserWarning):
            build_kernel_matrix(KernelSpec.sobolev1(), DesignPoints(np.array([0.5, 1.5])))

    def test_matrix_is_readonly(self):
        K = build_kernel_matrix(KernelSpec.sobolev1(), DesignPoints(np.array([0.5, 1.0])))
        with pytest.raises(ValueError):
            K.matrix[0, 0] = 9.0


class TestEigendecompose:
    def test_scaled_identity(self):
        n = 5
        K = KernelMatrix(np.eye(n) / n)
        U, mu = eigendecompose(K)
        np.testing.assert_allclose(mu, np.full(n, 1.0 / n), rtol=1e-14)
        np.testing.assert_allclose(U.T @ U, np.eye(n), atol=1e-12)

    def test_two_by_two_closed_form(self):
        # characteristic polynomial of [[1/4, 1/4], [1/4, 1/2]]: roots (3 +- sqrt(5))/8
        K = KernelMatrix(np.array([[0.25, 0.25], [0.25, 0.5]]))
        _, mu = eigendecompose(K)
        np.testing.assert_allclose(mu, [(3 + np.sqrt(5)) / 8, (3 - np.sqrt(5)) / 8], rtol=1e-12)

    def test_zero_matrix(self):
        _, mu = eigendecompose(KernelMatrix(np.zeros((4, 4))))
        np.testing.assert_array_equal(mu, np.zeros(4))

    def test_roundoff_negatives_clamped(self):
        K = KernelMatrix(np.diag([1.0, -1e-12]))
        _, mu = eigendecompose(K)
        assert mu[1] == 0.0

    def test_indefinite_matrix_rejected(self):
        K = KernelMatrix(np.diag([1.0, -0.5]))
        with pytest.raises(NumericalError):
            eigendecompose(K)

    def test_decomposition_is_cached(self):
        K = build_kernel_matrix(KernelSpec.sobolev1(), DesignPoints(np.array([0.2, 0.8])))
        U1, mu1 = K.eig()
        U2, mu2 = K.eig()
        assert U1 is U2 and mu1 is mu2


class TestSpectralInvariants:
    @pytest.mark.parametrize("spec", SPECS)
    @pytest.mark.parametrize("n", [3, 17, 64, 256])
    def test_reconstruction_orthonormality_trace(self, spec, n):
        rng = np.random.default_rng(n)
        K = build_kernel_matrix(spec, DesignPoints(np.sort(rng.uniform(0, 1, n))))
        U, mu = K.eig()
        recon = (U * mu) @ U.T
        fro = np.linalg.norm(K.matrix)
        assert np.linalg.norm(recon - K.matrix) <= 1e-8 * max(1.0, fro)
        assert np.abs(U.T @ U - np.eye(n)).max() <= 1e-10
        assert abs(mu.sum() - np.trace(K.matrix)) <= 1e-10 * max(1.0, np.trace(K.matrix))
        assert (np.diff(mu) <= 1e-15).all()

    def test_polynomial_kernel_has_rank_at_most_degree_plus_one(self):
        rng = np.random.default_rng(9)
        for degree in (1, 2, 3, 5):
            n = 32
            K = build_kernel_matrix(
                KernelSpec.polynomial(degree), DesignPoints(rng.uniform(0, 1, n))
            )
            mu = K.eigenvalues
            assert (mu > 1e-8 * mu[0]).sum() <= degree + 1
