import math

import numpy as np
import pytest

from helpers import sobolev_uniform_matrix
from sketchkrr import (
    ComplexityProfile,
    DomainError,
    KernelMatrix,
    check_k_satisfiable,
    complexity_profile,
    draw_sketch,
    identity_sketch,
    materialize,
    recommended_sketch_dim,
)


@pytest.fixture(scope="module")
def sobolev_setup():
    n = 128
    K = KernelMatrix(sobolev_uniform_matrix(n))
    profile = complexity_profile(K.eigenvalues, n, 1.0)
    return n, K, profile


class TestCheckKSatisfiable:
    def test_leading_eigenvector_sketch_is_perfect(self, sobolev_setup):
        n, K, profile = sobolev_setup
        U = K.eigenvectors
        report = check_k_satisfiable(U[:, : profile.d_n].T, K, profile)
        assert report.lhs_isometry <= 1e-10
        assert report.lhs_tail <= 1e-10
        assert report.passed

    def test_identity_sketch(self, sobolev_setup):
        n, K, profile = sobolev_setup
        report = check_k_satisfiable(identity_sketch(n), K, profile)
        assert report.lhs_isometry <= 1e-10
        # tail block keeps orthonormal rows, so its norm is sqrt(mu_{d_n+1})
        mu = K.eigenvalues
        np.testing.assert_allclose(report.lhs_tail, np.sqrt(mu[profile.d_n]), rtol=1e-10)
        assert report.lhs_tail <= profile.delta_n
        assert check_k_satisfiable(identity_sketch(n), K, profile, c_threshold=1.0).passed

    def test_empty_head_is_vacuous(self, sobolev_setup):
        n, K, _ = sobolev_setup
        huge = ComplexityProfile(sigma=1.0, delta_n=10.0, delta_n_sq=100.0, d_n=0, n=n)
        report = check_k_satisfiable(draw_sketch("gaussian", 4, n, 0), K, huge)
        assert report.lhs_isometry == 0.0

    def test_full_head_has_zero_tail(self, sobolev_setup):
        n, K, _ = sobolev_setup
        full = ComplexityProfile(sigma=1.0, delta_n=0.0, delta_n_sq=0.0, d_n=n, n=n)
        report = check_k_satisfiable(draw_sketch("gaussian", n, n, 0), K, full)
        assert report.lhs_tail == 0.0

    def test_scaling_up_never_helps(self, sobolev_setup):
        # at t = 2 both raw norms grow for near-isometric draws
        n, K, profile = sobolev_setup
        for seed in range(10):
            S = materialize(draw_sketch("gaussian", 8 * max(profile.d_n, 1), n, seed))
            base = check_k_satisfiable(S, K, profile)
            doubled = check_k_satisfiable(2.0 * S, K, profile)
            assert doubled.lhs_isometry >= base.lhs_isometry - 1e-12
            assert doubled.lhs_tail >= base.lhs_tail - 1e-12

    def test_isometry_error_improves_with_sketch_size(self, sobolev_setup):
        n, K, profile = sobolev_setup
        d = max(profile.d_n, 1)
        medians = []
        for mult in (1, 2, 4, 8):
            vals = [
                check_k_satisfiable(
                    draw_sketch("gaussian", min(mult * d, n), n, 100 * mult + s), K, profile
                ).lhs_isometry
                for s in range(50)
            ]
            medians.append(np.median(vals))
        assert all(a >= b for a, b in zip(medians, medians[1:]))

    def test_pass_flag_consistent_with_thresholds(self, sobolev_setup):
        n, K, profile = sobolev_setup
        for seed in range(20):
            S = draw_sketch("gaussian", 16, n, seed)
            r = check_k_satisfiable(S, K, profile, c_threshold=2.0)
            assert r.passed == (r.lhs_isometry <= 0.5 and r.lhs_tail <= 2.0 * r.delta_n)

    def test_wrong_width_rejected(self, sobolev_setup):
        n, K, profile = sobolev_setup
        with pytest.raises(DomainError):
            check_k_satisfiable(np.ones((2, n + 1)), K, profile)


class TestRecommendedSketchDim:
    def test_gaussian_rule(self):
        assert recommended_sketch_dim("gaussian", 5, 100, 2.0) == 10

    def test_ros_log_factor_collapses_at_n_e(self):
        assert recommended_sketch_dim("ros", 1, math.e, 1.0) == 1

    def test_clamped_to_ambient_dimension(self):
        assert recommended_sketch_dim("gaussian", 50, 50, 2.0) == 50
        assert recommended_sketch_dim("ros", 10, 64, 3.0) == 64

    def test_ros_rule_value(self):
        n, d, c = 1024, 3, 1.5
        expected = math.ceil(c * d * math.log(n) ** 4)
        assert recommended_sketch_dim("ros", d, n, c) == min(expected, n)

    def test_rejects_bad_inputs(self):
        with pytest.raises(DomainError):
            recommended_sketch_dim("gaussian", 0, 10, 1.0)
        with pytest.raises(DomainError):
            recommended_sketch_dim("subsample", 2, 10, 1.0)
