"""Tests for the measurement model and its derived quantities."""

import math

import numpy as np
import pytest

import rdl
from rdl import gauss
from rdl.errors import InvalidParams

# Frozen fixtures for the demo system (alpha=1, beta=8, sigma1_sq=0.05,
# sigma2_sq=1).  Each value was established by two independent routes:
# the closed forms below and Schur-complement conditioning on the
# assembled joint; the routes agreed to ~1e-15 before freezing.
DEMO_EXPECTED = {
    "v1": 2.05,
    "v2": 66.0,
    "e": 9.0,
    "det": 54.3,
    "k1": -0.11049723756906081,   # -6 / 54.3
    "k2": 0.13627992633517497,    # 7.4 / 54.3
    "l1": 1.0497237569060778,     # 57 / 54.3
    "l2": -0.12799263351749543,   # -6.95 / 54.3
    "d_min_1": 0.02025782688766109,   # 1.1 / 54.3
    "d_min_2": 0.07826887661141779,   # 4.25 / 54.3
    "d_max_1": 0.5121951219512195,    # 1.05 / 2.05
    "d_max_2": 0.9848484848484849,    # 65 / 66
    "l1_min": 2.5221970596792266,     # 0.5 * log2(66 / 2)
    "l1_max": 2.8126883845835295,     # 0.5 * log2(54.3 / 1.1)
    "l2_min": 0.4826172909196618,     # 0.5 * log2(2.05 / 1.05)
    "l2_max": 1.8377087258333322,     # 0.5 * log2(54.3 / 4.25)
}


class TestSystemParams:
    def test_rejects_negative_gain(self):
        with pytest.raises(InvalidParams, match="alpha"):
            rdl.SystemParams(alpha=-0.1, beta=1.0, sigma1_sq=1.0, sigma2_sq=1.0)

    def test_rejects_zero_noise_naming_field(self):
        with pytest.raises(InvalidParams, match="sigma1_sq"):
            rdl.SystemParams(alpha=1.0, beta=1.0, sigma1_sq=0.0, sigma2_sq=1.0)
        with pytest.raises(InvalidParams, match="sigma2_sq"):
            rdl.SystemParams(alpha=1.0, beta=1.0, sigma1_sq=1.0, sigma2_sq=-2.0)

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidParams, match="beta"):
            rdl.SystemParams(alpha=1.0, beta=math.inf, sigma1_sq=1.0, sigma2_sq=1.0)


class TestDerive:
    def test_demo_fixtures(self, demo_q):
        for name, expected in DEMO_EXPECTED.items():
            assert abs(getattr(demo_q, name) - expected) < 1e-12, name

    def test_decoupled_system(self):
        q = rdl.derive(rdl.SystemParams(alpha=0.0, beta=0.0, sigma1_sq=1.0, sigma2_sq=1.0))
        assert q.v1 == 2.0 and q.v2 == 2.0 and q.e == 0.0
        assert q.d_min_1 == pytest.approx(0.5, abs=1e-15)
        assert q.d_max_1 == pytest.approx(0.5, abs=1e-15)
        assert q.k2 == 0.0 and q.l1 == 0.0
        assert q.l1_min == pytest.approx(0.0, abs=1e-12)
        assert q.l2_min == pytest.approx(0.0, abs=1e-12)

    def test_normal_equations(self, param_sampler):
        # (k1, k2) and (l1, l2) are MMSE coefficients, so they satisfy the
        # normal equations of the 2x2 measurement Gram matrix.
        gen = np.random.default_rng(41)
        for _ in range(200):
            p = param_sampler(gen)
            q = rdl.derive(p)
            assert abs(q.k1 * q.v1 + q.k2 * q.e - 1.0) < 1e-10
            assert abs(q.k1 * q.e + q.k2 * q.v2 - p.beta) < 1e-10
            assert abs(q.l1 * q.v1 + q.l2 * q.e - p.alpha) < 1e-10
            assert abs(q.l1 * q.e + q.l2 * q.v2 - 1.0) < 1e-10

    def test_distortion_bounds_match_conditioning(self, param_sampler):
        gen = np.random.default_rng(42)
        for _ in range(200):
            p = param_sampler(gen)
            q = rdl.derive(p)
            spec = rdl.assemble_joint(p)
            assert abs(q.d_min_1 - gauss.condition(spec, [0], [2, 3]).cov[0, 0]) < 1e-12
            assert abs(q.d_min_2 - gauss.condition(spec, [1], [2, 3]).cov[0, 0]) < 1e-12
            assert abs(q.d_max_1 - gauss.condition(spec, [0], [2]).cov[0, 0]) < 1e-12
            assert abs(q.d_max_2 - gauss.condition(spec, [1], [3]).cov[0, 0]) < 1e-12

    def test_swap_symmetry(self, param_sampler):
        swaps = [
            ("v1", "v2"), ("v2", "v1"), ("e", "e"), ("det", "det"),
            ("k1", "l2"), ("k2", "l1"), ("l1", "k2"), ("l2", "k1"),
            ("d_min_1", "d_min_2"), ("d_max_1", "d_max_2"),
            ("d_min_2", "d_min_1"), ("d_max_2", "d_max_1"),
            ("l1_min", "l2_min"), ("l1_max", "l2_max"),
            ("l2_min", "l1_min"), ("l2_max", "l1_max"),
        ]
        gen = np.random.default_rng(43)
        for _ in range(200):
            p = param_sampler(gen)
            q = rdl.derive(p)
            qs = rdl.derive(p.swapped())
            for mine, theirs in swaps:
                assert abs(getattr(qs, mine) - getattr(q, theirs)) < 1e-12, (mine, theirs)

    def test_leakage_bound_ordering(self, param_sampler):
        gen = np.random.default_rng(44)
        for _ in range(200):
            q = rdl.derive(param_sampler(gen))
            assert -1e-12 <= q.l1_min <= q.l1_max + 1e-12
            assert -1e-12 <= q.l2_min <= q.l2_max + 1e-12
            assert abs(q.l1_max - 0.5 * math.log2(1.0 / q.d_min_1)) < 1e-12
            assert abs(q.l2_max - 0.5 * math.log2(1.0 / q.d_min_2)) < 1e-12

    def test_leakage_floor_decreases_with_noise(self):
        # More noise at terminal 2 makes y2 less informative about x1.
        floors = []
        for sigma2_sq in np.linspace(0.1, 10.0, 12):
            q = rdl.derive(rdl.SystemParams(1.0, 8.0, 0.05, float(sigma2_sq)))
            floors.append(q.l1_min)
        assert all(a > b for a, b in zip(floors, floors[1:]))


class TestAssembleJoint:
    def test_measurement_moments(self, demo_params, demo_q):
        spec = rdl.assemble_joint(demo_params)
        assert spec.dim == 4
        assert spec.cov[2, 2] == pytest.approx(demo_q.v1, abs=1e-14)
        assert spec.cov[3, 3] == pytest.approx(demo_q.v2, abs=1e-14)
        assert spec.cov[2, 3] == pytest.approx(demo_q.e, abs=1e-14)
        assert spec.cov[0, 2] == 1.0 and spec.cov[0, 3] == demo_params.beta
        assert spec.cov[1, 2] == demo_params.alpha and spec.cov[1, 3] == 1.0

    def test_zero_quantization_copies_measurement(self, demo_params):
        spec = rdl.assemble_joint(demo_params, s1=0.0)
        assert rdl.joint_labels(True, False) == ("x1", "x2", "y1", "y2", "u1")
        assert np.array_equal(spec.cov[4, :4], spec.cov[2, :4])
        assert spec.cov[4, 4] == spec.cov[2, 2]

    def test_description_conditioning_matches_substitution(self, demo_params, demo_q):
        # Var(x1 | y1, u2) equals the joint-estimation floor with v2 -> v2+s2.
        s2 = 3.7
        spec = rdl.assemble_joint(demo_params, s2=s2)
        cond = gauss.condition(spec, [0], [2, 4]).cov[0, 0]
        b, e = demo_params.beta, demo_q.e
        w = demo_q.v2 + s2
        closed = 1.0 - (b * b * demo_q.v1 + w - 2.0 * b * e) / (demo_q.v1 * w - e * e)
        assert abs(cond - closed) < 1e-12

    def test_transform_reproduces_joint_law(self, param_sampler):
        # The simulator's structural map and the closed-form covariance
        # describe the same joint law.
        gen = np.random.default_rng(45)
        for _ in range(50):
            p = param_sampler(gen)
            s1, s2 = gen.uniform(0.0, 5.0, size=2)
            transform = rdl.joint_transform(p, s1, s2)
            implied = transform @ transform.T
            spec = rdl.assemble_joint(p, s1, s2)
            assert np.max(np.abs(implied - spec.cov)) < 1e-12

    def test_rejects_negative_quantization(self, demo_params):
        with pytest.raises(InvalidParams, match="s1"):
            rdl.assemble_joint(demo_params, s1=-0.5)
