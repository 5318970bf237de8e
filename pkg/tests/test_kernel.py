"""
Tests for the kernel, its gradients and circular mean
"""

import math

import mpmath
import numpy as np
import pytest
from numpy.testing import assert_allclose

from services.alpharm.exceptions import DomainError
from services.alpharm.kernel import (
    AlphaParameter,
    DiskPoint,
    kernel_gradients,
    kernel_mean,
    kernel_mean_slope,
    kernel_value,
)
from services.alpharm.special import c_alpha


class TestTypes:
    def test_alpha_parameter(self):
        assert AlphaParameter(2.0).polyharmonic_order == 2
        assert AlphaParameter(0.0).polyharmonic_order == 1
        assert AlphaParameter(0.5).polyharmonic_order is None
        assert AlphaParameter(2.0).c_alpha == pytest.approx(0.5)
        with pytest.raises(DomainError):
            AlphaParameter(-1.0)

    def test_disk_point(self):
        p = DiskPoint.from_polar(0.5, math.pi / 2)
        assert p.r == pytest.approx(0.5)
        assert p.theta == pytest.approx(math.pi / 2)
        assert p.w == pytest.approx(0.25)
        with pytest.raises(DomainError):
            DiskPoint(1.0)


class TestKernelValue:
    def test_center_is_c_alpha(self):
        assert kernel_value(0.0, 0j, 1.3) == pytest.approx(1.0)
        assert kernel_value(-0.5, 0j, 0.2) == pytest.approx(c_alpha(-0.5))

    def test_polyharmonic_value(self):
        assert kernel_value(2.0, 0.5, 0.0) == pytest.approx(3.375)
        mp = mpmath.mpf("0.5") * mpmath.mpf("0.75") ** 3 / mpmath.mpf("0.5") ** 4
        assert kernel_value(2.0, 0.5, 0.0) == pytest.approx(float(mp), rel=1e-14)

    @pytest.mark.parametrize("alpha", [-0.9, -0.5, 0.0, 1.0, 2.0, 5.0])
    def test_positive(self, rng, alpha):
        radius = 0.999 * np.sqrt(rng.random(200))
        angle = 2 * np.pi * rng.random(200)
        t = 2 * np.pi * rng.random(64)
        for z in radius * np.exp(1j * angle):
            assert np.all(kernel_value(alpha, z, t) > 0)

    def test_vectorised_in_t(self):
        t = np.linspace(0, 2 * np.pi, 7)
        values = kernel_value(1.0, 0.3 + 0.2j, t)
        assert values.shape == (7,)
        assert_allclose(values, [kernel_value(1.0, 0.3 + 0.2j, float(s)) for s in t])


class TestKernelGradients:
    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.0])
    def test_at_center(self, alpha):
        t = 0.7
        grad = kernel_gradients(alpha, 0j, t)
        expected = c_alpha(alpha) * (1 + alpha / 2) * complex(math.cos(t), -math.sin(t))
        assert abs(grad.dz - expected) < 1e-12
        assert abs(grad.dzbar - expected.conjugate()) < 1e-12

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.5])
    @pytest.mark.parametrize("z", [0.3 + 0.1j, -0.4 + 0.5j])
    def test_against_finite_differences(self, alpha, z):
        t, h = 1.1, 1e-6
        fx = (kernel_value(alpha, z + h, t) - kernel_value(alpha, z - h, t)) / (2 * h)
        fy = (kernel_value(alpha, z + 1j * h, t) - kernel_value(alpha, z - 1j * h, t)) / (2 * h)
        grad = kernel_gradients(alpha, z, t)
        scale = max(1.0, abs(grad.dz))
        assert abs(grad.dz - (fx - 1j * fy) / 2) < 1e-7 * scale
        assert abs(grad.dzbar - (fx + 1j * fy) / 2) < 1e-7 * scale

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 2.0])
    def test_random_points_against_finite_differences(self, rng, alpha):
        h = 1e-6
        for _ in range(100):
            z = 0.85 * math.sqrt(rng.random()) * complex(np.exp(2j * np.pi * rng.random()))
            t = 2 * math.pi * rng.random()
            fx = (kernel_value(alpha, z + h, t) - kernel_value(alpha, z - h, t)) / (2 * h)
            fy = (kernel_value(alpha, z + 1j * h, t) - kernel_value(alpha, z - 1j * h, t)) / (2 * h)
            grad = kernel_gradients(alpha, z, t)
            scale = max(1.0, abs(grad.dz))
            assert abs(grad.dz - (fx - 1j * fy) / 2) < 1e-6 * scale
            assert abs(grad.dzbar - (fx + 1j * fy) / 2) < 1e-6 * scale


class TestKernelMean:
    @pytest.mark.parametrize("alpha", [-0.99995, -0.9999])
    @pytest.mark.parametrize("r", [0.995, 0.9999])
    def test_alpha_close_to_minus_one(self, alpha, r):
        with mpmath.workdps(40):
            expected = c_alpha(alpha) * float(mpmath.hyp2f1(-alpha / 2, -alpha / 2, 1, r * r))
        assert kernel_mean(alpha, r) == pytest.approx(expected, rel=1e-8)

    def test_harmonic_mean_is_one(self):
        assert_allclose(kernel_mean(0.0, np.array([0.0, 0.3, 0.9])), 1.0)

    def test_polyharmonic_closed_form(self):
        assert kernel_mean(2.0, 0.6) == pytest.approx(0.68)

    @pytest.mark.parametrize("alpha", [-0.9, -0.5, 0.0, 1.0, 2.0, 5.0])
    def test_quadrature_matches_closed_form(self, alpha):
        radii = np.array([0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99])
        closed = kernel_mean(alpha, radii)
        quad = kernel_mean(alpha, radii, method="quadrature", n=256)
        assert_allclose(quad, closed, rtol=1e-9)

    @pytest.mark.parametrize("alpha", [-0.5, 0.5, 1.0, 2.0, 3.0])
    def test_boundary_limit_is_one(self, alpha):
        gaps = [abs(kernel_mean(alpha, 1 - 10.0 ** -j) - 1) for j in range(1, 7)]
        assert all(later < earlier for earlier, later in zip(gaps, gaps[1:]))
        assert gaps[-1] < 0.05

    def test_increasing_in_r(self):
        values = kernel_mean(1.0, np.linspace(0, 0.95, 20))
        assert np.all(np.diff(values) > 0)

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            kernel_mean(0.0, 0.5, method="simpson")

    def test_radius_outside_disk(self):
        with pytest.raises(DomainError):
            kernel_mean(0.0, 1.0)


class TestKernelMeanSlope:
    def test_polyharmonic_slope(self):
        assert kernel_mean_slope(2.0, 0.35) == pytest.approx(0.35)

    def test_harmonic_slope_vanishes(self):
        assert kernel_mean_slope(0.0, 0.7) == 0.0

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0, 3.0])
    def test_boundary_limit(self, alpha):
        assert kernel_mean_slope(alpha, limit=True) == pytest.approx(alpha / 2, abs=1e-10)

    def test_near_boundary_slope(self):
        assert kernel_mean_slope(2.0, 1 - 1e-4) == pytest.approx(1.0, rel=0.02)

    def test_limit_needs_positive_alpha(self):
        with pytest.raises(DomainError):
            kernel_mean_slope(0.0, limit=True)

    def test_matches_derivative_of_mean(self):
        h = 1e-6
        fd = (kernel_mean(-0.5, 0.6 + h) - kernel_mean(-0.5, 0.6 - h)) / (2 * h)
        assert kernel_mean_slope(-0.5, 0.6) == pytest.approx(fd, rel=1e-6)
