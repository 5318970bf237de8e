"""
Tests for the bound formulas, reports and harmonic extremals
"""

import math

import numpy as np
import pytest

from services.alpharm.bounds import (
    BoundReport,
    PointSample,
    bound_curves,
    center_deviation_bound,
    center_deviation_report,
    center_deviation_reports,
    coeff_extremal_solution,
    coefficient_bounds,
    colonna_extremal_gradient,
    colonna_gradient_check,
    coefficient_pair_rhs,
    gradient_bound,
    gradient_report,
    gradient_reports,
    growth_bound,
    growth_report,
    growth_reports,
    harmonic_reference,
    heinz_boundary_bound,
    heinz_value_check,
    increment_bound,
    increment_report,
    parseval_energy_bound,
    series_term_bound,
)
from services.alpharm.exceptions import DomainError
from services.alpharm.kernel import kernel_mean
from services.alpharm.solution import (
    BoundaryData,
    SeriesSolution,
    boundary_trace,
    evaluate,
    from_boundary,
    hardy_mean,
    hardy_norm,
    sup_estimate,
    trace_sup_bound,
    wirtinger_derivatives,
)
from services.alpharm.special import c_alpha


def random_solution(rng, alpha, order=6):
    coeffs = {k: complex(rng.normal(), rng.normal()) / (1 + k * k) for k in range(-order, order + 1)}
    return SeriesSolution(alpha=alpha, order=order, coeffs=coeffs)


def random_points(rng, count, radius=0.95):
    return radius * np.sqrt(rng.random(count)) * np.exp(2j * np.pi * rng.random(count))


class TestBoundReport:
    def test_slack_and_tolerance(self):
        report = BoundReport.from_sides("x", 1.0, 0.9999999, tolerance=1e-6)
        assert report.satisfied
        assert report.slack == pytest.approx(-1e-7)
        assert not BoundReport.from_sides("x", 1.0, 0.99, tolerance=1e-6).satisfied


class TestFormulas:
    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 2.0])
    def test_center_deviation_at_origin(self, alpha):
        assert center_deviation_bound(alpha, 3.0, 0j) == pytest.approx(0.0, abs=1e-15)

    def test_center_deviation_harmonic(self):
        r = 0.4
        assert center_deviation_bound(0.0, 2.0, r) == pytest.approx(2.0 * 2 * r / (1 + r))

    def test_center_deviation_polyharmonic(self):
        assert center_deviation_bound(2.0, 1.0, 0.5) == pytest.approx(0.625 - 0.125 / 3)

    def test_gradient_bound(self):
        assert gradient_bound(0.0, 1.0, 0.0) == pytest.approx(2.0)
        assert gradient_bound(0.0, 1.0, 0.0, tight=False) == pytest.approx(2.0)
        assert gradient_bound(0.0, 1.0, 0.5) == pytest.approx(4.0 / 0.75)

    def test_gradient_tight_factor(self):
        loose = gradient_bound(1.0, 1.0, 0.6, tight=False)
        assert gradient_bound(1.0, 1.0, 0.6) == pytest.approx(loose * kernel_mean(1.0, 0.6))

    def test_heinz_boundary_bound(self):
        assert heinz_boundary_bound(0.0) == pytest.approx(0.6366197723675814)
        assert heinz_boundary_bound(2.0) == pytest.approx(1.0)
        with pytest.raises(DomainError):
            heinz_boundary_bound(-0.5)

    def test_coefficient_pair_rhs_harmonic(self):
        for k in (1, 2, 7):
            assert coefficient_pair_rhs(0.0, 1.0, k) == pytest.approx(4 / math.pi)

    def test_coefficient_pair_rhs_gamma_ratio(self):
        alpha, k = 1.0, 3
        expected = 4 * math.gamma(1.5) * math.gamma(4.5) / (math.factorial(3) * math.gamma(2.0) * math.pi)
        assert coefficient_pair_rhs(alpha, 1.0, k) == pytest.approx(expected, rel=1e-12)

    def test_increment_bound(self):
        assert increment_bound(1.0, 0.0) == 0.0
        assert increment_bound(1.0, 0.5) == pytest.approx(172 / (9 * math.pi))

    def test_growth_bound(self):
        assert growth_bound(-0.5, 3.0, 2.0, 0j) == pytest.approx(c_alpha(-0.5) ** (1 / 3) * 2.0)
        r = 0.6
        assert growth_bound(0.0, 2.0, 1.5, r) == pytest.approx(1.5 * math.sqrt((1 + r) / (1 - r)))
        assert growth_bound(1.0, float("inf"), 2.0, r) == pytest.approx(2.0)
        assert growth_bound(1.0, float("inf"), 2.0, r, tight=True) == pytest.approx(2.0 * kernel_mean(1.0, r))

    def test_growth_bound_exponent(self):
        with pytest.raises(DomainError):
            growth_bound(0.0, 0.5, 1.0, 0.1)

    def test_bound_must_be_positive(self):
        with pytest.raises(DomainError):
            gradient_bound(0.0, 0.0, 0.1)


class TestHarmonicReferences:
    def test_heinz_arctan(self):
        assert harmonic_reference("heinz_arctan", 0.5j) == pytest.approx(4 / math.pi * math.atan(0.5))

    def test_colonna_center(self):
        assert harmonic_reference("colonna", 0j) == pytest.approx(4 / math.pi)

    def test_unknown_kind(self):
        with pytest.raises(DomainError):
            harmonic_reference("schwarz", 0j)

    def test_colonna_extremal_saturates_at_centre(self):
        a = 0.3 + 0.2j
        pair = colonna_extremal_gradient(a, 1j, a)
        assert pair.norm == pytest.approx(4 / (math.pi * (1 - abs(a) ** 2)), rel=1e-13)

    def test_colonna_extremal_gradient_against_finite_differences(self):
        a, z, h = 0.3 + 0.2j, 0.1 - 0.4j, 1e-6

        def f(p):
            return harmonic_reference("colonna_extremal", p, a=a, gamma=1)

        fx = (f(z + h) - f(z - h)) / (2 * h)
        fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
        pair = colonna_extremal_gradient(a, 1, z)
        assert abs(pair.fz - (fx - 1j * fy) / 2) < 1e-7
        assert abs(pair.fzbar - (fx + 1j * fy) / 2) < 1e-7

    def test_gamma_must_be_unimodular(self):
        with pytest.raises(DomainError):
            colonna_extremal_gradient(0j, 2.0, 0.1)

    def test_coeff_extremal_at_origin(self):
        assert harmonic_reference("coeff_extremal", 0j) == pytest.approx(0.0)
        sol = coeff_extremal_solution(1, 1.0, 63)
        assert wirtinger_derivatives(sol, 0j).norm == pytest.approx(4 / math.pi)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_truncated_extremal_matches_closed_form(self, k):
        sol = coeff_extremal_solution(k, 2.0, 99, epsilon=1j, vartheta=np.exp(0.4j))
        z = 0.3 + 0.25j
        closed = harmonic_reference("coeff_extremal", z, k=k, M=2.0, epsilon=1j, vartheta=np.exp(0.4j))
        assert abs(evaluate(sol, z) - closed) < 1e-12

    def test_extremal_index_range(self):
        with pytest.raises(DomainError):
            coeff_extremal_solution(5, 1.0, 4)


class TestCoefficientBounds:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_extremal_saturates(self, k):
        sol = coeff_extremal_solution(k, 1.0, 31 * k)
        weighted, constant, plain = coefficient_bounds(sol, 1.0, k)
        assert abs(weighted.slack) <= 1e-9
        assert abs(plain.slack) <= 1e-9
        assert weighted.satisfied and plain.satisfied
        assert constant.lhs == 0.0

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.0])
    def test_random_solutions(self, rng, alpha):
        for _ in range(10):
            sol = random_solution(rng, alpha)
            M = max(sup_estimate(sol), trace_sup_bound(sol, 4096))
            for k in range(1, sol.order + 1):
                assert all(report.satisfied for report in coefficient_bounds(sol, M, k, 1e-6 * M))
            assert parseval_energy_bound(sol, M, 1e-6 * M * M).satisfied

    def test_series_terms(self, rng):
        sol = random_solution(rng, -0.5)
        M = trace_sup_bound(sol, 4096)
        for n in range(5):
            assert series_term_bound(sol, M, 2, n).satisfied

    def test_series_terms_need_nonpositive_alpha(self, rng):
        with pytest.raises(DomainError):
            series_term_bound(random_solution(rng, 1.0), 1.0, 1, 0)

    def test_index_must_be_positive(self, rng):
        with pytest.raises(DomainError):
            coefficient_bounds(random_solution(rng, 0.0), 1.0, 0)


class TestReports:
    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.0])
    def test_schwarz_pick_suite(self, rng, alpha):
        for _ in range(5):
            sol = random_solution(rng, alpha)
            M = max(sup_estimate(sol), trace_sup_bound(sol, 4096))
            for z in random_points(rng, 40):
                assert center_deviation_report(sol, M, z, 1e-6 * M).satisfied
                assert gradient_report(sol, M, z, 1e-6 * M).satisfied

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 2.0])
    def test_batch_matches_single_point(self, rng, alpha):
        sol = random_solution(rng, alpha)
        M = trace_sup_bound(sol, 4096)
        points = random_points(rng, 12)
        sample = PointSample.measure(sol, points)
        for z, deviation, gradient in zip(points, center_deviation_reports(sol, M, sample),
                                          gradient_reports(sol, M, sample)):
            for batch, single in ((deviation, center_deviation_report(sol, M, z)), (gradient, gradient_report(sol, M, z))):
                assert batch.label == single.label
                assert batch.lhs == pytest.approx(single.lhs, rel=1e-12, abs=1e-12)
                assert batch.rhs == pytest.approx(single.rhs, rel=1e-12)
        assert sample.norms == pytest.approx([wirtinger_derivatives(sol, z).norm for z in points], rel=1e-12)

    def test_increment(self, rng):
        sol = random_solution(rng, -0.5)
        sol = SeriesSolution(alpha=-0.5, order=sol.order, coeffs={k: c for k, c in sol.coeffs.items() if k != 0})
        M = trace_sup_bound(sol, 4096)
        for z in random_points(rng, 40):
            assert increment_report(sol, M, z, 1e-6 * M).satisfied

    def test_increment_needs_nonpositive_alpha(self, rng):
        with pytest.raises(DomainError):
            increment_report(random_solution(rng, 1.0), 1.0, 0.1)

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 2.0])
    def test_growth(self, rng, alpha):
        for _ in range(5):
            sol = random_solution(rng, alpha)
            norm = hardy_norm(sol, 2.0)
            for z in random_points(rng, 30):
                assert growth_report(sol, 2.0, norm, z, tight=False, tolerance=1e-6).satisfied

    def test_harmonic_checks(self, rng):
        sol = random_solution(rng, 0.0)
        sol = SeriesSolution(alpha=0.0, order=sol.order, coeffs={k: c for k, c in sol.coeffs.items() if k != 0})
        M = trace_sup_bound(sol, 4096)
        for z in random_points(rng, 40):
            assert heinz_value_check(sol, M, z, 1e-6 * M).satisfied
            assert colonna_gradient_check(sol, M, z, 1e-6 * M).satisfied

    def test_harmonic_checks_need_alpha_zero(self, rng):
        with pytest.raises(DomainError):
            colonna_gradient_check(random_solution(rng, 1.0), 1.0, 0.1)


class TestBoundCurves:
    def test_harmonic_columns(self):
        rows = bound_curves(0.0, 1.0, 2.0, 1.0, np.linspace(0, 0.9, 10))
        assert len(rows) == 10
        assert rows[0]["center_deviation"] == pytest.approx(0.0, abs=1e-15)
        assert rows[0]["gradient_tight"] == pytest.approx(2.0)
        assert rows[-1]["colonna"] == pytest.approx(4 / (math.pi * 0.19))

    def test_non_harmonic_leaves_reference_columns_empty(self):
        rows = bound_curves(1.0, 1.0, 2.0, 1.0, np.array([0.5]))
        assert rows[0]["heinz_arctan"] is None
        assert rows[0]["colonna"] is None


def band_limited_corpus(rng, alpha, count, n=64, order=6):
    """Solutions fitted to random trigonometric polynomials sampled on the circle"""
    corpus = []
    for _ in range(count):
        modes = np.arange(-order, order + 1)
        coeffs = (rng.normal(size=modes.size) + 1j * rng.normal(size=modes.size)) / (1 + modes ** 2)
        data = BoundaryData.from_function(lambda t: np.exp(1j * np.outer(t, modes)) @ coeffs, n)
        corpus.append(from_boundary(alpha, data, order))
    return corpus


@pytest.mark.slow
class TestBoundaryCorpus:
    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.0])
    def test_schwarz_pick(self, rng, alpha):
        for sol in band_limited_corpus(rng, alpha, 50):
            M = max(sup_estimate(sol), trace_sup_bound(sol, 4096))
            sample = PointSample.measure(sol, random_points(rng, 200))
            failed = [
                report.label
                for report in center_deviation_reports(sol, M, sample, 1e-6 * M) + gradient_reports(sol, M, sample, 1e-6 * M)
                if not report.satisfied
            ]
            assert failed == []

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.0])
    def test_coefficients(self, rng, alpha):
        for sol in band_limited_corpus(rng, alpha, 50):
            M = max(sup_estimate(sol), trace_sup_bound(sol, 4096))
            for k in range(1, sol.order + 1):
                assert all(report.satisfied for report in coefficient_bounds(sol, M, k, 1e-6 * M))

    @pytest.mark.parametrize("alpha", [-0.5, 0.0, 1.0, 2.0])
    def test_growth(self, rng, alpha):
        for _ in range(20):
            sol = random_solution(rng, alpha)
            norm = max(hardy_norm(sol, 2.0), hardy_mean(boundary_trace(sol, 4096), 2.0))
            sample = PointSample.measure(sol, random_points(rng, 200))
            assert all(report.satisfied for report in growth_reports(sol, 2.0, norm, sample, tight=False, tolerance=1e-6))
