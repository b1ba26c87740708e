import math

import numpy as np
import pytest

from xscarf.errors import DomainError
from xscarf.mass import domain, make_profile
from xscarf.polynomials import XmParams
from xscarf.scarf import SystemParams, energy
from xscarf.specfun import integrate_interval
from xscarf.dynamics import (
    autocorrelation_sq,
    autocorrelation_sq_pairsum,
    classify_region,
    coherent_state,
    density,
    density_pairsum,
    mandel,
    mandel_asymptote,
    mean_n,
    mean_n2,
    norm_const,
    rho,
    timescales,
    truncation_tail,
    truncation_tail_bound,
    weights,
)

P12_0 = SystemParams(XmParams(1.0, 2.0, 0))   # sigma = 2
P12_1 = SystemParams(XmParams(1.0, 2.0, 1))   # sigma = 1
P1525_1 = SystemParams(XmParams(1.5, 2.5, 1))  # sigma = 3/2
CONST = make_profile("constant")


class TestMoments:
    def test_rho_zero(self):
        assert rho(P12_0, 0) == 1.0

    def test_rho_reference(self):
        # sigma = 2: rho_2 = e_1 e_2 = (5/2)(6) ... = 15
        assert rho(P12_0, 2) == pytest.approx(15.0, rel=1e-13)

    def test_rho_matches_energy_product(self):
        for p in (P12_0, P12_1, P1525_1):
            prod = 1.0
            for n in range(1, 31):
                prod *= energy(p, n)
                assert rho(p, n) == pytest.approx(prod, rel=1e-12)

    def test_sigma_domain_guard(self):
        bad = SystemParams(XmParams(-0.9, -0.9, 1))  # sigma = -1.4
        with pytest.raises(DomainError):
            rho(bad, 1)
        with pytest.raises(DomainError):
            mean_n(bad, 10.0)


class TestNormConst:
    def test_small_J_limit(self):
        assert norm_const(P12_0, 1e-12) == pytest.approx(1.0, abs=1e-10)

    def test_closed_form_vs_series(self):
        for p, J in ((P12_0, 20.0), (P12_1, 20.0), (P1525_1, 5.0)):
            series = 0.0
            log_rho = 0.0
            for n in range(90):
                if n > 0:
                    log_rho += math.log(energy(p, n))
                series += math.exp(n * math.log(J) - log_rho)
            assert norm_const(p, J) ** 2 == pytest.approx(series, rel=1e-10)

    def test_J_validation(self):
        with pytest.raises(DomainError):
            norm_const(P12_0, 0.0)


class TestWeights:
    def test_sum_to_one_minus_tail(self):
        w = weights(P12_0, 20.0, 50)
        assert np.all(w >= 0.0)
        assert float(np.sum(w)) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("J", [5.0, 10.0, 20.0, 40.0])
    @pytest.mark.parametrize("p", [P12_0, P12_1])
    def test_peak_tracks_mean(self, J, p):
        w = weights(p, J, 200)
        assert abs(int(np.argmax(w)) - round(mean_n(p, J))) <= 1

    def test_rightward_shift_with_J(self):
        peaks = [int(np.argmax(weights(P12_0, J, 200))) for J in (5.0, 10.0, 20.0, 40.0)]
        assert peaks == sorted(peaks) and peaks[-1] > peaks[0]

    def test_truncation_tail_bounds(self):
        for p, J in ((P12_1, 80.0), (P12_0, 40.0)):
            tail = truncation_tail(p, J, 50)
            assert tail < 1e-10
            assert tail < truncation_tail_bound(p, J, 50)


class TestMeansAndMandel:
    def test_paper_mean_values(self):
        assert mean_n(P12_0, 20.0) == pytest.approx(4.40365, abs=5e-4)
        assert mean_n(P12_1, 20.0) == pytest.approx(5.15475, abs=5e-4)

    def test_means_vs_direct_sums(self):
        for p, J in ((P12_0, 20.0), (P12_1, 60.0)):
            w = weights(p, J, 200)
            ns = np.arange(201, dtype=float)
            assert mean_n(p, J) == pytest.approx(float(ns @ w), rel=1e-10)
            assert mean_n2(p, J) == pytest.approx(float((ns**2) @ w), rel=1e-10)

    def test_mandel_small_J_limit(self):
        for p in (P12_0, P12_1):
            s = p.sigma
            J = 1e-7
            assert mandel(p, J) == pytest.approx(-2 * J / ((2 * s + 1) * (2 * s + 2)), abs=1e-10)
            assert mandel(p, J) < 0.0

    def test_mandel_region_D_negative(self):
        p_d = SystemParams(XmParams(2.0, 1.0, 1))
        for J in np.linspace(0.05, 50.0, 120):
            assert mandel(p_d, float(J)) < 0.0

    def test_mandel_large_J_expansion(self):
        for p in (P12_0, P12_1, SystemParams(XmParams(0.0, 0.0, 0))):
            q = mandel(p, 1e6)
            assert q == pytest.approx(-0.5, abs=1e-3)
            assert q == pytest.approx(mandel_asymptote(p, 1e6), abs=1e-5)


class TestClassifyRegion:
    def test_anchors(self):
        assert classify_region(-0.5, -1.0 / 3.0) == "A"
        assert classify_region(-0.5, -0.75) == "B"
        assert classify_region(1.0, 2.0) == "C"
        assert classify_region(2.0, 1.0) == "D"
        assert classify_region(0.5, 0.5) == "none"


class TestTimescales:
    def test_paper_values(self):
        t0 = timescales(P12_0, 20.0)
        t1 = timescales(P12_1, 20.0)
        assert t0.t_cl == pytest.approx(0.98118, abs=1e-4)
        assert t1.t_cl == pytest.approx(1.02087, abs=1e-4)
        assert t0.t_rev == 4.0 * math.pi
        assert t1.t_rev == 4.0 * math.pi

    def test_omega_k_scaling(self):
        p = SystemParams(XmParams(1.0, 2.0, 0), k=2.0, omega=3.0)
        t = timescales(p, 20.0)
        assert t.t_rev == pytest.approx(4.0 * math.pi / 12.0, rel=1e-14)
        assert t.t_cl == pytest.approx(2.0 * math.pi / (12.0 * (t.n_bar + p.sigma)), rel=1e-14)


class TestAutocorrelation:
    def test_normalized_at_zero(self):
        spec = coherent_state(P12_0, 20.0)
        assert autocorrelation_sq(spec, 0.0) == pytest.approx(1.0, abs=1e-12)

    def test_full_revival_integer_2sigma(self):
        for m in (0, 1, 2):
            p = SystemParams(XmParams(1.5, 2.5, m))
            spec = coherent_state(p, 20.0, 50)
            trev = timescales(p, 20.0).t_rev
            assert autocorrelation_sq(spec, trev) == pytest.approx(1.0, abs=1e-6)

    def test_bounded_by_one(self):
        spec = coherent_state(P1525_1, 40.0)
        ts = np.linspace(0.0, timescales(P1525_1, 40.0).t_rev, 400)
        a = autocorrelation_sq(spec, ts)
        assert np.all(a <= 1.0 + 1e-12) and np.all(a >= 0.0)

    @pytest.mark.parametrize("J", [10.0, 20.0, 40.0, 80.0])
    def test_direct_vs_pairsum(self, J):
        spec = coherent_state(P1525_1, J)
        ts = np.linspace(0.0, timescales(P1525_1, J).t_rev, 257)
        direct = autocorrelation_sq(spec, ts)
        paired = autocorrelation_sq_pairsum(spec, ts)
        assert np.max(np.abs(direct - paired)) < 1e-9

    def test_periodicity_under_revival_shift(self):
        spec = coherent_state(P12_1, 20.0)
        trev = timescales(P12_1, 20.0).t_rev
        ts = np.linspace(0.0, trev, 64)
        assert autocorrelation_sq(spec, ts) == pytest.approx(
            autocorrelation_sq(spec, ts + trev), abs=1e-9
        )


class TestDensity:
    def test_unit_mass(self):
        spec = coherent_state(P12_1, 20.0, 40)
        for prof in (CONST, make_profile("wos", 1.0)):
            lo, hi = domain(prof, 1.0)
            for t in (0.0, 0.7):
                total = integrate_interval(
                    lambda xv, t=t: density(spec, prof, xv, t), lo, hi, tol=1e-8
                )
                assert total == pytest.approx(1.0, abs=1e-6)

    def test_initial_peak_location(self):
        spec = coherent_state(P12_0, 20.0, 50)
        lo, hi = domain(CONST, 1.0)
        xs = np.linspace(0.999 * lo, 0.999 * hi, 4001)
        x_peak = float(xs[int(np.argmax(density(spec, CONST, xs, 0.0)))])
        assert x_peak == pytest.approx(1.25, abs=0.15)

    def test_revival_reconstructs_density(self):
        for m in (0, 1):
            p = SystemParams(XmParams(1.5, 2.5, m))
            spec = coherent_state(p, 20.0, 50)
            trev = timescales(p, 20.0).t_rev
            lo, hi = domain(CONST, 1.0)
            xs = np.linspace(0.999 * lo, 0.999 * hi, 1201)
            d0 = density(spec, CONST, xs, 0.0)
            d1 = density(spec, CONST, xs, trev)
            assert math.sqrt(float(np.trapezoid((d0 - d1) ** 2, xs))) < 1e-4

    def test_direct_vs_pairsum(self):
        spec = coherent_state(P12_1, 20.0, 30)
        xs = np.linspace(-1.4, 1.4, 101)
        for t in (0.0, 0.9):
            d1 = density(spec, CONST, xs, t)
            d2 = density_pairsum(spec, CONST, xs, t)
            assert np.max(np.abs(d1 - d2)) < 1e-9

    def test_outside_domain_rejected(self):
        spec = coherent_state(P12_0, 20.0, 10)
        with pytest.raises(DomainError):
            density(spec, CONST, 2.0, 0.0)

    def test_nonnegative(self):
        spec = coherent_state(P12_0, 20.0, 40)
        xs = np.linspace(-1.5, 1.5, 501)
        assert np.all(density(spec, CONST, xs, 1.234) >= 0.0)


class TestCoherentStateSpec:
    def test_coefficients_sum(self):
        spec = coherent_state(P12_0, 20.0, 50)
        assert float(np.sum(spec.coefficients**2)) == pytest.approx(1.0, abs=1e-10)
        assert spec.tail < 1e-10
        assert spec.coefficients[0] > 0.0

    def test_energy_ladder_attached(self):
        spec = coherent_state(P12_1, 20.0, 10)
        assert spec.energies[0] == 0.0
        assert spec.energies[2] == pytest.approx(energy(P12_1, 2), rel=1e-15)
