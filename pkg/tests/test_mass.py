import math

import numpy as np
import pytest

from xscarf.errors import DomainError, SingularityError
from xscarf.mass import domain, inverse_mu, make_profile, schwartz_term


def fd5_first(f, x, h):
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


def fd5_second(f, x, h):
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) / (12 * h * h)


class TestProfiles:
    def test_constant(self):
        prof = make_profile("constant")
        xs = np.linspace(-1.0, 1.0, 11)
        assert np.all(prof.M(xs) == 1.0)
        assert np.all(prof.mu(xs) == xs)
        assert np.all(prof.mu_pprime(xs) == 0.0)

    def test_ws_at_origin(self):
        prof = make_profile("ws", 1.0)
        assert prof.M(0.0) == 1.0

    def test_wos_mu_value(self):
        prof = make_profile("wos", 1.0)
        assert prof.mu(1.0) == pytest.approx(math.asinh(1.0), rel=1e-13)
        assert prof.mu(1.0) == pytest.approx(math.log(1.0 + math.sqrt(2.0)), rel=1e-13)

    def test_small_lambda_limit(self):
        xs = np.linspace(-2.0, 2.0, 41)
        for kind in ("wos", "ws"):
            prof = make_profile(kind, 1e-3)
            assert np.max(np.abs(prof.mu(xs) - xs)) < 1e-4
            assert np.max(np.abs(prof.M(xs) - 1.0)) < 1e-4

    def test_parameter_validation(self):
        with pytest.raises(DomainError):
            make_profile("wos", 0.0)
        with pytest.raises(DomainError):
            make_profile("wos", -1.0)
        with pytest.raises(DomainError):
            make_profile("gaussian")

    def test_ws_clamp_raises(self):
        prof = make_profile("ws", 1.0)
        with pytest.raises(SingularityError):
            prof.M(1.0)
        with pytest.raises(SingularityError):
            prof.mu(np.array([0.0, 0.999999999999]))

    @pytest.mark.parametrize("kind,lam", [("constant", 1.0), ("wos", 0.5), ("wos", 2.0), ("ws", 0.25), ("ws", 1.0)])
    def test_mu_prime_is_sqrt_M(self, kind, lam):
        prof = make_profile(kind, lam)
        lo, hi = domain(prof, 1.0)
        xs = np.linspace(0.95 * lo, 0.95 * hi, 100)
        assert np.max(np.abs(prof.mu_prime(xs) - np.sqrt(prof.M(xs)))) < 1e-12
        assert np.max(np.abs(prof.mu_pprime(xs) - prof.M_prime(xs) / (2 * np.sqrt(prof.M(xs))))) < 1e-12
        assert np.all(prof.M(xs) > 0.0)

    @pytest.mark.parametrize("kind,lam", [("wos", 0.5), ("wos", 2.0), ("ws", 0.25), ("ws", 1.0)])
    def test_mu_derivatives_vs_fd(self, kind, lam):
        prof = make_profile(kind, lam)
        lo, hi = domain(prof, 1.0)
        xs = np.linspace(0.9 * lo, 0.9 * hi, 100)
        h = 1e-3
        assert prof.mu_prime(xs) == pytest.approx(fd5_first(prof.mu, xs, h), rel=1e-6)
        assert prof.mu_pprime(xs) == pytest.approx(fd5_second(prof.mu, xs, h), rel=1e-6, abs=1e-8)
        assert prof.mu_ppprime(xs) == pytest.approx(fd5_second(prof.mu_prime, xs, h), rel=1e-6, abs=1e-8)

    def test_inverse_mu_roundtrip(self):
        for kind, lam in (("constant", 1.0), ("wos", 0.7), ("ws", 0.6)):
            prof = make_profile(kind, lam)
            lo, hi = domain(prof, 1.0)
            xs = np.linspace(0.99 * lo, 0.99 * hi, 33)
            assert inverse_mu(prof, prof.mu(xs)) == pytest.approx(xs, rel=1e-12, abs=1e-12)


class TestDomain:
    def test_constant(self):
        lo, hi = domain(make_profile("constant"), 1.0)
        assert (lo, hi) == pytest.approx((-math.pi / 2, math.pi / 2), rel=1e-15)

    def test_wos_reference(self):
        lo, hi = domain(make_profile("wos", 1.0), 1.0)
        assert hi == pytest.approx(2.30130, abs=1e-5)
        assert hi == pytest.approx(math.sinh(math.pi / 2), rel=1e-13)

    def test_ws_reference(self):
        lo, hi = domain(make_profile("ws", 1.0), 1.0)
        assert hi == pytest.approx(0.91715, abs=1e-5)
        assert hi == pytest.approx(math.tanh(math.pi / 2), rel=1e-13)

    def test_endpoints_map_to_quarter_period(self):
        for kind, lam in (("constant", 1.0), ("wos", 0.5), ("ws", 0.5)):
            prof = make_profile(kind, lam)
            lo, hi = domain(prof, 1.0)
            assert abs(prof.mu(hi)) == pytest.approx(math.pi / 2, abs=1e-12)
            assert abs(prof.mu(lo)) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_k_scaling(self):
        prof = make_profile("wos", 1.0)
        lo2, hi2 = domain(prof, 2.0)
        assert hi2 == pytest.approx(math.sinh(math.pi / 4), rel=1e-13)
        with pytest.raises(DomainError):
            domain(prof, 0.0)


class TestSchwartzTerm:
    def test_constant_mass_vanishes(self):
        prof = make_profile("constant")
        assert schwartz_term(prof, 0.3) == 0.0

    @pytest.mark.parametrize("kind,lam,x0", [("wos", 1.0, 0.0), ("ws", 0.25, 0.5)])
    def test_against_fd_assembly(self, kind, lam, x0):
        prof = make_profile(kind, lam)
        h = 1e-3
        mup = prof.mu_prime(x0)
        fd2 = float(fd5_first(prof.mu_prime, np.asarray(x0), h))
        fd3 = float(fd5_second(prof.mu_prime, np.asarray(x0), h))
        ref = 0.25 * fd3 / mup**3 - 0.625 * fd2**2 / mup**4
        assert schwartz_term(prof, x0) == pytest.approx(ref, abs=1e-6)

    def test_ws_beyond_turning_point_raises(self):
        prof = make_profile("ws", 1.0)
        with pytest.raises(SingularityError):
            schwartz_term(prof, 1.5)
