"""Cross-checking suite: every closed form against an independent oracle.

Each check returns a :class:`CheckResult` with status ``PASS``, ``FAIL``, or
``XFAIL``. ``XFAIL`` marks comparisons against printed formulas that the
oracles demonstrate to be misprints; they are reported but do not fail the
suite, because the corresponding corrected forms are asserted at full
precision alongside them.

Dependency-light on purpose so the CLI ``validate`` command can run the
whole table without pytest.
"""

import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from . import dynamics, mass, polynomials, scarf, specfun
from .grids import GridSpec
from .polynomials import XmParams
from .scarf import SystemParams

__all__ = ["CheckResult", "module_checks", "acceptance_checks", "run_all"]


@dataclass
class CheckResult:
    name: str
    status: str  # PASS | FAIL | XFAIL
    detail: str

    @property
    def ok(self) -> bool:
        return self.status != "FAIL"


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, "PASS" if passed else "FAIL", detail)


# ---------------------------------------------------------------------------
# shared parameter sets

ADMISSIBLE_SETS = [
    XmParams(1.0, 2.0, 0),
    XmParams(1.0, 2.0, 1),
    XmParams(1.5, 2.5, 2),
    XmParams(2.0, 1.0, 1),
    XmParams(-0.5, -0.75, 1),
]

# (3/2, 5/2) is the one preset family admissible at every m in {0,1,2};
# (1, 2) degenerates at m=2 because alpha-m+1 = 0 there.
GRAM_ALPHA, GRAM_BETA = 1.5, 2.5


def _x_for_m(m: int) -> XmParams:
    return XmParams(1.0, 2.0, m) if m <= 1 else XmParams(1.5, 2.5, m)


def _profiles_for_gram():
    out = [mass.make_profile("constant")]
    out += [mass.make_profile("wos", lam) for lam in (0.25, 1.0, 2.0)]
    out += [mass.make_profile("ws", lam) for lam in (0.25, 1.0, 2.0)]
    return out


# ---------------------------------------------------------------------------
# specfun

def check_bessel_recurrence() -> CheckResult:
    worst = 0.0
    for nu in (0.3, 1.0, 2.5, 4.0, 8.0):
        for z in (0.1, 1.0, 7.5, 30.0, 100.0):
            lhs = specfun.bessel_i(nu - 1.0, z) - specfun.bessel_i(nu + 1.0, z)
            rhs = 2.0 * nu / z * specfun.bessel_i(nu, z)
            scale = max(abs(lhs), abs(rhs), 1e-300)
            worst = max(worst, abs(lhs - rhs) / scale)
    return _result("specfun: bessel three-term recurrence", worst < 1e-10, f"max rel err {worst:.2e}")


def check_gamma_recurrence() -> CheckResult:
    xs = np.linspace(0.1, 50.0, 173)
    worst = max(
        abs(specfun.gamma(x + 1.0) - x * specfun.gamma(x)) / specfun.gamma(x + 1.0) for x in xs
    )
    return _result("specfun: gamma functional equation", worst < 1e-12, f"max rel err {worst:.2e}")


def check_monomial_integrals() -> CheckResult:
    worst = 0.0
    for p in range(11):
        exact = 0.0 if p % 2 else 2.0 / (p + 1)
        got = specfun.integrate_de(lambda g, p=p: g**p, tol=1e-13)
        worst = max(worst, abs(got - exact))
    return _result("specfun: monomial integrals exact", worst < 1e-12, f"max abs err {worst:.2e}")


# ---------------------------------------------------------------------------
# polynomials

def _norm_quadrature(n: int, l: int, x: XmParams) -> float:
    def f(g):
        den = polynomials.xm_denominator(x, g)
        return polynomials.xm_jacobi(n, x, g) * polynomials.xm_jacobi(l, x, g) / den**2

    return specfun.integrate_de(f, tol=1e-11, weight_exponents=(x.alpha, x.beta))


def check_orthogonality_vs_quadrature() -> CheckResult:
    worst_abs = 0.0
    worst_rel = 0.0
    for x in ADMISSIBLE_SETS:
        for n in range(x.m, x.m + 7):
            for l in range(n, x.m + 7):
                q = _norm_quadrature(n, l, x)
                c = polynomials.xm_norm(n, l, x)
                if n == l:
                    worst_rel = max(worst_rel, abs(q - c) / abs(c))
                else:
                    worst_abs = max(worst_abs, abs(q - c))
    ok = worst_abs < 1e-8 and worst_rel < 1e-8
    return _result(
        "polynomials: closed-form norms vs quadrature",
        ok,
        f"off-diag abs {worst_abs:.2e}, diag rel {worst_rel:.2e}",
    )


def check_lowest_degree_reduction() -> CheckResult:
    gs = np.linspace(-0.98, 0.98, 50)
    worst = 0.0
    for x in ADMISSIBLE_SETS:
        if x.m == 0:
            continue
        lhs = polynomials.xm_jacobi(x.m, x, gs)
        rhs = (-1.0) ** x.m * (1.0 - x.m / (x.alpha + 1.0)) * polynomials.jacobi_p(
            x.m, -x.alpha - 2.0, x.beta, gs
        )
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return _result("polynomials: lowest-degree classical reduction", worst < 1e-12, f"max abs err {worst:.2e}")


def check_ode_residual() -> CheckResult:
    worst = 0.0
    for x in ADMISSIBLE_SETS:
        for n in range(x.m, x.m + 7):
            for g in (-0.7, -0.3, 0.1, 0.45, 0.8):
                r = polynomials.ode_residual(n, x, g)
                f2 = polynomials.xm_jacobi_deriv(n, x, g, 2)
                worst = max(worst, abs(r) / max(1.0, abs(f2)))
    return _result("polynomials: Sturm-Liouville ODE residual", worst < 1e-8, f"max scaled residual {worst:.2e}")


def check_m0_bit_identical() -> CheckResult:
    gs = np.linspace(-0.99, 0.99, 37)
    x = XmParams(1.0, 2.0, 0)
    same = all(
        np.array_equal(polynomials.xm_jacobi(n, x, gs), polynomials.jacobi_p(n, 1.0, 2.0, gs))
        for n in range(8)
    )
    return _result("polynomials: m=0 path bit-identical to classical", same, "array_equal over degrees 0..7")


# ---------------------------------------------------------------------------
# mass

def _fd5_first(f, xs, h):
    return (f(xs - 2 * h) - 8 * f(xs - h) + 8 * f(xs + h) - f(xs + 2 * h)) / (12 * h)


def _fd5_second(f, xs, h):
    return (-f(xs - 2 * h) + 16 * f(xs - h) - 30 * f(xs) + 16 * f(xs + h) - f(xs + 2 * h)) / (12 * h * h)


def check_mu_derivatives_fd() -> CheckResult:
    worst_fd = 0.0
    worst_id = 0.0
    for kind, lam in (("constant", 1.0), ("wos", 0.5), ("wos", 2.0), ("ws", 0.25), ("ws", 1.0)):
        prof = mass.make_profile(kind, lam)
        lo, hi = mass.domain(prof, 1.0)
        xs = np.linspace(0.9 * lo, 0.9 * hi, 100)
        h = 1e-3
        fd1 = _fd5_first(prof.mu, xs, h)
        fd2 = _fd5_second(prof.mu, xs, h)
        worst_fd = max(worst_fd, float(np.max(np.abs(fd1 - prof.mu_prime(xs)) / np.maximum(np.abs(fd1), 1e-3))))
        worst_fd = max(worst_fd, float(np.max(np.abs(fd2 - prof.mu_pprime(xs)) / np.maximum(np.abs(fd2), 1.0))))
        sqrtM = np.sqrt(prof.M(xs))
        worst_id = max(worst_id, float(np.max(np.abs(prof.mu_prime(xs) - sqrtM))))
        worst_id = max(worst_id, float(np.max(np.abs(prof.mu_pprime(xs) - prof.M_prime(xs) / (2 * sqrtM)))))
    ok = worst_fd < 1e-6 and worst_id < 1e-12
    return _result(
        "mass: mu derivatives analytic and against finite differences",
        ok,
        f"FD rel err {worst_fd:.2e}; identity err {worst_id:.2e}",
    )


def check_domain_endpoints() -> CheckResult:
    # the mu round-trip at the edge is ill-conditioned by 1/(1-tanh^2); scale
    # the tolerance with that condition number (unit at k=1 presets)
    worst = 0.0
    for kind, lam in (("constant", 1.0), ("wos", 1.0), ("ws", 1.0), ("wos", 0.25), ("ws", 2.0)):
        prof = mass.make_profile(kind, lam)
        for k in (0.5, 1.0, 2.0):
            lo, hi = mass.domain(prof, k)
            cond = max(1.0, float(np.sqrt(prof.M(hi * (1 - 1e-12)))))
            dev = max(abs(abs(prof.mu(hi)) - math.pi / (2 * k)), abs(abs(prof.mu(lo)) - math.pi / (2 * k)))
            worst = max(worst, dev / cond)
    return _result("mass: domain endpoints map to mu = pi/(2k)", worst < 1e-12, f"worst scaled deviation {worst:.2e}")


def check_small_lambda_limit() -> CheckResult:
    xs = np.linspace(-1.5, 1.5, 200)
    worst = 0.0
    for kind in ("wos", "ws"):
        prof = mass.make_profile(kind, 1e-3)
        worst = max(worst, float(np.max(np.abs(prof.M(xs) - 1.0))))
        worst = max(worst, float(np.max(np.abs(prof.mu(xs) - xs))))
    return _result("mass: constant-mass limit as lambda -> 0", worst < 1e-4, f"sup deviation {worst:.2e}")


def check_schwartz_term_fd() -> CheckResult:
    # 5-point stencils applied to the analytic mu' give mu'' and mu''' with
    # O(h^4) truncation, clear of the second/third-difference round-off floor
    worst = 0.0
    for kind, lam, x0 in (("wos", 1.0, 0.0), ("ws", 0.25, 0.5), ("wos", 2.0, 0.8)):
        prof = mass.make_profile(kind, lam)
        h = 1e-3
        mup = prof.mu_prime(x0)
        fd2 = float(_fd5_first(prof.mu_prime, np.asarray(x0), h))
        fd3 = float(_fd5_second(prof.mu_prime, np.asarray(x0), h))
        ref = 0.25 * fd3 / mup**3 - 0.625 * fd2**2 / mup**4
        worst = max(worst, abs(mass.schwartz_term(prof, x0) - ref))
    return _result("mass: correction term vs finite-difference assembly", worst < 1e-6, f"max abs err {worst:.2e}")


# ---------------------------------------------------------------------------
# scarf

def check_spectrum_monotone() -> CheckResult:
    ok = True
    for x in ADMISSIBLE_SETS:
        p = SystemParams(x)
        if p.sigma <= -0.5:
            continue
        es = [scarf.energy(p, nu) for nu in range(21)]
        ok = ok and es[0] == 0.0 and all(b > a for a, b in zip(es, es[1:]))
    return _result("scarf: ladder increasing with e_0 = 0", ok, "checked nu <= 20 for sigma > -1/2 sets")


def check_veff_m0_closed_form() -> CheckResult:
    worst = 0.0
    for kind, lam in (("constant", 1.0), ("wos", 0.5), ("ws", 0.5)):
        prof = mass.make_profile(kind, lam)
        for k in (1.0, 2.0):
            p = SystemParams(XmParams(1.0, 2.0, 0), k=k)
            lo, hi = mass.domain(prof, k)
            xs = np.linspace(0.95 * lo, 0.95 * hi, 101)
            th = k * prof.mu(xs)
            a, b = 1.0, 2.0
            sec = 1.0 / np.cos(th)
            ref = k**2 / 8 * (2 * a**2 + 2 * b**2 - 1) * sec**2 \
                - k**2 / 4 * (b**2 - a**2) * sec * np.tan(th) \
                - k**2 / 8 * (a + b + 1) ** 2 + mass.schwartz_term(prof, xs)
            worst = max(worst, float(np.max(np.abs(scarf.v_eff(p, prof, xs) - ref))))
    return _result("scarf: m=0 potential equals the classical well", worst < 1e-12, f"max abs diff {worst:.2e}")


def check_gram_identity() -> CheckResult:
    worst = 0.0
    for m in (0, 1, 2):
        p = SystemParams(XmParams(GRAM_ALPHA, GRAM_BETA, m))
        for prof in _profiles_for_gram():
            G = scarf.gram_matrix(p, prof, 8)
            worst = max(worst, float(np.max(np.abs(G - np.eye(9)))))
    return _result(
        "scarf: orthonormality Gram identity (7 profiles x m=0,1,2)",
        worst < 1e-8,
        f"max |G - I| = {worst:.2e} at (alpha,beta)=(3/2,5/2)",
    )


def check_rayleigh_spectrum() -> CheckResult:
    configs = [
        ("constant", None, 0, 1e-5), ("wos", 0.5, 0, 1e-4), ("ws", 0.5, 0, 1e-4),
        ("constant", None, 1, 1e-5), ("wos", 0.5, 1, 1e-4),
        ("constant", None, 2, 1e-5), ("wos", 1.0, 2, 1e-4),
    ]
    ok = True
    worst_ratio = 0.0
    for kind, lam, m, tol in configs:
        prof = mass.make_profile(kind) if kind == "constant" else mass.make_profile(kind, lam)
        p = SystemParams(_x_for_m(m))
        lo, hi = mass.domain(prof, p.k)
        grid = GridSpec(6001, 0.9995 * lo, 0.9995 * hi)
        for nu in range(5):
            st = scarf.eigenfunction(p, prof, nu)
            ray, _ = scarf.hamiltonian_residual(p, prof, st, grid)
            err = abs(ray - st.hamiltonian_e_dimless) / max(1.0, abs(st.hamiltonian_e_dimless))
            worst_ratio = max(worst_ratio, err / tol)
            ok = ok and err < tol
    detail = (
        f"worst err/tol = {worst_ratio:.2e}; measured spectrum is degree-indexed "
        "n(n+2*sigma)/2 with ground energy m(2s-m)/2, equal to e_nu only at m=0"
    )
    return _result("scarf: Rayleigh quotients pin the spectrum", ok, detail)


def check_shape_invariance() -> CheckResult:
    worst = 0.0
    for m in (0, 1, 2):
        p = SystemParams(_x_for_m(m))
        for kind, lam in (("constant", None), ("wos", 0.5), ("ws", 0.5)):
            prof = mass.make_profile(kind) if kind == "constant" else mass.make_profile(kind, lam)
            lo, hi = mass.domain(prof, p.k)
            xs = np.linspace(0.95 * lo, 0.95 * hi, 200)
            worst = max(worst, float(np.max(np.abs(scarf.shape_invariance_residual(p, prof, xs)))))
    return _result("scarf: translational shape invariance", worst < 1e-9, f"max residual {worst:.2e}")


def check_susy_partner_relation() -> CheckResult:
    worst = 0.0
    h = 1e-6
    for m in (0, 1, 2):
        p = SystemParams(_x_for_m(m))
        for kind, lam in (("constant", None), ("wos", 0.5), ("ws", 0.5)):
            prof = mass.make_profile(kind) if kind == "constant" else mass.make_profile(kind, lam)
            lo, hi = mass.domain(prof, p.k)
            xs = np.linspace(0.9 * lo, 0.9 * hi, 60)
            v1, v2 = scarf.partner_potentials(p, prof, xs)
            wp = (scarf.superpotential(p, prof, xs + h) - scarf.superpotential(p, prof, xs - h)) / (2 * h)
            worst = max(worst, float(np.max(np.abs(v2 - v1 - wp / np.sqrt(prof.M(xs))))))
    return _result("scarf: partner relation v2 - v1 = W'/sqrt(M)", worst < 1e-7, f"max abs err {worst:.2e}")


def check_superpotential_log_derivative() -> CheckResult:
    worst = 0.0
    h = 1e-6
    for m in (0, 1, 2):
        p = SystemParams(_x_for_m(m))
        prof = mass.make_profile("wos", 0.5)
        lo, hi = mass.domain(prof, p.k)
        xs = np.linspace(0.85 * lo, 0.85 * hi, 40)
        psi0 = scarf.eigenfunction(p, prof, 0).psi
        dlog = (np.log(np.abs(psi0(xs + h))) - np.log(np.abs(psi0(xs - h)))) / (2 * h)
        M = prof.M(xs)
        ref = prof.M_prime(xs) / (4 * M**1.5) - dlog / np.sqrt(M)
        worst = max(worst, float(np.max(np.abs(scarf.superpotential(p, prof, xs) - ref))))
    return _result(
        "scarf: superpotential equals the ground-state log-derivative form",
        worst < 1e-7,
        f"max abs err {worst:.2e}",
    )


def check_v1_is_veff_minus_mass_term() -> CheckResult:
    worst = 0.0
    for kind, lam in (("constant", None), ("wos", 1.0), ("ws", 0.5)):
        prof = mass.make_profile(kind) if kind == "constant" else mass.make_profile(kind, lam)
        for m in (0, 1, 2):
            p = SystemParams(_x_for_m(m))
            lo, hi = mass.domain(prof, p.k)
            xs = np.linspace(0.95 * lo, 0.95 * hi, 101)
            v1, _ = scarf.partner_potentials(p, prof, xs)
            diff = scarf.v_eff(p, prof, xs) - mass.schwartz_term(prof, xs) - v1
            worst = max(worst, float(np.max(np.abs(diff))))
    return _result("scarf: v1 = v_eff minus the mass correction", worst < 1e-12, f"max abs diff {worst:.2e}")


# ---------------------------------------------------------------------------
# dynamics

def check_moments_closed_vs_product() -> CheckResult:
    worst = 0.0
    for x in (XmParams(1.0, 2.0, 0), XmParams(1.0, 2.0, 1), XmParams(1.5, 2.5, 2)):
        p = SystemParams(x)
        prod = 1.0
        for n in range(1, 31):
            prod *= scarf.energy(p, n)
            worst = max(worst, abs(dynamics.rho(p, n) - prod) / prod)
    return _result("dynamics: moments match the running energy product", worst < 1e-12, f"max rel err {worst:.2e}")


def check_norm_const_vs_series() -> CheckResult:
    worst = 0.0
    for x in (XmParams(1.0, 2.0, 0), XmParams(1.0, 2.0, 1)):
        p = SystemParams(x)
        for J in (0.5, 5.0, 20.0, 80.0):
            series = 0.0
            log_rho = 0.0
            for n in range(120):
                if n > 0:
                    log_rho += math.log(scarf.energy(p, n))
                val = n * math.log(J) - log_rho
                if val > -745.0:
                    series += math.exp(val)
            closed = dynamics.norm_const(p, J) ** 2
            worst = max(worst, abs(series - closed) / closed)
    return _result("dynamics: normalization closed form vs direct series", worst < 1e-10, f"max rel err {worst:.2e}")


def check_norm_series_large_J() -> CheckResult:
    # scaled comparison survives J up to 1e6, where the bare series overflows
    p = SystemParams(XmParams(1.0, 2.0, 0))
    sig = p.sigma
    worst = 0.0
    for J in (1e2, 1e4, 1e6):
        z = 2.0 * math.sqrt(2.0 * J)
        total = 0.0
        n = 0
        log_rho = 0.0  # log rho_n, built incrementally
        while True:
            if n > 0:
                log_rho += math.log(0.5 * n * (n + 2 * sig))
            val = n * math.log(J) - log_rho - z
            if val > -745.0:
                total += math.exp(val)
            elif n > 2 * math.sqrt(2 * J):
                break
            n += 1
        closed_scaled = (2.0 * J) ** (-sig) * specfun.gamma(2 * sig + 1) \
            * specfun.bessel_i_scaled(2 * sig, z)
        worst = max(worst, abs(total - closed_scaled) / closed_scaled)
    return _result(
        "dynamics: normalization series converges out to J = 1e6",
        worst < 1e-9,
        f"max rel err {worst:.2e} (exp(-z)-scaled comparison)",
    )


def check_means_closed_vs_sums() -> CheckResult:
    worst = 0.0
    for x in (XmParams(1.0, 2.0, 0), XmParams(1.0, 2.0, 1), XmParams(1.5, 2.5, 2)):
        p = SystemParams(x)
        for J in (5.0, 20.0, 60.0):
            w = dynamics.weights(p, J, 200)
            ns = np.arange(201, dtype=float)
            m1, m2 = float(ns @ w), float((ns**2) @ w)
            worst = max(worst, abs(m1 - dynamics.mean_n(p, J)) / m1)
            worst = max(worst, abs(m2 - dynamics.mean_n2(p, J)) / m2)
            qdirect = (m2 - m1 * m1) / m1 - 1.0
            worst = max(worst, abs(qdirect - dynamics.mandel(p, J)) / max(abs(qdirect), 1e-6))
    return _result("dynamics: Bessel-ratio moments vs direct sums", worst < 1e-10, f"max rel err {worst:.2e}")


def check_truncation_tail() -> CheckResult:
    ok = True
    parts = []
    for x, J in ((XmParams(1.0, 2.0, 1), 80.0), (XmParams(1.0, 2.0, 0), 40.0), (XmParams(1.5, 2.5, 1), 80.0)):
        p = SystemParams(x)
        tail = dynamics.truncation_tail(p, J, 50)
        bound = dynamics.truncation_tail_bound(p, J, 50)
        ok = ok and tail < 1e-10 and tail < bound
        parts.append(f"sigma={p.sigma:g},J={J:g}: tail={tail:.1e} < bound={bound:.1e}")
    return _result("dynamics: truncation tail below 1e-10 and the analytic bound", ok, "; ".join(parts))


def check_weights_shape() -> CheckResult:
    ok = True
    for J in (5.0, 10.0, 20.0, 40.0):
        for x in (XmParams(1.0, 2.0, 1), XmParams(1.0, 2.0, 0)):  # sigma = 1 and 2
            p = SystemParams(x)
            w = dynamics.weights(p, J, 200)
            ok = ok and abs(int(np.argmax(w)) - round(dynamics.mean_n(p, J))) <= 1
            ok = ok and abs(float(np.sum(w)) - 1.0) < 1e-9 and bool(np.all(w >= 0.0))
    return _result("dynamics: weight distribution peaks at the mean level", ok, "peak within +/-1 of round(<n>); sums to 1 - tail")


def check_mandel_sign_map() -> CheckResult:
    p_c = SystemParams(XmParams(1.0, 2.0, 1))   # region C parameters
    p_d = SystemParams(XmParams(2.0, 1.0, 1))   # region D parameters
    Js = np.linspace(0.05, 50.0, 400)
    ok = all(dynamics.mandel(p_c, J) < 0 for J in Js) and all(dynamics.mandel(p_d, J) < 0 for J in Js)
    for p in (p_c, p_d):
        q = dynamics.mandel(p, 1e-6)
        pred = -2e-6 / ((2 * p.sigma + 1) * (2 * p.sigma + 2))
        ok = ok and abs(q - pred) < 1e-9 and q < 0
    detail = (
        "sub-Poissonian over (0,50] for regions C and D, Q -> 0- at small J; the "
        "|alpha+beta|=1 transition claim lives at sigma <= -1/2, outside the "
        "coherent-state domain (see ledger)"
    )
    return _result("dynamics: Mandel sign map (in-domain claims)", ok, detail)


def check_classify_regions() -> CheckResult:
    ok = (
        dynamics.classify_region(-0.5, -1.0 / 3.0) == "A"
        and dynamics.classify_region(-0.5, -0.75) == "B"
        and dynamics.classify_region(1.0, 2.0) == "C"
        and dynamics.classify_region(2.0, 1.0) == "D"
        and dynamics.classify_region(0.5, 0.5) == "none"
    )
    return _result("dynamics: parameter-region classification", ok, "A/B/C/D/none anchors")


def check_autocorr_revival_invariance() -> CheckResult:
    worst = 0.0
    for m in (0, 1, 2):
        p = SystemParams(XmParams(1.5, 2.5, m))  # 2*sigma integer for all m
        spec = dynamics.coherent_state(p, 20.0)
        trev = dynamics.timescales(p, 20.0).t_rev
        ts = np.linspace(0.0, trev, 64)
        a1 = dynamics.autocorrelation_sq(spec, ts)
        a2 = dynamics.autocorrelation_sq(spec, ts + trev)
        worst = max(worst, float(np.max(np.abs(a1 - a2))))
    return _result(
        "dynamics: autocorrelation periodic under t -> t + t_rev (2*sigma integer)",
        worst < 1e-9,
        f"max abs diff {worst:.2e}",
    )


def check_autocorr_forms_agree() -> CheckResult:
    worst = 0.0
    p = SystemParams(XmParams(1.5, 2.5, 1))
    for J in (10.0, 20.0, 40.0, 80.0):
        spec = dynamics.coherent_state(p, J)
        trev = dynamics.timescales(p, J).t_rev
        ts = np.linspace(0.0, trev, 257)
        d = dynamics.autocorrelation_sq(spec, ts) - dynamics.autocorrelation_sq_pairsum(spec, ts)
        worst = max(worst, float(np.max(np.abs(d))))
    return _result("dynamics: direct vs pair-sum autocorrelation", worst < 1e-9, f"max abs diff {worst:.2e}")


def check_density_m0_classical_path() -> CheckResult:
    p = SystemParams(XmParams(1.0, 2.0, 0))
    prof = mass.make_profile("constant")
    spec = dynamics.coherent_state(p, 20.0, 30)
    xs = np.linspace(-1.5, 1.5, 301)
    t = 0.37
    rho_lib = dynamics.density(spec, prof, xs, t)
    amps = np.stack([s.psi(xs) for s in dynamics.bound_states(p, prof, 30)])
    ph = np.exp(-1j * np.mod(spec.energies * t, 2 * math.pi))
    ref = np.abs((spec.coefficients * ph) @ amps) ** 2
    same = np.array_equal(np.asarray(rho_lib), ref)
    return _result(
        "dynamics: m=0 density equals the classical-path assembly",
        same,
        "bitwise equal on a 301-point grid (polynomial layer delegates exactly)",
    )


def check_density_unit_mass() -> CheckResult:
    worst = 0.0
    for kind, lam in (("constant", None), ("wos", 1.0), ("ws", 1.0)):
        prof = mass.make_profile(kind) if kind == "constant" else mass.make_profile(kind, lam)
        p = SystemParams(XmParams(1.0, 2.0, 1))
        spec = dynamics.coherent_state(p, 20.0, 40)
        lo, hi = mass.domain(prof, p.k)
        for t in (0.0, 1.3):
            total = specfun.integrate_interval(
                lambda xv, t=t: dynamics.density(spec, prof, xv, t), lo, hi, tol=1e-8
            )
            worst = max(worst, abs(total - 1.0))
    return _result("dynamics: density integrates to unity", worst < 1e-6, f"max |int rho - 1| = {worst:.2e}")


# ---------------------------------------------------------------------------
# acceptance criteria

def criterion_1_mean_level() -> CheckResult:
    n0 = dynamics.mean_n(SystemParams(XmParams(1.0, 2.0, 0)), 20.0)
    n1 = dynamics.mean_n(SystemParams(XmParams(1.0, 2.0, 1)), 20.0)
    ok = abs(n0 - 4.40365) < 5e-4 and abs(n1 - 5.15475) < 5e-4
    return _result("criterion 1: mean levels at J=20", ok, f"<n>(m=0)={n0:.5f}, <n>(m=1)={n1:.5f}")


def criterion_2_classical_periods() -> CheckResult:
    t0 = dynamics.timescales(SystemParams(XmParams(1.0, 2.0, 0)), 20.0)
    t1 = dynamics.timescales(SystemParams(XmParams(1.0, 2.0, 1)), 20.0)
    ok = (
        abs(t0.t_cl - 0.98118) < 1e-4
        and abs(t1.t_cl - 1.02087) < 1e-4
        and t0.t_rev == 4.0 * math.pi
        and t1.t_rev == 4.0 * math.pi
    )
    return _result(
        "criterion 2: classical periods and revival time",
        ok,
        f"T_cl(m=0)={t0.t_cl:.5f}, T_cl(m=1)={t1.t_cl:.5f}, T_rev=4*pi exactly",
    )


# sigma values required by the asymptote criterion, realized as parameter sets
ASYMPTOTE_PARAMS = {
    -0.4: SystemParams(XmParams(-0.9, -0.9, 0)),
    0.5: SystemParams(XmParams(0.0, 0.0, 0)),
    1.0: SystemParams(XmParams(1.0, 2.0, 1)),
    2.0: SystemParams(XmParams(1.0, 2.0, 0)),
}


def criterion_3_mandel_asymptote() -> CheckResult:
    J = 1e6
    printed_fail = []
    core_ok = True
    for sig, p in sorted(ASYMPTOTE_PARAMS.items()):
        q = dynamics.mandel(p, J)
        printed = -0.5 - (4 * sig + 1) * (4 * sig + 3) / 64.0 * math.sqrt(2.0 / J)
        corrected = dynamics.mandel_asymptote(p, J)
        core_ok = core_ok and abs(q + 0.5) < 1e-3 and abs(q - corrected) < 1e-5
        if not abs(q - printed) < 1e-3:
            printed_fail.append(f"sigma={sig:g}: |Q-printed|={abs(q - printed):.1e}")
    p_c = SystemParams(XmParams(1.0, 2.0, 1))
    p_d = SystemParams(XmParams(2.0, 1.0, 1))
    neg_ok = all(dynamics.mandel(p_c, J) < 0 and dynamics.mandel(p_d, J) < 0 for J in np.linspace(0.05, 50, 200))
    name = "criterion 3: Mandel large-J limit and sub-Poissonian regions"
    if not (core_ok and neg_ok):
        return _result(name, False, "large-J limit or region negativity failed")
    if printed_fail:
        return CheckResult(
            name,
            "XFAIL",
            "substance holds: Q(1e6) within 1e-3 of -1/2, within 1e-5 of the "
            "corrected expansion -1/2 + (4*sigma+1)/16*sqrt(2/J), and Q<0 on "
            "(0,50] for regions C and D; the printed -(4s+1)(4s+3)/64 "
            "coefficient misses at " + ", ".join(printed_fail) + " (misprint, see ledger)",
        )
    return _result(name, True, "limit, expansion, and region negativity all hold")


def criterion_4_full_revival() -> CheckResult:
    worst_a = 1.0
    worst_l2 = 0.0
    prof = mass.make_profile("constant")
    for m in (0, 1, 2):
        p = SystemParams(XmParams(1.5, 2.5, m))
        spec = dynamics.coherent_state(p, 20.0, 50)
        trev = dynamics.timescales(p, 20.0).t_rev
        worst_a = min(worst_a, float(dynamics.autocorrelation_sq(spec, trev)))
        lo, hi = mass.domain(prof, p.k)
        xs = np.linspace(0.999 * lo, 0.999 * hi, 1501)
        d0 = dynamics.density(spec, prof, xs, 0.0)
        d1 = dynamics.density(spec, prof, xs, trev)
        worst_l2 = max(worst_l2, math.sqrt(float(np.trapezoid((d0 - d1) ** 2, xs))))
    ok = abs(worst_a - 1.0) < 1e-6 and worst_l2 < 1e-4
    return _result(
        "criterion 4: full revival at t_rev",
        ok,
        f"min |A(t_rev)|^2 = {worst_a:.9f}, max L2 density distance = {worst_l2:.2e}",
    )


def criterion_5_density_peak() -> CheckResult:
    p = SystemParams(XmParams(1.0, 2.0, 0))
    prof = mass.make_profile("constant")
    spec = dynamics.coherent_state(p, 20.0, 50)
    lo, hi = mass.domain(prof, p.k)
    xs = np.linspace(0.999 * lo, 0.999 * hi, 4001)
    x_peak = float(xs[int(np.argmax(dynamics.density(spec, prof, xs, 0.0)))])
    ok = abs(x_peak - 1.25) <= 0.15
    return _result("criterion 5: initial density peak location", ok, f"x_peak = {x_peak:.4f} (target 1.25 +/- 0.15)")


def criterion_6_orthonormality() -> CheckResult:
    r = check_gram_identity()
    return CheckResult("criterion 6: orthonormality oracle", r.status, r.detail)


def criterion_7_hamiltonian_oracle() -> CheckResult:
    r = check_rayleigh_spectrum()
    return CheckResult("criterion 7: Hamiltonian residual oracle", r.status, r.detail)


def criterion_8_shape_invariance() -> CheckResult:
    r1 = check_shape_invariance()
    r2 = check_susy_partner_relation()
    ok = r1.status == "PASS" and r2.status == "PASS"
    return _result("criterion 8: shape invariance and partner relation", ok, f"{r1.detail}; {r2.detail}")


def criterion_9_closed_form_oracles() -> CheckResult:
    rs = [
        check_norm_const_vs_series(),
        check_means_closed_vs_sums(),
        check_moments_closed_vs_product(),
        check_orthogonality_vs_quadrature(),
        check_ode_residual(),
    ]
    ok = all(r.status == "PASS" for r in rs)
    return _result("criterion 9: closed forms vs independent oracles", ok, "; ".join(r.detail for r in rs))


def criterion_10_autocorr_equivalence() -> CheckResult:
    r = check_autocorr_forms_agree()
    return CheckResult("criterion 10: autocorrelation form equivalence", r.status, r.detail)


# ---------------------------------------------------------------------------

def module_checks() -> List[CheckResult]:
    checks: List[Callable[[], CheckResult]] = [
        check_bessel_recurrence,
        check_gamma_recurrence,
        check_monomial_integrals,
        check_orthogonality_vs_quadrature,
        check_lowest_degree_reduction,
        check_ode_residual,
        check_m0_bit_identical,
        check_mu_derivatives_fd,
        check_domain_endpoints,
        check_small_lambda_limit,
        check_schwartz_term_fd,
        check_spectrum_monotone,
        check_veff_m0_closed_form,
        check_gram_identity,
        check_rayleigh_spectrum,
        check_shape_invariance,
        check_susy_partner_relation,
        check_superpotential_log_derivative,
        check_v1_is_veff_minus_mass_term,
        check_moments_closed_vs_product,
        check_norm_const_vs_series,
        check_norm_series_large_J,
        check_means_closed_vs_sums,
        check_truncation_tail,
        check_weights_shape,
        check_mandel_sign_map,
        check_classify_regions,
        check_autocorr_revival_invariance,
        check_autocorr_forms_agree,
        check_density_m0_classical_path,
        check_density_unit_mass,
    ]
    return [c() for c in checks]


def acceptance_checks() -> List[CheckResult]:
    return [
        criterion_1_mean_level(),
        criterion_2_classical_periods(),
        criterion_3_mandel_asymptote(),
        criterion_4_full_revival(),
        criterion_5_density_peak(),
        criterion_6_orthonormality(),
        criterion_7_hamiltonian_oracle(),
        criterion_8_shape_invariance(),
        criterion_9_closed_form_oracles(),
        criterion_10_autocorr_equivalence(),
    ]


def run_all() -> List[CheckResult]:
    return module_checks() + acceptance_checks()
