"""Classical and exceptional X_m Jacobi polynomials.

Classical Jacobi polynomials are evaluated for arbitrary real superscripts
(including the negative values -alpha-1, -alpha-2, ... that the exceptional
construction requires) through the explicit binomial-product sum, never a
three-term recurrence, so no parameter choice can hit a recurrence-denominator
zero. The exceptional polynomial of codimension m and degree n >= m is the
classical bilinear combination with the convention P_{-1} == 0.

Admissibility of (alpha, beta, m) combines the printed restrictions with a
numerical nodeless check of the denominator polynomial on (-1, 1). Note the
sign clause: the condition implemented is sgn(alpha - m + 1) = sgn(beta),
which is what the admissible parameter sets actually satisfy (the variant
with alpha - beta + 1 rejects them and degenerates the family).
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple, Union

import numpy as np

from .errors import AdmissibilityError, DomainError, SingularityError
from .specfun import gamma_sign, log_abs_gamma

__all__ = [
    "binom",
    "jacobi_p",
    "jacobi_p_deriv",
    "XmParams",
    "admissible",
    "require_admissible",
    "xm_denominator",
    "xm_jacobi",
    "xm_jacobi_deriv",
    "xm_weight",
    "xm_norm",
    "ode_residual",
]

ArrayLike = Union[float, np.ndarray]

_DENOM_FLOOR = 1e-14


def binom(r: float, k: int) -> float:
    """Generalized binomial coefficient binom(r, k) for real r, integer k >= 0.

    Computed as the falling-factorial product, which stays exact in sign and
    finite at negative-integer r where a log-gamma ratio would hit poles.
    """
    if k < 0:
        return 0.0
    out = 1.0
    for i in range(k):
        out *= (r - i) / (i + 1)
    return out


_RECURRENCE_SWITCH = 20


def _jacobi_sum(n: int, a: float, b: float, g: np.ndarray) -> np.ndarray:
    lo = 0.5 * (g - 1.0)
    hi = 0.5 * (g + 1.0)
    total = np.zeros_like(g)
    for s in range(n + 1):
        total = total + (binom(n + a, n - s) * binom(n + b, s)) * lo**s * hi ** (n - s)
    return total


def _recurrence_safe(n: int, a: float, b: float) -> bool:
    # the three-term recurrence divides by 2k(k+a+b)(2k+a+b-2) at step k
    for k in range(2, n + 1):
        if abs(k + a + b) < 1e-2 or abs(2 * k + a + b - 2.0) < 1e-2:
            return False
    return True


def _jacobi_recurrence(n: int, a: float, b: float, g: np.ndarray) -> np.ndarray:
    pm1 = np.ones_like(g)
    p = (a + 1.0) + (a + b + 2.0) * 0.5 * (g - 1.0)
    for k in range(2, n + 1):
        c1 = 2.0 * k * (k + a + b) * (2 * k + a + b - 2.0)
        c2 = (2 * k + a + b - 1.0) * (a * a - b * b)
        c3 = (2 * k + a + b - 2.0) * (2 * k + a + b - 1.0) * (2 * k + a + b)
        c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2 * k + a + b)
        p, pm1 = ((c2 + c3 * g) * p - c4 * pm1) / c1, p
    return p


def jacobi_p(n: int, a: float, b: float, g: ArrayLike) -> ArrayLike:
    """Jacobi polynomial P_n^{(a,b)}(g) for any real a, b; P_{-1} == 0.

    Low degrees (and any parameter combination whose recurrence divisors get
    small) use the explicit binomial-product sum, which cannot hit a
    recurrence-denominator zero; the sum however loses ~n*log-digits to
    cancellation at mid-interval, so degrees beyond 20 switch to the
    guarded three-term recurrence. Vectorized over g.
    """
    scalar = np.isscalar(g)
    g = np.asarray(g, dtype=float)
    if n < 0:
        out = np.zeros_like(g)
        return float(out) if scalar else out
    if n <= _RECURRENCE_SWITCH or not _recurrence_safe(n, a, b):
        total = _jacobi_sum(n, a, b, g)
    else:
        total = _jacobi_recurrence(n, a, b, g)
    return float(total) if scalar else total


def jacobi_p_deriv(n: int, a: float, b: float, g: ArrayLike, order: int = 1) -> ArrayLike:
    """Exact derivative of P_n^{(a,b)} via the superscript-shift identity."""
    if order not in (1, 2):
        raise DomainError("derivative order must be 1 or 2")
    if n < order:
        z = np.zeros_like(np.asarray(g, dtype=float))
        return float(z) if np.isscalar(g) else z
    c = 1.0
    for i in range(order):
        c *= 0.5 * (n + a + b + 1 + i)
    return c * jacobi_p(n - order, a + order, b + order, g)


@dataclass(frozen=True)
class XmParams:
    """Parameters of an X_m Jacobi family: alpha, beta > -1, codimension m >= 0."""

    alpha: float
    beta: float
    m: int

    def __post_init__(self):
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise DomainError(
                f"alpha and beta must exceed -1, got ({self.alpha}, {self.beta})"
            )
        if self.m < 0 or self.m != int(self.m):
            raise DomainError(f"codimension m must be a nonnegative integer, got {self.m}")

    @property
    def s(self) -> float:
        return 0.5 * (self.alpha + self.beta + 1.0)

    @property
    def sigma(self) -> float:
        return self.s - self.m


def _denominator_root_scan(x: "XmParams", points: int = 10001) -> Tuple[bool, float]:
    """Scan P_m^{(-a-1,b-1)} for a zero inside (-1, 1); bisect any sign change."""
    g = np.linspace(-1.0, 1.0, points + 2)[1:-1]
    vals = jacobi_p(x.m, -x.alpha - 1.0, x.beta - 1.0, g)
    scale = float(np.max(np.abs(vals)))
    tiny = np.abs(vals) < 1e-13 * max(scale, 1.0)
    if np.any(tiny):
        return True, float(g[np.argmax(tiny)])
    flips = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if flips.size == 0:
        return False, math.nan
    lo, hi = float(g[flips[0]]), float(g[flips[0] + 1])
    f = lambda t: jacobi_p(x.m, -x.alpha - 1.0, x.beta - 1.0, t)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if f(lo) * f(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return True, 0.5 * (lo + hi)


@lru_cache(maxsize=256)
def _admissible_cached(alpha: float, beta: float, m: int) -> Tuple[bool, str]:
    x = XmParams(alpha, beta, m)
    if m == 0:
        return True, "m=0: classical Jacobi family"
    if beta == 0.0:
        return False, "R1 violated: beta = 0"
    if beta == alpha:
        return False, "R1 violated: beta = alpha"
    d = alpha - beta - m + 1.0
    if abs(d - round(d)) < 1e-12 and 0 <= round(d) <= m - 1:
        return False, f"R1 violated: alpha-beta-m+1 = {round(d)} in {{0..{m-1}}}"
    if not alpha > m - 2.0:
        return False, f"R2 violated: alpha = {alpha} <= m-2 = {m-2}"
    t = alpha - m + 1.0
    if t == 0.0 or math.copysign(1.0, t) != math.copysign(1.0, beta):
        return False, f"R2 violated: sgn(alpha-m+1) = sgn({t}) != sgn(beta) = sgn({beta})"
    has_root, where = _denominator_root_scan(x)
    if has_root:
        return False, f"denominator P_{m}^{{(-a-1,b-1)}} vanishes near g = {where:.6f}"
    return True, "admissible; denominator nodeless on (-1,1)"


def admissible(x: XmParams) -> Tuple[bool, str]:
    """Check the exceptional-family restrictions plus the nodeless denominator.

    Returns (ok, diagnostic); the diagnostic names the violated clause.
    """
    return _admissible_cached(x.alpha, x.beta, x.m)


def require_admissible(x: XmParams) -> None:
    ok, why = admissible(x)
    if not ok:
        raise AdmissibilityError(f"(alpha={x.alpha}, beta={x.beta}, m={x.m}): {why}")


def xm_denominator(x: XmParams, g: ArrayLike) -> ArrayLike:
    """Denominator polynomial P_m^{(-alpha-1, beta-1)}(g) of the family."""
    return jacobi_p(x.m, -x.alpha - 1.0, x.beta - 1.0, g)


def xm_jacobi(n: int, x: XmParams, g: ArrayLike) -> ArrayLike:
    """Exceptional X_m Jacobi polynomial of degree n >= m at g.

    m=0 reduces bit-identically to the classical ``jacobi_p``.
    """
    if n < x.m:
        raise ValueError(f"degree n={n} below codimension m={x.m}")
    if x.m == 0:
        return jacobi_p(n, x.alpha, x.beta, g)
    require_admissible(x)
    a, b, m = x.alpha, x.beta, x.m
    j = n - m
    scalar = np.isscalar(g)
    g = np.asarray(g, dtype=float)
    c1 = (a + b + j + 1.0) / (2.0 * (a + j + 1.0))
    c2 = (a - m + 1.0) / (a + j + 1.0)
    t1 = c1 * (g - 1.0) * jacobi_p(m, -a - 1.0, b - 1.0, g) * jacobi_p(j - 1, a + 2.0, b, g)
    t2 = c2 * jacobi_p(m, -a - 2.0, b, g) * jacobi_p(j, a + 1.0, b - 1.0, g)
    out = (-1.0) ** m * (t1 + t2)
    return float(out) if scalar else out


def xm_jacobi_deriv(n: int, x: XmParams, g: ArrayLike, order: int = 1) -> ArrayLike:
    """Exact derivative of the exceptional polynomial (product rule on factors)."""
    if order not in (1, 2):
        raise DomainError("derivative order must be 1 or 2")
    if n < x.m:
        raise ValueError(f"degree n={n} below codimension m={x.m}")
    if x.m == 0:
        return jacobi_p_deriv(n, x.alpha, x.beta, g, order)
    require_admissible(x)
    a, b, m = x.alpha, x.beta, x.m
    j = n - m
    scalar = np.isscalar(g)
    g = np.asarray(g, dtype=float)
    c1 = (a + b + j + 1.0) / (2.0 * (a + j + 1.0))
    c2 = (a - m + 1.0) / (a + j + 1.0)

    def A(o):
        return jacobi_p(m, -a - 1.0, b - 1.0, g) if o == 0 else jacobi_p_deriv(m, -a - 1.0, b - 1.0, g, o)

    def B(o):
        return jacobi_p(j - 1, a + 2.0, b, g) if o == 0 else jacobi_p_deriv(j - 1, a + 2.0, b, g, o)

    def C(o):
        return jacobi_p(m, -a - 2.0, b, g) if o == 0 else jacobi_p_deriv(m, -a - 2.0, b, g, o)

    def D(o):
        return jacobi_p(j, a + 1.0, b - 1.0, g) if o == 0 else jacobi_p_deriv(j, a + 1.0, b - 1.0, g, o)

    if order == 1:
        t1 = c1 * (A(0) * B(0) + (g - 1.0) * (A(1) * B(0) + A(0) * B(1)))
        t2 = c2 * (C(1) * D(0) + C(0) * D(1))
    else:
        t1 = c1 * (2.0 * (A(1) * B(0) + A(0) * B(1))
                   + (g - 1.0) * (A(2) * B(0) + 2.0 * A(1) * B(1) + A(0) * B(2)))
        t2 = c2 * (C(2) * D(0) + 2.0 * C(1) * D(1) + C(0) * D(2))
    out = (-1.0) ** m * (t1 + t2)
    return float(out) if scalar else out


def xm_weight(x: XmParams, g: ArrayLike) -> ArrayLike:
    """Weight function (1-g)^alpha (1+g)^beta / P_m^{(-alpha-1,beta-1)}(g).

    Callers needing the squared-denominator orthogonality measure square the
    denominator themselves. Raises near denominator zeros.
    """
    require_admissible(x)
    scalar = np.isscalar(g)
    g = np.asarray(g, dtype=float)
    if np.any(np.abs(g) >= 1.0):
        raise DomainError("weight argument must lie strictly inside (-1, 1)")
    den = xm_denominator(x, g)
    if np.any(np.abs(den) < _DENOM_FLOOR):
        raise SingularityError("weight denominator vanishes at a requested point")
    out = (1.0 - g) ** x.alpha * (1.0 + g) ** x.beta / den
    return float(out) if scalar else out


def _signed_gamma_ratio_terms(x: XmParams, j: int) -> float:
    """Closed-form squared norm of the degree-(m+j) exceptional polynomial.

    Log-space gamma ratios with sign tracking; equals the orthogonality
    integral of the squared-denominator weight against the polynomial square.
    (The j=0 denominator pair (2s)Gamma(2s) is folded into Gamma(2s+1), which
    stays positive for all alpha+beta > -2.)
    """
    a, b, m = x.alpha, x.beta, x.m
    s2 = a + b + 1.0  # 2s
    sign = 1.0
    logv = s2 * math.log(2.0)
    for factor in (j + a - m + 1.0, j + b + m):
        sign *= math.copysign(1.0, factor)
        logv += math.log(abs(factor))
    logv += log_abs_gamma(j + a + 2.0)
    jb = j + b
    sign *= gamma_sign(jb)
    logv += log_abs_gamma(jb)
    logv -= 2.0 * math.log(abs(j + a + 1.0))
    logv -= log_abs_gamma(j + 1.0)
    if j == 0:
        logv -= log_abs_gamma(s2 + 1.0)
    else:
        logv -= math.log(2.0 * j + s2) + log_abs_gamma(j + s2)
    return sign * math.exp(logv)


def xm_norm(n: int, l: int, x: XmParams) -> float:
    """Squared L2 norm of the exceptional polynomials (0 off the diagonal).

    Diagonal values integrate (1-g)^a (1+g)^b / P_m^2 times the polynomial
    square over (-1, 1); validated against quadrature of that integrand.
    """
    if n < x.m or l < x.m:
        raise ValueError("orthogonality indices must be >= m")
    require_admissible(x)
    if n != l:
        return 0.0
    return _signed_gamma_ratio_terms(x, n - x.m)


def ode_residual(n: int, x: XmParams, g: float) -> float:
    """Residual of the defining second-order ODE at a point, zero in theory.

    Evaluates F'' + Q F' + R F with F the degree-n exceptional polynomial and
    Q, R the rational coefficients of its Sturm-Liouville equation.
    """
    require_admissible(x)
    if abs(g) >= 1.0:
        raise SingularityError("ODE coefficients are singular at g = +/-1")
    a, b, m = x.alpha, x.beta, x.m
    den = float(xm_denominator(x, g))
    if abs(den) < 1e-12:
        raise SingularityError("ODE residual requested too close to a denominator zero")
    ratio = float(jacobi_p(m - 1, -a, b, g)) / den if m >= 1 else 0.0
    one_m_g2 = 1.0 - g * g
    Q = (a - b - m + 1.0) * ratio - (a - b + (a + b + 2.0) * g) / one_m_g2
    R = (b * (a - b - m + 1.0) / (1.0 + g)) * ratio \
        + (n * n + n * (a + b - 2.0 * m + 1.0) - 2.0 * b * m) / one_m_g2
    F = float(xm_jacobi(n, x, g))
    F1 = float(xm_jacobi_deriv(n, x, g, 1))
    F2 = float(xm_jacobi_deriv(n, x, g, 2))
    return F2 + Q * F1 + R * F
