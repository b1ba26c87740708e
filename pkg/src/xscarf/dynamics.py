"""Gazeau-Klauder coherent states on the X_m Scarf ladder and their dynamics.

The construction lives on the dimensionless ladder e_n = n(n+2*sigma)/2 with
e_0 = 0 and requires sigma > -1/2 so the ladder increases strictly. Moments,
normalization, level weights, photon statistics, revival timescales, the
autocorrelation trace, and the time-evolved probability density are provided,
each closed form paired with an independent series/sum evaluator used by the
validation suite.

Time phases are omega * k^2 * e_n * t, reduced modulo 2*pi before
exponentiation; presets use k = omega = 1 where the k^2 factor is invisible.
"""

import math
import threading
from dataclasses import dataclass, field
from typing import Dict, List, Tuple, Union

import numpy as np

from .errors import DomainError
from .mass import MassProfile, domain
from .scarf import EigenState, SystemParams, eigenfunction, energy
from .specfun import bessel_i_scaled, log_abs_gamma

__all__ = [
    "CoherentStateSpec",
    "Timescales",
    "rho",
    "norm_const",
    "weights",
    "truncation_tail",
    "truncation_tail_bound",
    "mean_n",
    "mean_n2",
    "mandel",
    "mandel_asymptote",
    "classify_region",
    "timescales",
    "coherent_state",
    "autocorrelation_sq",
    "autocorrelation_sq_pairsum",
    "density",
    "density_pairsum",
    "bound_states",
]

ArrayLike = Union[float, np.ndarray]

DEFAULT_NMAX = 50


def _check_sigma(params: SystemParams) -> float:
    sig = params.sigma
    if not sig > -0.5:
        raise DomainError(
            f"coherent-state construction needs sigma > -1/2 for an increasing "
            f"ladder; got sigma = {sig}"
        )
    return sig


def _z(J: float) -> float:
    return 2.0 * math.sqrt(2.0 * J)


def _check_J(J: float) -> None:
    if not J > 0.0:
        raise DomainError(f"J must be positive, got {J}")


def rho(params: SystemParams, n: int) -> float:
    """Moment rho_n = n!/2^n * Gamma(n+2*sigma+1)/Gamma(2*sigma+1).

    Equals the running product e_1 * e_2 * ... * e_n; rho_0 = 1.
    """
    sig = _check_sigma(params)
    if n < 0:
        raise DomainError(f"moment index must be nonnegative, got {n}")
    if n == 0:
        return 1.0
    return math.exp(
        log_abs_gamma(n + 1.0) - n * math.log(2.0)
        + log_abs_gamma(n + 2.0 * sig + 1.0) - log_abs_gamma(2.0 * sig + 1.0)
    )


def norm_const(params: SystemParams, J: float) -> float:
    """Normalization N(J) = sqrt((2J)^{-sigma} Gamma(2*sigma+1) I_{2*sigma}(2*sqrt(2J)))."""
    sig = _check_sigma(params)
    _check_J(J)
    z = _z(J)
    log_n2 = (
        -sig * math.log(2.0 * J)
        + log_abs_gamma(2.0 * sig + 1.0)
        + math.log(bessel_i_scaled(2.0 * sig, z)) + z
    )
    return math.exp(0.5 * log_n2)


def _log_weights(sig: float, J: float, ns: np.ndarray) -> np.ndarray:
    z = _z(J)
    lg1 = np.array([log_abs_gamma(n + 1.0) for n in ns])
    lg2 = np.array([log_abs_gamma(n + 2.0 * sig + 1.0) for n in ns])
    return (ns + sig) * math.log(2.0 * J) - lg1 - lg2 \
        - (math.log(bessel_i_scaled(2.0 * sig, z)) + z)


def weights(params: SystemParams, J: float, n_max: int = DEFAULT_NMAX) -> np.ndarray:
    """Level weights |c_n|^2 for n = 0..n_max; nonnegative, summing to 1 - tail."""
    sig = _check_sigma(params)
    _check_J(J)
    if n_max < 1:
        raise DomainError("n_max must be a positive integer")
    return np.exp(_log_weights(sig, J, np.arange(n_max + 1, dtype=float)))


def truncation_tail(params: SystemParams, J: float, n_max: int = DEFAULT_NMAX) -> float:
    """Realized truncated weight sum_{n > n_max} |c_n|^2 (summed directly)."""
    sig = _check_sigma(params)
    _check_J(J)
    ns = np.arange(n_max + 1, n_max + 202, dtype=float)
    tail = float(np.sum(np.exp(_log_weights(sig, J, ns))))
    # geometric bound on everything beyond the summed stretch
    n_end = float(ns[-1] + 1)
    r = 2.0 * J / ((n_end + 1.0) * (n_end + 2.0 * sig + 1.0))
    if r < 1.0:
        tail += math.exp(_log_weights(sig, J, np.array([n_end]))[0]) / (1.0 - r)
    return tail


def truncation_tail_bound(params: SystemParams, J: float, n_max: int = DEFAULT_NMAX) -> float:
    """Analytic tail bound (2J)^{N+1} / ((N+1)! Gamma(N+2s'+2)/Gamma(2s'+1) I (2J)^{-s'})."""
    sig = _check_sigma(params)
    _check_J(J)
    z = _z(J)
    log_b = (
        (n_max + 1.0) * math.log(2.0 * J)
        - log_abs_gamma(n_max + 2.0)
        - (log_abs_gamma(n_max + 2.0 * sig + 2.0) - log_abs_gamma(2.0 * sig + 1.0))
        - (math.log(bessel_i_scaled(2.0 * sig, z)) + z)
        + sig * math.log(2.0 * J)
    )
    return math.exp(log_b)


def mean_n(params: SystemParams, J: float) -> float:
    """Mean level <n> = sqrt(2J) I_{2s'+1}/I_{2s'} at argument 2*sqrt(2J)."""
    sig = _check_sigma(params)
    _check_J(J)
    z = _z(J)
    return math.sqrt(2.0 * J) * bessel_i_scaled(2 * sig + 1.0, z) / bessel_i_scaled(2 * sig, z)


def mean_n2(params: SystemParams, J: float) -> float:
    """Second moment <n^2> = 2J I_{2s'+2}/I_{2s'} + sqrt(2J) I_{2s'+1}/I_{2s'}."""
    sig = _check_sigma(params)
    _check_J(J)
    z = _z(J)
    i0 = bessel_i_scaled(2 * sig, z)
    return 2.0 * J * bessel_i_scaled(2 * sig + 2.0, z) / i0 + math.sqrt(2.0 * J) \
        * bessel_i_scaled(2 * sig + 1.0, z) / i0


def mandel(params: SystemParams, J: float) -> float:
    """Mandel parameter Q = sqrt(2J) (I_{2s'+2}/I_{2s'+1} - I_{2s'+1}/I_{2s'}).

    Scaled Bessel ratios keep this finite for arbitrarily large J. Negative
    (sub-Poissonian) for every J when sigma > -1/2, approaching -1/2 from
    above as J grows.
    """
    sig = _check_sigma(params)
    _check_J(J)
    z = _z(J)
    r2 = bessel_i_scaled(2 * sig + 2.0, z) / bessel_i_scaled(2 * sig + 1.0, z)
    r1 = bessel_i_scaled(2 * sig + 1.0, z) / bessel_i_scaled(2 * sig, z)
    return math.sqrt(2.0 * J) * (r2 - r1)


def mandel_asymptote(params: SystemParams, J: float) -> float:
    """Second-order large-J expansion of the Mandel parameter.

    Q -> -1/2 + (4*sigma+1)/16 * sqrt(2/J). (Carrying the Bessel expansion
    consistently to 1/z in the ratios gives +(4*sigma+1)/16 for the
    sqrt(2/J) coefficient; the widely quoted -(4*sigma+1)(4*sigma+3)/64
    drops cross terms and does not match the function it expands.)
    """
    sig = _check_sigma(params)
    _check_J(J)
    return -0.5 + (4.0 * sig + 1.0) / 16.0 * math.sqrt(2.0 / J)


def classify_region(alpha: float, beta: float) -> str:
    """Parameter region (codimension-1 case) per the four printed inequality sets."""
    if -1.0 < beta < 0.0 and 1.0 + alpha > 0.0 and alpha < beta:
        return "A"
    if -1.0 < beta < 0.0 and alpha <= 0.0 and alpha > beta:
        return "B"
    if beta > 0.0 and alpha < beta and alpha >= 0.0:
        return "C"
    if beta > 0.0 and alpha > beta:
        return "D"
    return "none"


@dataclass(frozen=True)
class Timescales:
    """Classical period, revival time, and the mean level they derive from."""

    t_cl: float
    t_rev: float
    n_bar: float


def timescales(params: SystemParams, J: float) -> Timescales:
    """First- and second-order Taylor timescales of the ladder around <n>.

    t_cl = 2*pi / (omega k^2 (n_bar + sigma)), t_rev = 4*pi / (omega k^2).
    """
    nbar = mean_n(params, J)
    wk2 = params.omega * params.k**2
    return Timescales(
        t_cl=2.0 * math.pi / (wk2 * (nbar + params.sigma)),
        t_rev=4.0 * math.pi / wk2,
        n_bar=nbar,
    )


@dataclass
class CoherentStateSpec:
    """Coherent-state data: J, the truncation, and the coefficient vector.

    coefficients[n] = J^{n/2} / (N sqrt(rho_n)) >= 0, so coefficients**2 are
    the level weights; tail is the truncated weight beyond n_max.
    """

    J: float
    n_max: int
    params: SystemParams
    coefficients: np.ndarray = field(repr=False)
    tail: float

    @property
    def energies(self) -> np.ndarray:
        sig = self.params.sigma
        ns = np.arange(self.n_max + 1, dtype=float)
        return 0.5 * ns * (ns + 2.0 * sig)


def coherent_state(params: SystemParams, J: float, n_max: int = DEFAULT_NMAX) -> CoherentStateSpec:
    """Build the coherent-state coefficient vector at (J, n_max)."""
    w = weights(params, J, n_max)
    return CoherentStateSpec(
        J=J,
        n_max=n_max,
        params=params,
        coefficients=np.sqrt(w),
        tail=truncation_tail(params, J, n_max),
    )


def _phases(spec: CoherentStateSpec, t: ArrayLike) -> np.ndarray:
    """exp(-i omega k^2 e_n t), shape (n_max+1, len(t)), phases reduced mod 2*pi."""
    wk2 = spec.params.omega * spec.params.k**2
    t = np.atleast_1d(np.asarray(t, dtype=float))
    phase = np.multiply.outer(spec.energies, wk2 * t)
    return np.exp(-1j * np.mod(phase, 2.0 * math.pi))


def autocorrelation_sq(spec: CoherentStateSpec, t: ArrayLike) -> ArrayLike:
    """|<state(J,0)|state(J,t)>|^2 = |sum_n |c_n|^2 exp(-i omega e_n t)|^2."""
    scalar = np.isscalar(t)
    w = spec.coefficients**2
    amp = w @ _phases(spec, t)
    out = np.abs(amp) ** 2
    return float(out[0]) if scalar else out


def autocorrelation_sq_pairsum(spec: CoherentStateSpec, t: ArrayLike) -> ArrayLike:
    """The rearranged double sum over n = p+q and l <= n; verification route.

    Truncated so that both pair indices stay <= n_max, matching the direct
    evaluator term for term.
    """
    scalar = np.isscalar(t)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    w = spec.coefficients**2
    sig = spec.params.sigma
    wk2 = spec.params.omega * spec.params.k**2
    N = spec.n_max
    out = np.zeros(t.shape, dtype=float)
    for n in range(0, 2 * N + 1):
        l_lo, l_hi = max(0, n - N), min(n, N)
        ls = np.arange(l_lo, l_hi + 1)
        coeff = w[ls] * w[n - ls]
        # e_{n-l} - e_l = (n-2l)(n+2*sigma)/2
        dphi = 0.5 * (n - 2.0 * ls) * (n + 2.0 * sig)
        args = np.mod(np.multiply.outer(wk2 * dphi, t), 2.0 * math.pi)
        out = out + coeff @ np.cos(args)
    return float(out[0]) if scalar else out


_state_cache: Dict[Tuple[SystemParams, MassProfile, int], List[EigenState]] = {}
_state_lock = threading.Lock()


def bound_states(params: SystemParams, profile: MassProfile, n_max: int) -> List[EigenState]:
    """The first n_max+1 bound states, cached per (params, profile, n_max)."""
    key = (params, profile, n_max)
    with _state_lock:
        cached = _state_cache.get(key)
    if cached is not None:
        return cached
    states = [eigenfunction(params, profile, nu) for nu in range(n_max + 1)]
    with _state_lock:
        _state_cache[key] = states
    return states


def _psi_matrix(spec: CoherentStateSpec, profile: MassProfile, x: np.ndarray) -> np.ndarray:
    states = bound_states(spec.params, profile, spec.n_max)
    return np.stack([np.asarray(s.psi(x), dtype=float) for s in states])


def density(spec: CoherentStateSpec, profile: MassProfile, x: ArrayLike, t: float) -> ArrayLike:
    """Probability density |sum_n c_n exp(-i omega e_n t) psi_n(x)|^2."""
    scalar = np.isscalar(x)
    xv = np.atleast_1d(np.asarray(x, dtype=float))
    lo, hi = domain(profile, spec.params.k)
    if np.any(xv < lo) or np.any(xv > hi):
        raise DomainError("density requested outside the admissible well")
    amps = _psi_matrix(spec, profile, xv)
    ph = _phases(spec, float(t))[:, 0]
    f = (spec.coefficients * ph) @ amps
    out = np.abs(f) ** 2
    return float(out[0]) if scalar else out


def density_pairsum(spec: CoherentStateSpec, profile: MassProfile, x: ArrayLike, t: float) -> ArrayLike:
    """Density via the rearranged pair sum over n = p+q; verification route."""
    scalar = np.isscalar(x)
    xv = np.atleast_1d(np.asarray(x, dtype=float))
    amps = _psi_matrix(spec, profile, xv)
    c = spec.coefficients
    sig = spec.params.sigma
    wk2 = spec.params.omega * spec.params.k**2
    N = spec.n_max
    out = np.zeros(xv.shape, dtype=float)
    for n in range(0, 2 * N + 1):
        l_lo, l_hi = max(0, n - N), min(n, N)
        ls = np.arange(l_lo, l_hi + 1)
        dphi = 0.5 * (n - 2.0 * ls) * (n + 2.0 * sig)
        ph = np.cos(np.mod(wk2 * dphi * float(t), 2.0 * math.pi))
        coeff = c[ls] * c[n - ls] * ph
        out = out + coeff @ (amps[ls] * amps[n - ls])
    return float(out[0]) if scalar else out
