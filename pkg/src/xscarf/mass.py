"""Position-dependent mass profiles and the auxiliary function mu.

Three profiles are supported: constant mass, the bounded profile without
singularities M = 1/(1+(lam*x)^2), and the profile with singularities
M = 1/(1-(lam*x)^2)^2 confined between its classical turning points
x = +/- 1/lam. Each supplies M, M', and the antiderivative mu of sqrt(M)
with derivatives up to third order, all in closed form; finite differences
appear only in the test oracles because the mass correction term amplifies
round-off.
"""

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .errors import DomainError, SingularityError

__all__ = ["MassProfile", "make_profile", "domain", "schwartz_term", "inverse_mu"]

ArrayLike = Union[float, np.ndarray]

KINDS = ("constant", "wos", "ws")

_WS_EDGE = 1.0 - 1e-9  # evaluations with |lam*x| beyond this fail loudly


@dataclass(frozen=True)
class MassProfile:
    """Immutable mass profile; all evaluators are pure and vectorized."""

    kind: str
    lam: float

    def _check_ws(self, x: np.ndarray) -> None:
        if self.kind == "ws" and np.any(np.abs(self.lam * x) > _WS_EDGE):
            raise SingularityError(
                f"ws mass profile evaluated at |lam*x| > {_WS_EDGE} (turning point)"
            )

    def M(self, x: ArrayLike) -> ArrayLike:
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        self._check_ws(x)
        if self.kind == "constant":
            out = np.ones_like(x)
        elif self.kind == "wos":
            out = 1.0 / (1.0 + (self.lam * x) ** 2)
        else:
            out = 1.0 / (1.0 - (self.lam * x) ** 2) ** 2
        return float(out) if scalar else out

    def M_prime(self, x: ArrayLike) -> ArrayLike:
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        self._check_ws(x)
        if self.kind == "constant":
            out = np.zeros_like(x)
        elif self.kind == "wos":
            out = -2.0 * self.lam**2 * x / (1.0 + (self.lam * x) ** 2) ** 2
        else:
            out = 4.0 * self.lam**2 * x / (1.0 - (self.lam * x) ** 2) ** 3
        return float(out) if scalar else out

    def mu(self, x: ArrayLike) -> ArrayLike:
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        self._check_ws(x)
        if self.kind == "constant":
            out = x.copy()
        elif self.kind == "wos":
            out = np.arcsinh(self.lam * x) / self.lam
        else:
            out = np.arctanh(self.lam * x) / self.lam
        return float(out) if scalar else out

    def mu_prime(self, x: ArrayLike) -> ArrayLike:
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        self._check_ws(x)
        if self.kind == "constant":
            out = np.ones_like(x)
        elif self.kind == "wos":
            out = (1.0 + (self.lam * x) ** 2) ** -0.5
        else:
            out = 1.0 / (1.0 - (self.lam * x) ** 2)
        return float(out) if scalar else out

    def mu_pprime(self, x: ArrayLike) -> ArrayLike:
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        self._check_ws(x)
        if self.kind == "constant":
            out = np.zeros_like(x)
        elif self.kind == "wos":
            out = -self.lam**2 * x * (1.0 + (self.lam * x) ** 2) ** -1.5
        else:
            out = 2.0 * self.lam**2 * x / (1.0 - (self.lam * x) ** 2) ** 2
        return float(out) if scalar else out

    def mu_ppprime(self, x: ArrayLike) -> ArrayLike:
        scalar = np.isscalar(x)
        x = np.asarray(x, dtype=float)
        self._check_ws(x)
        if self.kind == "constant":
            out = np.zeros_like(x)
        elif self.kind == "wos":
            u = 1.0 + (self.lam * x) ** 2
            out = -self.lam**2 * u**-1.5 + 3.0 * self.lam**4 * x**2 * u**-2.5
        else:
            u = 1.0 - (self.lam * x) ** 2
            out = 2.0 * self.lam**2 / u**2 + 8.0 * self.lam**4 * x**2 / u**3
        return float(out) if scalar else out


def make_profile(kind: str, lam: float = 1.0) -> MassProfile:
    """Construct a mass profile; lam must be positive for the PDEM kinds."""
    if kind not in KINDS:
        raise DomainError(f"unknown mass profile kind {kind!r}; expected one of {KINDS}")
    if kind == "constant":
        return MassProfile(kind="constant", lam=0.0)
    if not lam > 0.0:
        raise DomainError(f"mass parameter lambda must be positive, got {lam}")
    return MassProfile(kind=kind, lam=lam)


def domain(profile: MassProfile, k: float) -> Tuple[float, float]:
    """Maximal interval where |mu(x)| <= pi/(2k) (the admissible well)."""
    if not k > 0.0:
        raise DomainError(f"wavenumber k must be positive, got {k}")
    half_span = math.pi / (2.0 * k)
    if profile.kind == "constant":
        edge = half_span
    elif profile.kind == "wos":
        edge = math.sinh(profile.lam * half_span) / profile.lam
    else:
        edge = math.tanh(profile.lam * half_span) / profile.lam
    return (-edge, edge)


def schwartz_term(profile: MassProfile, x: ArrayLike) -> ArrayLike:
    """Mass-ordering correction (1/4) mu'''/mu'^3 - (5/8) mu''^2/mu'^4."""
    mup = profile.mu_prime(x)
    return 0.25 * profile.mu_ppprime(x) / mup**3 - 0.625 * profile.mu_pprime(x) ** 2 / mup**4


def inverse_mu(profile: MassProfile, mu: ArrayLike) -> ArrayLike:
    """x such that profile.mu(x) = mu (closed form for every supported kind).

    Lets integrals change variables to the angle theta = k*mu, where the
    bound-state oscillations are uniformly spaced regardless of lambda.
    """
    scalar = np.isscalar(mu)
    mu = np.asarray(mu, dtype=float)
    if profile.kind == "constant":
        out = mu.copy()
    elif profile.kind == "wos":
        out = np.sinh(profile.lam * mu) / profile.lam
    else:
        out = np.tanh(profile.lam * mu) / profile.lam
    return float(out) if scalar else out
