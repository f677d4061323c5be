"""Counting-channel model, frame parameter derivation, and regime checks.

The channel adds a dark current lam = c * epsilon to the input amplitude and
emits a Poisson count. All bounds in this package are parameterized by the
average signal power epsilon and the dark-current ratio c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .numerics import poisson_pmf


@dataclass(frozen=True)
class ChannelParams:
    """Average signal power and dark-current ratio.

    epsilon is the expected number of detected signal photons per channel
    use. The dark current scales linearly with it: lam = c * epsilon.
    """

    epsilon: float
    c: float

    def __post_init__(self) -> None:
        if not (isinstance(self.epsilon, (int, float)) and math.isfinite(self.epsilon)):
            raise DomainError(f"epsilon must be a finite number, got {self.epsilon!r}")
        if self.epsilon <= 0.0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")
        if not (isinstance(self.c, (int, float)) and math.isfinite(self.c)):
            raise DomainError(f"c must be a finite number, got {self.c!r}")
        if self.c < 0.0:
            raise DomainError(f"c must be nonnegative, got {self.c}")

    @property
    def lam(self) -> float:
        """Dark current per channel use, c * epsilon."""
        return self.c * self.epsilon

    @property
    def log_inv_eps(self) -> float:
        """log(1/epsilon)."""
        return -math.log(self.epsilon)


@dataclass(frozen=True)
class PpmConfig:
    """Frame length and pulse amplitude for pulse-position modulation.

    Constructing this type directly is the expert entry point for oracle
    tests with a custom frame length; the bound evaluators always derive
    their configuration from ChannelParams via ppm_config_from.
    """

    b: int
    eta: float

    def __post_init__(self) -> None:
        if self.b != int(self.b) or self.b < 2:
            raise DomainError(f"frame length b must be an integer >= 2, got {self.b!r}")
        if not (math.isfinite(self.eta) and self.eta > 0.0):
            raise DomainError(f"eta must be positive and finite, got {self.eta!r}")


@dataclass(frozen=True)
class RegimeFlags:
    """Which small-power condition sets hold at the given parameters.

    lower_ok gates the closed-form PPM lower bounds, upper_ok the duality
    upper bounds. Both are advisory by default: evaluators outside the
    regime still return values tagged with these flags; strict mode
    escalates a violated flag to a RegimeError.
    """

    lower_ok: bool
    upper_ok: bool


def channel_transition(x: float, params: ChannelParams, y: int) -> float:
    """Probability of counting y photons given input amplitude x."""
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x >= 0.0):
        raise DomainError(f"input amplitude must be nonnegative and finite, got {x!r}")
    return poisson_pmf(params.lam + x, y)


def ppm_config_from(params: ChannelParams) -> PpmConfig:
    """Frame length b = floor(1/(eps log(1/eps))) and pulse amplitude b*eps.

    The amplitude choice makes the average power over one frame exactly
    epsilon. b >= 2 always holds on 0 < eps < 1 because eps*log(1/eps)
    never exceeds 1/e. Exact-integer quotients resolve downward, as floor
    does; there is no epsilon-nudging.
    """
    eps = params.epsilon
    if eps >= 1.0:
        raise DomainError(f"epsilon must lie in (0, 1) to size a frame, got {eps}")
    b = int(math.floor(1.0 / (eps * params.log_inv_eps)))
    return PpmConfig(b=b, eta=b * eps)


# Threshold exp(-1/(1 - 2/e)) of the logarithmic upper-bound condition.
_UPPER_LOG_LIMIT = math.exp(-1.0 / (1.0 - 2.0 / math.e))


def regime_check(params: ChannelParams) -> RegimeFlags:
    """Evaluate both small-power condition sets in binary64.

    lower_ok:  eps log(1/eps) < 1  and  eps < exp(-c).
    upper_ok:  eps < 1/e,  eps log(1/eps) < exp(-1/(1-2/e))/(1+c),
               and eps log(1/eps)^4 < 144/(1+c)^2.
    """
    eps, c = params.epsilon, params.c
    big_l = params.log_inv_eps
    lower_ok = eps * big_l < 1.0 and eps < math.exp(-c)
    upper_ok = (
        eps < math.exp(-1.0)
        and eps * big_l < _UPPER_LOG_LIMIT / (1.0 + c)
        and eps * big_l**4 < 144.0 / (1.0 + c) ** 2
    )
    return RegimeFlags(lower_ok=lower_ok, upper_ok=upper_ok)
