"""Numerically stable scalar primitives shared by the rest of the package.

Everything here works in binary64 and natural logarithms (nats), is pure,
and is safe to call from any number of concurrent workers.
"""

from __future__ import annotations

import math

from .errors import ConsistencyError, DomainError

# Probabilities this close to 0 or 1 are snapped to the endpoint before any
# log is taken, absorbing rounding noise from upstream probability arithmetic.
ENDPOINT_CLAMP = 1e-15


def _require_finite(name: str, x: float) -> None:
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")


def one_minus_exp_neg(a: float) -> float:
    """1 - exp(-a) for a >= 0, accurate for small a.

    Uses expm1, so the result keeps full relative precision when a << 1,
    where the naive subtraction 1.0 - exp(-a) would cancel catastrophically.
    """
    _require_finite("a", a)
    if a < 0.0:
        raise DomainError(f"a must be nonnegative, got {a}")
    return -math.expm1(-a)


def log_one_plus(a: float) -> float:
    """log(1 + a), accurate for small |a|."""
    _require_finite("a", a)
    if a <= -1.0:
        raise DomainError(f"a must exceed -1, got {a}")
    return math.log1p(a)


def entropy_term(p: float) -> float:
    """p * log(1/p) in nats, with the convention 0 log 0 = 0."""
    _require_finite("p", p)
    if p < -ENDPOINT_CLAMP or p > 1.0 + ENDPOINT_CLAMP:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    if p <= ENDPOINT_CLAMP or p >= 1.0 - ENDPOINT_CLAMP:
        return 0.0
    return -p * math.log(p)


def binary_entropy(p: float) -> float:
    """H(p) = p log(1/p) + (1-p) log(1/(1-p)) in nats."""
    return entropy_term(p) + entropy_term(1.0 - p)


def _half_entropy(p: float, complement: float) -> float:
    # p log(1/p), taking log(p) through log1p(-complement) when p is the
    # larger part so a precisely known tiny complement is not rounded away.
    if p <= ENDPOINT_CLAMP or complement <= ENDPOINT_CLAMP:
        return 0.0
    log_p = math.log1p(-complement) if p > 0.5 else math.log(p)
    return -p * log_p


def binary_entropy_split(p: float, one_minus_p: float) -> float:
    """Binary entropy from a probability and its separately computed complement.

    When p is within rounding distance of 1, evaluating ``1 - p`` directly
    destroys the complement; callers that can compute the complement exactly
    (for example as a sum of one_minus_exp_neg terms) pass it here instead.
    """
    _require_finite("p", p)
    _require_finite("one_minus_p", one_minus_p)
    if p < -ENDPOINT_CLAMP or one_minus_p < -ENDPOINT_CLAMP:
        raise DomainError(f"probabilities must be nonnegative, got {p}, {one_minus_p}")
    if abs((p + one_minus_p) - 1.0) > 1e-9:
        raise ConsistencyError(
            f"p + complement = {p + one_minus_p!r}, expected 1 within 1e-9"
        )
    return _half_entropy(p, one_minus_p) + _half_entropy(one_minus_p, p)


def poisson_pmf(mean: float, k: int) -> float:
    """Poisson probability mass exp(-mean) * mean**k / k!.

    Evaluated in the log domain so large k or mean cannot overflow the
    intermediate power and factorial. mean = 0 is the point mass at k = 0.
    """
    _require_finite("mean", mean)
    if mean < 0.0:
        raise DomainError(f"mean must be nonnegative, got {mean}")
    if k < 0 or k != int(k):
        raise DomainError(f"k must be a nonnegative integer, got {k!r}")
    k = int(k)
    if mean == 0.0:
        return 1.0 if k == 0 else 0.0
    if k == 0:
        return math.exp(-mean)
    return math.exp(k * math.log(mean) - mean - math.lgamma(k + 1))
