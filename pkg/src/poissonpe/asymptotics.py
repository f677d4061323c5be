"""Approximation formulas and the extracted constant-term limits.

The constant (third-order) term of the photon efficiency is bracketed
analytically: the double limit eps -> 0 then c -> infinity cannot be probed
in binary64 (the lower-bound regime needs eps < exp(-c), unrepresentable
beyond c ~ 700), so the limits are carried as the closed-form constants the
bounds converge to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import ChannelParams, regime_check
from .errors import DomainError
from .ppm import PhotonEfficiencyBound

APPROXIMATION_KINDS = ("approx_log1c", "approx_large_c", "first_order", "bosonic_ref")


@dataclass(frozen=True)
class KDecomposition:
    """Constant-term residual K = pe - log(1/eps) + loglog(1/eps).

    source_kind records which bound the photon-efficiency value came from;
    a K extracted from a bound is a bound on K, not the true constant.
    """

    k_value: float
    source_kind: str | None = None


@dataclass(frozen=True)
class LimitConstants:
    """Small-eps constant terms of the three closed-form bounds."""

    lower_soft: float
    lower_simple: float
    upper: float


def _check_loglog_domain(epsilon: float) -> float:
    if not (math.isfinite(epsilon) and 0.0 < epsilon < math.exp(-1.0)):
        raise DomainError(f"epsilon must lie in (0, 1/e), got {epsilon!r}")
    return -math.log(epsilon)


def approximation(kind: str, params: ChannelParams) -> PhotonEfficiencyBound:
    """Closed-form approximations of the maximum photon efficiency.

    approx_log1c:   log(1/eps) - loglog(1/eps) - log(1+c)
    approx_large_c: log(1/eps) - loglog(1/eps) - log(c), c > 0
    first_order:    log(1/eps)
    bosonic_ref:    log(1/eps) + 1  (lossless reference ceiling)
    """
    if kind not in APPROXIMATION_KINDS:
        raise DomainError(f"unknown approximation kind {kind!r}")
    big_l = _check_loglog_domain(params.epsilon)
    if kind == "approx_log1c":
        value = big_l - math.log(big_l) - math.log1p(params.c)
    elif kind == "approx_large_c":
        if params.c <= 0.0:
            raise DomainError("approx_large_c needs c > 0")
        value = big_l - math.log(big_l) - math.log(params.c)
    elif kind == "first_order":
        value = big_l
    else:
        value = big_l + 1.0
    return PhotonEfficiencyBound(kind=kind, value=value, regime=regime_check(params))


def k_from_bound(
    pe_value: float, epsilon: float, source_kind: str | None = None
) -> KDecomposition:
    """K = pe_value - log(1/eps) + loglog(1/eps)."""
    big_l = _check_loglog_domain(epsilon)
    return KDecomposition(
        k_value=pe_value - big_l + math.log(big_l), source_kind=source_kind
    )


def limit_constants(c: float) -> LimitConstants:
    """Constant terms the closed-form bounds approach as eps -> 0.

    lower_soft = -log(1+c) - 3/2, lower_simple = -c - log(1+c) - 3/2,
    upper = -log(1+c) + 2 + log 13. Dividing lower_soft and upper by log c
    brackets -1 for large c, pinning the constant term's growth rate.
    """
    if not (isinstance(c, (int, float)) and math.isfinite(c) and c >= 0.0):
        raise DomainError(f"c must be nonnegative and finite, got {c!r}")
    log1c = math.log1p(c)
    return LimitConstants(
        lower_soft=-log1c - 1.5,
        lower_simple=-c - log1c - 1.5,
        upper=-log1c + 2.0 + math.log(13.0),
    )
