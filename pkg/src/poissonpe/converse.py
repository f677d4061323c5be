"""Duality upper bound on photon efficiency, and the max-entropy converse.

The upper bound pairs the counting channel with a fixed output law: mass
1 - (1+c) eps at zero and a geometric tail with ratio 1/log(1/eps) above.
The resulting relative-entropy bound reduces to closed-form terms plus
eps * sup_x phi(x) for an auxiliary function phi, whose supremum is found
numerically (log grid plus golden-section refinement); the analytic
derivative is used only to verify the bracket, never to locate the maximum,
because its leading factor cancels delicately at small x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import ChannelParams, regime_check
from .errors import DomainError, RegimeError
from .numerics import one_minus_exp_neg
from .ppm import PhotonEfficiencyBound

SUP_GRID_POINTS = 4096
SUP_REFINE_REL_WIDTH = 1e-10

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class AuxMaximum:
    """Numerically located maximum of phi.

    bracket_verified records whether the derivative sign checks beyond the
    maximizer passed; a failed check is reported here, never silently.
    """

    x_star: float
    value: float
    bracket_verified: bool


def _check_small_eps(params: ChannelParams) -> None:
    if params.epsilon >= math.exp(-1.0):
        raise DomainError(
            f"epsilon must be below 1/e for the auxiliary function, got {params.epsilon}"
        )


def _check_positive_x(x: float) -> None:
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0.0):
        raise DomainError(f"x must be positive and finite, got {x!r}")


def output_dist_r(y: int, params: ChannelParams) -> float:
    """The fixed output law: R(0) = 1 - (1+c) eps, geometric tail above.

    The tail ratio is 1/log(1/eps), so the law sums to one exactly by the
    geometric series.
    """
    eps, c = params.epsilon, params.c
    big_l = params.log_inv_eps
    if (1.0 + c) * eps >= 1.0:
        raise DomainError(f"(1+c)*eps must be below 1, got {(1.0 + c) * eps}")
    if big_l <= 1.0:
        raise DomainError(f"log(1/eps) must exceed 1, got {big_l}")
    if y < 0 or y != int(y):
        raise DomainError(f"y must be a nonnegative integer, got {y!r}")
    if y == 0:
        return 1.0 - (1.0 + c) * eps
    return (1.0 + c) * eps * (1.0 - 1.0 / big_l) * (1.0 / big_l) ** (int(y) - 1)


def _log_term(x: float, params: ChannelParams) -> float:
    return math.log((x + params.lam) / ((1.0 + params.c) * params.epsilon * params.log_inv_eps))


def phi(x: float, params: ChannelParams) -> float:
    """phi(x) = (1 - e^{-x})/x * log((x + lam)/((1+c) eps log(1/eps)))."""
    _check_positive_x(x)
    _check_small_eps(params)
    return one_minus_exp_neg(x) / x * _log_term(x, params)


def _curvature_factor(x: float) -> float:
    # ((1+x) e^{-x} - 1)/x^2, rewritten as (x e^{-x} - (1 - e^{-x}))/x^2 so
    # the small-x cancellation happens between two accurately known terms.
    # Tends to -1/2 as x tends to 0.
    return (x * math.exp(-x) - one_minus_exp_neg(x)) / (x * x)


def phi_derivative(x: float, params: ChannelParams) -> float:
    """d phi / d x, used only to verify a located maximum."""
    _check_positive_x(x)
    _check_small_eps(params)
    return _curvature_factor(x) * _log_term(x, params) + one_minus_exp_neg(x) / (
        x * (x + params.lam)
    )


def _golden_section_max(f, lo: float, hi: float, rel_width: float):
    # Golden-section refinement of a bracketed maximum; returns the best
    # probe seen, which therefore never falls below any point it visited.
    a, b = lo, hi
    c_pt = b - _INV_GOLDEN * (b - a)
    d_pt = a + _INV_GOLDEN * (b - a)
    fc, fd = f(c_pt), f(d_pt)
    best_x, best_v = (c_pt, fc) if fc >= fd else (d_pt, fd)
    for _ in range(300):
        if (b - a) <= rel_width * abs(best_x):
            break
        if fc >= fd:
            b, d_pt, fd = d_pt, c_pt, fc
            c_pt = b - _INV_GOLDEN * (b - a)
            fc = f(c_pt)
            probe_x, probe_v = c_pt, fc
        else:
            a, c_pt, fc = c_pt, d_pt, fd
            d_pt = a + _INV_GOLDEN * (b - a)
            fd = f(d_pt)
            probe_x, probe_v = d_pt, fd
        if probe_v > best_v:
            best_x, best_v = probe_x, probe_v
    return best_x, best_v


def sup_phi(params: ChannelParams, strict: bool = False) -> AuxMaximum:
    """Supremum of phi over x > 0.

    Stage 1 probes a log-spaced grid from max(lam, tiny) up to
    max(1, 24/log(1/eps)), twice the guaranteed maximizer range, extended
    with the x -> 0 limit log(c/((1+c) log(1/eps))) when c > 0 (for c = 0
    the limit is -inf and the lower grid end stays at 1e-12). Stage 2
    refines around the best grid point by golden section to relative width
    1e-10. Stage 3 verifies the derivative is negative at 2 x_star and at
    12/log(1/eps) + 1; failure only clears bracket_verified.
    """
    flags = regime_check(params)
    if strict and not flags.upper_ok:
        raise RegimeError("upper-bound small-power conditions violated")
    _check_small_eps(params)
    lam = params.lam
    big_l = params.log_inv_eps

    lo = max(lam, 1e-12 * max(1.0, lam))
    hi = max(1.0, 24.0 / big_l)
    step = (hi / lo) ** (1.0 / (SUP_GRID_POINTS - 1))
    xs = [lo * step**i for i in range(SUP_GRID_POINTS)]
    xs[-1] = hi
    values = [phi(x, params) for x in xs]
    best_i = max(range(SUP_GRID_POINTS), key=values.__getitem__)
    best_x, best_v = xs[best_i], values[best_i]

    bracket_lo = xs[best_i - 1] if best_i > 0 else xs[0]
    bracket_hi = xs[best_i + 1] if best_i < SUP_GRID_POINTS - 1 else xs[-1]
    refined_x, refined_v = _golden_section_max(
        lambda x: phi(x, params), bracket_lo, bracket_hi, SUP_REFINE_REL_WIDTH
    )
    if refined_v >= best_v:
        best_x, best_v = refined_x, refined_v

    if params.c > 0.0:
        limit_v = math.log(params.c / ((1.0 + params.c) * big_l))
        if limit_v > best_v:
            best_x, best_v = 0.0, limit_v

    if best_x > 0.0:
        bracket_verified = (
            phi_derivative(2.0 * best_x, params) < 0.0
            and phi_derivative(12.0 / big_l + 1.0, params) < 0.0
        )
    else:
        bracket_verified = False
    return AuxMaximum(x_star=best_x, value=best_v, bracket_verified=bracket_verified)


def _stable_log_gap(a: float) -> float:
    # log(1/(1-a)) - a for a in [0, 1); the direct form cancels to nothing
    # below a ~ 1e-8, so small arguments go through the series a^2/2 + ...
    if a < 1e-4:
        return a * a * (0.5 + a * (1.0 / 3.0 + a * (0.25 + a * 0.2)))
    return -math.log1p(-a) - a


def _check_closed_form_domain(params: ChannelParams) -> None:
    if (1.0 + params.c) * params.epsilon >= 1.0:
        raise DomainError(
            f"(1+c)*eps must be below 1, got {(1.0 + params.c) * params.epsilon}"
        )
    if params.log_inv_eps <= 1.0:
        raise DomainError(f"log(1/eps) must exceed 1, got {params.log_inv_eps}")


def pe_upper_duality(params: ChannelParams, strict: bool = False) -> PhotonEfficiencyBound:
    """Duality upper bound with the numerically evaluated sup of phi.

    loglog(1/eps) + 2 + (1/eps)(log(1/(1-(1+c)eps)) - (1+c)eps)
      + (c^2/2) eps loglog(1/eps) + (1+c) log(1/(1 - 1/log(1/eps)))
      + e^{-lam} sup phi.
    The sup-phi contribution is floored at zero; flooring is recorded in
    the bound's note.
    """
    flags = regime_check(params)
    if strict and not flags.upper_ok:
        raise RegimeError("upper-bound small-power conditions violated")
    _check_closed_form_domain(params)
    eps, c = params.epsilon, params.c
    big_l = params.log_inv_eps
    loglog = math.log(big_l)
    aux = sup_phi(params)
    contribution = math.exp(-params.lam) * aux.value
    note = None
    if contribution < 0.0:
        contribution = 0.0
        note = "sup-phi contribution clipped at zero"
    if not aux.bracket_verified:
        note = (note + "; " if note else "") + "maximizer bracket not verified"
    value = (
        loglog
        + 2.0
        + _stable_log_gap((1.0 + c) * eps) / eps
        + 0.5 * c * c * eps * loglog
        + (1.0 + c) * -math.log1p(-1.0 / big_l)
        + contribution
    )
    return PhotonEfficiencyBound(kind="upper_duality", value=value, regime=flags, note=note)


def pe_upper_prp3(params: ChannelParams, strict: bool = False) -> PhotonEfficiencyBound:
    """Fully closed-form upper bound.

    Replaces the sup-phi term of the duality bound by its analytic ceiling,
    giving log(1/eps) - loglog(1/eps) - log(1+c) + 2 + log 13 plus the same
    small residual terms.
    """
    flags = regime_check(params)
    if strict and not flags.upper_ok:
        raise RegimeError("upper-bound small-power conditions violated")
    _check_closed_form_domain(params)
    eps, c = params.epsilon, params.c
    big_l = params.log_inv_eps
    loglog = math.log(big_l)
    value = (
        big_l
        - loglog
        - math.log1p(c)
        + 2.0
        + math.log(13.0)
        + _stable_log_gap((1.0 + c) * eps) / eps
        + 0.5 * c * c * eps * loglog
        + (1.0 + c) * -math.log1p(-1.0 / big_l)
    )
    return PhotonEfficiencyBound(kind="upper_prp3", value=value, regime=flags)


def geometric_entropy_bound(epsilon: float) -> float:
    """Max-entropy converse per channel use: (1+eps)log(1+eps) - eps log eps.

    The geometric distribution maximizes entropy among nonnegative integer
    laws with a first-moment constraint, so this dominates the zero-dark
    capacity; it also equals the lossless bosonic reference capacity.
    """
    if not (isinstance(epsilon, (int, float)) and math.isfinite(epsilon) and epsilon > 0.0):
        raise DomainError(f"epsilon must be positive and finite, got {epsilon!r}")
    return (1.0 + epsilon) * math.log1p(epsilon) - epsilon * math.log(epsilon)
