"""PPM super channels, their exact mutual informations, and lower bounds.

A PPM frame puts a single pulse of amplitude eta into one of b slots. The
simple receiver records the position of the unique triggered slot (anything
else is an erasure); the soft-decision receiver additionally records
unordered pairs of exactly two triggered slots. Both induce symmetric
discrete super channels whose transition probabilities have closed forms.

All probabilities are computed in factored form, as a decaying exponential
times a one_minus_exp_neg term, never as a difference of two exponentials:
in the regime of interest the two exponentials agree to seven or more
digits and the difference would lose most of its precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import ChannelParams, PpmConfig, RegimeFlags, ppm_config_from, regime_check
from .errors import ConsistencyError, DomainError, RegimeError
from .numerics import log_one_plus, one_minus_exp_neg

# Larger violations of total probability than this are treated as bugs, not
# rounding, and raise ConsistencyError instead of being clamped.
NORMALIZATION_TOL = 1e-12

BOUND_KINDS = frozenset(
    {
        "upper_duality",
        "upper_prp3",
        "lower_prp1",
        "lower_prp2",
        "lower_ppm_simple_exact",
        "lower_ppm_soft_exact",
        "lower_ook",
        "approx_log1c",
        "approx_large_c",
        "first_order",
        "bosonic_ref",
    }
)


@dataclass(frozen=True)
class PhotonEfficiencyBound:
    """A tagged photon-efficiency value in nats per photon.

    regime carries the advisory condition flags at the parameters the value
    was computed for; note records numerical events such as clipping.
    """

    kind: str
    value: float
    regime: RegimeFlags
    note: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in BOUND_KINDS:
            raise DomainError(f"unknown bound kind {self.kind!r}")


@dataclass(frozen=True)
class SimpleSuperChannel:
    """Transition probabilities of the simple PPM receiver.

    p0: the pulse slot is the unique triggered slot (correct detection).
    p1: some specific other slot is the unique triggered one (b-1 ways).
    p_erasure: no slot or more than one slot triggered.
    """

    b: int
    p0: float
    p1: float
    p_erasure: float

    def __post_init__(self) -> None:
        _check_probability_row(
            (self.p0, self.p1, self.p_erasure),
            self.p0 + (self.b - 1) * self.p1 + self.p_erasure,
        )


@dataclass(frozen=True)
class SoftSuperChannel:
    """Transition probabilities of the soft-decision PPM receiver.

    On top of the simple receiver's p0/p1, pairs of exactly two triggered
    slots are kept: p2 for a specific pair containing the pulse slot (b-1
    ways), p3 for a specific pair of two non-pulse slots ((b-1)(b-2)/2
    ways), and p4 for the erasure.
    """

    b: int
    p0: float
    p1: float
    p2: float
    p3: float
    p4: float

    def __post_init__(self) -> None:
        total = (
            self.p0
            + (self.b - 1) * self.p1
            + (self.b - 1) * self.p2
            + 0.5 * (self.b - 1) * (self.b - 2) * self.p3
            + self.p4
        )
        _check_probability_row((self.p0, self.p1, self.p2, self.p3, self.p4), total)


def _check_probability_row(entries: tuple[float, ...], total: float) -> None:
    for p in entries:
        if not (0.0 <= p <= 1.0):
            raise ConsistencyError(f"transition probability {p!r} outside [0, 1]")
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise ConsistencyError(f"transition row sums to {total!r}, expected 1")


def _clamped_complement(assigned: float) -> float:
    """1 - assigned, clamped into [0, 1] only for sub-tolerance overshoots."""
    rem = 1.0 - assigned
    if rem < 0.0:
        if rem < -NORMALIZATION_TOL:
            raise ConsistencyError(f"assigned probability {assigned!r} exceeds 1")
        return 0.0
    if rem > 1.0:
        if rem > 1.0 + NORMALIZATION_TOL:
            raise ConsistencyError(f"assigned probability {assigned!r} is negative")
        return 1.0
    return rem


def simple_super_channel(params: ChannelParams, cfg: PpmConfig) -> SimpleSuperChannel:
    """Simple-receiver transition probabilities.

    p0 = e^{-(b-1) lam} (1 - e^{-eta-lam}),
    p1 = e^{-eta-(b-1) lam} (1 - e^{-lam}).
    """
    lam = params.lam
    b, eta = cfg.b, cfg.eta
    p0 = math.exp(-(b - 1) * lam) * one_minus_exp_neg(eta + lam)
    p1 = math.exp(-eta - (b - 1) * lam) * one_minus_exp_neg(lam)
    p_erasure = _clamped_complement(p0 + (b - 1) * p1)
    return SimpleSuperChannel(b=b, p0=p0, p1=p1, p_erasure=p_erasure)


def soft_super_channel(params: ChannelParams, cfg: PpmConfig) -> SoftSuperChannel:
    """Soft-decision-receiver transition probabilities.

    p2 = (1 - e^{-eta-lam})(1 - e^{-lam}) e^{-(b-2) lam},
    p3 = e^{-eta-lam} (1 - e^{-lam})^2 e^{-(b-3) lam},
    p4 = the complement of everything else.
    """
    if cfg.b < 3:
        raise DomainError(f"soft-decision receiver needs b >= 3, got b={cfg.b}")
    lam = params.lam
    b, eta = cfg.b, cfg.eta
    trig_pulse = one_minus_exp_neg(eta + lam)
    trig_dark = one_minus_exp_neg(lam)
    p0 = math.exp(-(b - 1) * lam) * trig_pulse
    p1 = math.exp(-eta - (b - 1) * lam) * trig_dark
    p2 = trig_pulse * trig_dark * math.exp(-(b - 2) * lam)
    p3 = math.exp(-eta - lam) * trig_dark**2 * math.exp(-(b - 3) * lam)
    assigned = p0 + (b - 1) * p1 + (b - 1) * p2 + 0.5 * (b - 1) * (b - 2) * p3
    p4 = _clamped_complement(assigned)
    return SoftSuperChannel(b=b, p0=p0, p1=p1, p2=p2, p3=p3, p4=p4)


def _two_term_mi(b: int, p0: float, p1: float) -> float:
    # Mutual information of the position outputs under a uniform input;
    # zero-probability terms resolve to 0 by explicit branching.
    marginal = p0 + (b - 1) * p1
    total = 0.0
    if p0 > 0.0:
        total += p0 * math.log(b * p0 / marginal)
    if p1 > 0.0:
        total += (b - 1) * p1 * math.log(b * p1 / marginal)
    return total


def simple_ppm_mi(sc: SimpleSuperChannel) -> float:
    """Exact mutual information of the simple super channel, nats per frame.

    Uniform input is optimal for this symmetric channel, and the erasure
    output contributes nothing, leaving the two position terms
    p0 log(b p0 / m) + (b-1) p1 log(b p1 / m) with m = p0 + (b-1) p1.
    """
    return _two_term_mi(sc.b, sc.p0, sc.p1)


def soft_ppm_mi(sc: SoftSuperChannel) -> float:
    """Exact mutual information of the soft-decision super channel.

    Adds to the simple receiver's two position terms the two pair terms
    with pair marginal m2 = 2 p2 + (b-2) p3. Never below the simple value:
    the simple output is a deterministic function of the soft output.
    """
    b = sc.b
    total = _two_term_mi(b, sc.p0, sc.p1)
    pair_marginal = 2.0 * sc.p2 + (b - 2) * sc.p3
    if sc.p2 > 0.0:
        total += (b - 1) * sc.p2 * math.log(b * sc.p2 / pair_marginal)
    if sc.p3 > 0.0:
        total += 0.5 * (b - 1) * (b - 2) * sc.p3 * math.log(b * sc.p3 / pair_marginal)
    return total


def pe_lower_ppm_simple_exact(params: ChannelParams) -> PhotonEfficiencyBound:
    """Exact simple-PPM photon efficiency, mi/eta with the derived frame."""
    cfg = ppm_config_from(params)
    mi = simple_ppm_mi(simple_super_channel(params, cfg))
    return PhotonEfficiencyBound(
        kind="lower_ppm_simple_exact", value=mi / cfg.eta, regime=regime_check(params)
    )


def pe_lower_ppm_soft_exact(params: ChannelParams) -> PhotonEfficiencyBound:
    """Exact soft-decision-PPM photon efficiency, mi/eta with the derived frame."""
    cfg = ppm_config_from(params)
    mi = soft_ppm_mi(soft_super_channel(params, cfg))
    return PhotonEfficiencyBound(
        kind="lower_ppm_soft_exact", value=mi / cfg.eta, regime=regime_check(params)
    )


def _check_prp_logs(c: float, eta: float, lower_ok: bool) -> None:
    if 1.0 - c * eta <= 0.0:
        msg = f"log(1 - c*eta) undefined: c*eta = {c * eta} >= 1"
        if lower_ok:
            msg += " (the small-power conditions hold but do not imply c*eta < 1 here)"
        raise DomainError(msg)
    if 1.0 - 0.5 * eta <= 0.0:
        raise DomainError(f"log(1 - eta/2) undefined: eta = {eta} >= 2")


def pe_lower_prp1(params: ChannelParams, strict: bool = False) -> PhotonEfficiencyBound:
    """Closed-form photon-efficiency guarantee of the simple-PPM scheme.

    (1 - eta/2) log b - c eta log b - (1 + c eps/eta) log(1+c)
      + (1 + c eps/eta) [log(1 - c eta) + log(1 - eta/2)] - 1 - c eps/eta,
    with b and eta derived from eps. Valid under the lower_ok conditions.
    """
    flags = regime_check(params)
    if strict and not flags.lower_ok:
        raise RegimeError("lower-bound small-power conditions violated")
    cfg = ppm_config_from(params)
    b, eta = cfg.b, cfg.eta
    c = params.c
    _check_prp_logs(c, eta, flags.lower_ok)
    ratio = params.lam / eta
    log_b = math.log(b)
    value = (
        (1.0 - 0.5 * eta) * log_b
        - c * eta * log_b
        - (1.0 + ratio) * log_one_plus(c)
        + (1.0 + ratio) * (math.log1p(-c * eta) + math.log1p(-0.5 * eta))
        - 1.0
        - ratio
    )
    return PhotonEfficiencyBound(kind="lower_prp1", value=value, regime=flags)


def pe_lower_prp2(params: ChannelParams, strict: bool = False) -> PhotonEfficiencyBound:
    """Closed-form guarantee of the soft-decision scheme.

    The simple-scheme bound plus the two-pulse gain
    (1 - eta/2)(b-1)(lam - lam^2/2)(1 - c eta) log(b/2) - c^2 eta/2
      - c (eta + lam),
    every added term carrying a factor of c.
    """
    base = pe_lower_prp1(params, strict=strict)
    cfg = ppm_config_from(params)
    if cfg.b < 3:
        raise DomainError(f"soft-decision bound needs b >= 3, got b={cfg.b}")
    b, eta = cfg.b, cfg.eta
    c, lam = params.c, params.lam
    gain = (
        (1.0 - 0.5 * eta) * (b - 1) * (lam - 0.5 * lam * lam) * (1.0 - c * eta) * math.log(0.5 * b)
        - 0.5 * c * c * eta
        - c * (eta + lam)
    )
    return PhotonEfficiencyBound(kind="lower_prp2", value=base.value + gain, regime=base.regime)
