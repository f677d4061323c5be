"""On-off-keying photon-efficiency lower bound.

The "on" symbol reuses the PPM pulse amplitude eta and is sent with
probability eps/eta, so the average power is exactly eps; the receiver only
distinguishes "no count" from "at least one count".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import ChannelParams, ppm_config_from, regime_check
from .numerics import binary_entropy_split, one_minus_exp_neg
from .ppm import PhotonEfficiencyBound


@dataclass(frozen=True)
class OokIntermediates:
    """No-detection probability q and the on-probability eps/eta.

    one_minus_q is carried separately because it is computed as the
    complementary mixture of one_minus_exp_neg terms; near q = 1 a direct
    subtraction would lose most of its digits, and the binary entropy of q
    dominates the bound exactly there.
    """

    q: float
    one_minus_q: float
    on_probability: float


def ook_intermediates(params: ChannelParams) -> OokIntermediates:
    cfg = ppm_config_from(params)
    lam = params.lam
    on = params.epsilon / cfg.eta
    q = on * math.exp(-cfg.eta - lam) + (1.0 - on) * math.exp(-lam)
    one_minus_q = on * one_minus_exp_neg(cfg.eta + lam) + (1.0 - on) * one_minus_exp_neg(lam)
    return OokIntermediates(q=q, one_minus_q=one_minus_q, on_probability=on)


def pe_lower_ook(params: ChannelParams) -> PhotonEfficiencyBound:
    """On-off-keying lower bound in nats per photon.

    (1/eps) [H(q) - (eps/eta) H(e^{-eta-lam}) - (1 - eps/eta) H(e^{-lam})],
    with every binary entropy evaluated from a probability/complement pair
    so the near-one arguments keep full precision.
    """
    cfg = ppm_config_from(params)
    lam = params.lam
    inter = ook_intermediates(params)
    on = inter.on_probability
    h_mix = binary_entropy_split(inter.q, inter.one_minus_q)
    h_on = binary_entropy_split(math.exp(-cfg.eta - lam), one_minus_exp_neg(cfg.eta + lam))
    h_off = binary_entropy_split(math.exp(-lam), one_minus_exp_neg(lam))
    value = (h_mix - on * h_on - (1.0 - on) * h_off) / params.epsilon
    return PhotonEfficiencyBound(kind="lower_ook", value=value, regime=regime_check(params))
