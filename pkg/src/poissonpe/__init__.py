"""Photon-efficiency bounds for the discrete-time counting channel.

Exact PPM and on-off-keying lower bounds, closed-form lower/upper bounds,
the duality upper bound with its numeric auxiliary maximization, asymptotic
approximations, and two independent verification oracles (frame simulation
and Blahut-Arimoto).
"""

from .asymptotics import (
    KDecomposition,
    LimitConstants,
    approximation,
    k_from_bound,
    limit_constants,
)
from .channel import (
    ChannelParams,
    PpmConfig,
    RegimeFlags,
    channel_transition,
    ppm_config_from,
    regime_check,
)
from .converse import (
    AuxMaximum,
    geometric_entropy_bound,
    output_dist_r,
    pe_upper_duality,
    pe_upper_prp3,
    phi,
    phi_derivative,
    sup_phi,
)
from .errors import ConsistencyError, DomainError, OracleMismatchError, RegimeError
from .numerics import (
    binary_entropy,
    binary_entropy_split,
    entropy_term,
    log_one_plus,
    one_minus_exp_neg,
    poisson_pmf,
)
from .ook import OokIntermediates, ook_intermediates, pe_lower_ook
from .oracle import (
    BaResult,
    MonteCarloReport,
    blahut_arimoto,
    build_super_matrix,
    mc_super_channel,
)
from .ppm import (
    PhotonEfficiencyBound,
    SimpleSuperChannel,
    SoftSuperChannel,
    pe_lower_ppm_simple_exact,
    pe_lower_ppm_soft_exact,
    pe_lower_prp1,
    pe_lower_prp2,
    simple_ppm_mi,
    simple_super_channel,
    soft_ppm_mi,
    soft_super_channel,
)

__version__ = "0.1.0"

__all__ = [
    "AuxMaximum",
    "BaResult",
    "ChannelParams",
    "ConsistencyError",
    "DomainError",
    "KDecomposition",
    "LimitConstants",
    "MonteCarloReport",
    "OokIntermediates",
    "OracleMismatchError",
    "PhotonEfficiencyBound",
    "PpmConfig",
    "RegimeError",
    "RegimeFlags",
    "SimpleSuperChannel",
    "SoftSuperChannel",
    "approximation",
    "binary_entropy",
    "binary_entropy_split",
    "blahut_arimoto",
    "build_super_matrix",
    "channel_transition",
    "entropy_term",
    "geometric_entropy_bound",
    "k_from_bound",
    "limit_constants",
    "log_one_plus",
    "mc_super_channel",
    "one_minus_exp_neg",
    "ook_intermediates",
    "output_dist_r",
    "pe_lower_ook",
    "pe_lower_ppm_simple_exact",
    "pe_lower_ppm_soft_exact",
    "pe_lower_prp1",
    "pe_lower_prp2",
    "pe_upper_duality",
    "pe_upper_prp3",
    "phi",
    "phi_derivative",
    "poisson_pmf",
    "ppm_config_from",
    "regime_check",
    "simple_ppm_mi",
    "simple_super_channel",
    "soft_ppm_mi",
    "soft_super_channel",
    "sup_phi",
]
