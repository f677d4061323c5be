"""Independent verification oracles: frame simulation and Blahut-Arimoto.

Neither route reuses the factored closed forms it is meant to check. The
Monte-Carlo sampler draws receiver outcomes from per-slot trigger events;
the matrix builder assembles the super channel from raw channel transition
probabilities; Blahut-Arimoto maximizes mutual information directly on the
matrix with certified per-iteration capacity bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .channel import ChannelParams, PpmConfig, channel_transition
from .errors import ConsistencyError, DomainError
from .numerics import one_minus_exp_neg

OUTCOME_CLASSES = (
    "correct_single",
    "wrong_single",
    "pair_with_pulse",
    "pair_without_pulse",
    "erasure",
)

MAX_MATRIX_FRAME = 64


@dataclass(frozen=True)
class MonteCarloReport:
    """Outcome-class counts of simulated PPM frames, with plug-in MI values.

    std_errors are the per-class binomial standard errors
    sqrt(f (1-f) / trials); mi_simple_std_error and mi_soft_std_error come
    from the delta method over the multinomial class counts. The seed fully
    determines the report (counter-based Philox generator).
    """

    trials: int
    counts: dict[str, int]
    empirical_probs: dict[str, float]
    empirical_mi_simple: float
    empirical_mi_soft: float
    std_errors: dict[str, float]
    mi_simple_std_error: float
    mi_soft_std_error: float
    seed: int


@dataclass(frozen=True)
class BaResult:
    """Capacity estimate with the certified bound gap at termination.

    capacity is the achievable (lower) capacity bound of the final input
    distribution; residual is the gap to the matching upper bound, so the
    true capacity lies within residual above capacity on success.
    """

    capacity: float
    input_distribution: np.ndarray
    iterations: int
    residual: float
    converged: bool


def _plugin_mi_simple(b: int, p0: float, p1: float) -> float:
    marginal = p0 + (b - 1) * p1
    total = 0.0
    if p0 > 0.0:
        total += p0 * math.log(b * p0 / marginal)
    if p1 > 0.0:
        total += (b - 1) * p1 * math.log(b * p1 / marginal)
    return total


def _plugin_mi_soft(b: int, p0: float, p1: float, p2: float, p3: float) -> float:
    total = _plugin_mi_simple(b, p0, p1)
    pair_marginal = 2.0 * p2 + (b - 2) * p3
    if p2 > 0.0:
        total += (b - 1) * p2 * math.log(b * p2 / pair_marginal)
    if p3 > 0.0:
        total += 0.5 * (b - 1) * (b - 2) * p3 * math.log(b * p3 / pair_marginal)
    return total


def _mi_from_class_freqs(b: int, freqs: np.ndarray, soft: bool) -> float:
    p0 = float(freqs[0])
    p1 = float(freqs[1]) / (b - 1)
    if not soft:
        return _plugin_mi_simple(b, p0, p1)
    p2 = float(freqs[2]) / (b - 1)
    p3 = 2.0 * float(freqs[3]) / ((b - 1) * (b - 2)) if b > 2 else 0.0
    return _plugin_mi_soft(b, p0, p1, p2, p3)


def _mi_std_error(b: int, freqs: np.ndarray, trials: int, soft: bool) -> float:
    # Delta method: the plug-in MI is a smooth function of the multinomial
    # class frequencies; gradient by central differences on classes with
    # positive frequency (zero-frequency classes carry no variance).
    grad = np.zeros(len(freqs))
    for i, f in enumerate(freqs):
        if f <= 0.0:
            continue
        h = 1e-7 * max(f, 1e-3)
        h = min(h, 0.5 * f)
        up = freqs.copy()
        up[i] += h
        down = freqs.copy()
        down[i] -= h
        grad[i] = (
            _mi_from_class_freqs(b, up, soft) - _mi_from_class_freqs(b, down, soft)
        ) / (2.0 * h)
    mean_grad = float(np.dot(freqs, grad))
    variance = float(np.dot(freqs, grad**2)) - mean_grad**2
    return math.sqrt(max(variance, 0.0) / trials)


def mc_super_channel(
    params: ChannelParams, cfg: PpmConfig, trials: int, seed: int
) -> MonteCarloReport:
    """Simulate PPM frames and classify each into the five receiver outcomes.

    Per frame the pulse slot triggers with probability 1 - e^{-eta-lam} and
    the number of triggered dark slots is binomial(b-1, 1 - e^{-lam}). By
    per-slot independence and exchangeability this matches sampling all b
    Poisson slots and thresholding at one count; only the class counts
    matter, and slot identity is symmetric.
    """
    if trials < 1:
        raise DomainError(f"trials must be positive, got {trials}")
    b = cfg.b
    trig_pulse = one_minus_exp_neg(cfg.eta + params.lam)
    trig_dark = one_minus_exp_neg(params.lam)
    rng = np.random.Generator(np.random.Philox(key=seed))
    pulse_hit = rng.random(trials) < trig_pulse
    dark_hits = rng.binomial(b - 1, trig_dark, size=trials)

    counts = {
        "correct_single": int(np.count_nonzero(pulse_hit & (dark_hits == 0))),
        "wrong_single": int(np.count_nonzero(~pulse_hit & (dark_hits == 1))),
        "pair_with_pulse": int(np.count_nonzero(pulse_hit & (dark_hits == 1))),
        "pair_without_pulse": int(np.count_nonzero(~pulse_hit & (dark_hits == 2))),
    }
    counts["erasure"] = trials - sum(counts.values())

    freqs = np.array([counts[name] / trials for name in OUTCOME_CLASSES])
    empirical_probs = {name: float(f) for name, f in zip(OUTCOME_CLASSES, freqs)}
    std_errors = {
        name: math.sqrt(f * (1.0 - f) / trials) for name, f in empirical_probs.items()
    }
    return MonteCarloReport(
        trials=trials,
        counts=counts,
        empirical_probs=empirical_probs,
        empirical_mi_simple=_mi_from_class_freqs(b, freqs, soft=False),
        empirical_mi_soft=_mi_from_class_freqs(b, freqs, soft=True),
        std_errors=std_errors,
        mi_simple_std_error=_mi_std_error(b, freqs, trials, soft=False),
        mi_soft_std_error=_mi_std_error(b, freqs, trials, soft=True),
        seed=seed,
    )


def analytic_class_probs(params: ChannelParams, cfg: PpmConfig) -> dict[str, float]:
    """Exact outcome-class probabilities from per-slot trigger events."""
    b = cfg.b
    trig_pulse = one_minus_exp_neg(cfg.eta + params.lam)
    trig_dark = one_minus_exp_neg(params.lam)
    quiet_dark = math.exp(-params.lam)
    probs = {
        "correct_single": trig_pulse * quiet_dark ** (b - 1),
        "wrong_single": (1.0 - trig_pulse) * (b - 1) * trig_dark * quiet_dark ** (b - 2),
        "pair_with_pulse": trig_pulse * (b - 1) * trig_dark * quiet_dark ** (b - 2),
        "pair_without_pulse": (1.0 - trig_pulse)
        * 0.5
        * (b - 1)
        * (b - 2)
        * trig_dark**2
        * quiet_dark ** (b - 3),
    }
    probs["erasure"] = max(0.0, 1.0 - sum(probs.values()))
    return probs


def build_super_matrix(
    params: ChannelParams, cfg: PpmConfig, receiver: str = "soft"
) -> np.ndarray:
    """Explicit super-channel matrix, built from raw transition probabilities.

    Soft receiver: b single-position outputs, b(b-1)/2 pair outputs in
    lexicographic order, then the erasure column. Simple receiver: the b
    position outputs plus the erasure. Entries come from products of
    channel_transition no-count/count probabilities, independently of the
    factored closed forms used elsewhere.
    """
    b = cfg.b
    if b > MAX_MATRIX_FRAME:
        raise DomainError(f"frame length {b} exceeds the matrix limit {MAX_MATRIX_FRAME}")
    if receiver not in ("soft", "simple"):
        raise DomainError(f"receiver must be 'soft' or 'simple', got {receiver!r}")
    quiet_pulse = channel_transition(cfg.eta, params, 0)
    quiet_dark = channel_transition(0.0, params, 0)
    hit_pulse = 1.0 - quiet_pulse
    hit_dark = 1.0 - quiet_dark

    p0 = hit_pulse * quiet_dark ** (b - 1)
    p1 = quiet_pulse * hit_dark * quiet_dark ** (b - 2)
    if receiver == "simple":
        matrix = np.full((b, b + 1), p1)
        np.fill_diagonal(matrix, p0)
        matrix[:, b] = 1.0 - p0 - (b - 1) * p1
        _check_rows(matrix)
        return matrix

    pairs = list(combinations(range(b), 2))
    p2 = hit_pulse * hit_dark * quiet_dark ** (b - 2)
    p3 = quiet_pulse * hit_dark**2 * quiet_dark ** (b - 3) if b >= 3 else 0.0
    n_out = b + len(pairs) + 1
    matrix = np.zeros((b, n_out))
    for i in range(b):
        matrix[i, :b] = p1
        matrix[i, i] = p0
    for j, (u, v) in enumerate(pairs):
        col = b + j
        matrix[:, col] = p3
        matrix[u, col] = p2
        matrix[v, col] = p2
    matrix[:, -1] = 1.0 - matrix[:, :-1].sum(axis=1)
    _check_rows(matrix)
    return matrix


def _check_rows(matrix: np.ndarray) -> None:
    sums = matrix.sum(axis=1)
    if np.any(matrix < -1e-15) or np.any(np.abs(sums - 1.0) > 1e-12):
        raise ConsistencyError("super-channel rows are not probability vectors")
    np.clip(matrix, 0.0, None, out=matrix)


def blahut_arimoto(matrix: np.ndarray, tol: float = 1e-12, max_iter: int = 10_000) -> BaResult:
    """Capacity of a discrete memoryless channel by alternating maximization.

    Each iteration yields an achievable rate (the current input's mutual
    information) and a matching capacity upper bound (the maximal
    conditional divergence); their gap certifies the answer. The capacity
    functional is concave on the simplex, so the uniform start is safe.
    Non-convergence is reported through converged=False, never silently.
    """
    w = np.asarray(matrix, dtype=float)
    if w.ndim != 2 or w.shape[0] < 1 or w.shape[1] < 1:
        raise DomainError(f"matrix must be 2-D, got shape {w.shape}")
    if tol <= 0.0:
        raise DomainError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise DomainError(f"max_iter must be positive, got {max_iter}")
    if np.any(w < 0.0) or np.any(np.abs(w.sum(axis=1) - 1.0) > 1e-9):
        raise DomainError("matrix rows must be probability vectors")

    n_in = w.shape[0]
    r = np.full(n_in, 1.0 / n_in)
    positive = w > 0.0
    log_w = np.where(positive, np.log(np.where(positive, w, 1.0)), 0.0)

    i_lower = 0.0
    i_upper = math.inf
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        marginal = r @ w
        with np.errstate(divide="ignore"):
            log_marginal = np.where(marginal > 0.0, np.log(marginal), 0.0)
        divergences = np.where(positive, w * (log_w - log_marginal), 0.0).sum(axis=1)
        i_lower = float(r @ divergences)
        i_upper = float(divergences.max())
        if i_upper - i_lower <= tol:
            converged = True
            break
        r = r * np.exp(divergences - i_upper)
        r /= r.sum()

    return BaResult(
        capacity=i_lower,
        input_distribution=r,
        iterations=iterations,
        residual=i_upper - i_lower,
        converged=converged,
    )
