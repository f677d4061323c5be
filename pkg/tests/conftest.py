import math

# Shared sweep grids: log-spaced powers covering the wideband range, and the
# dark-current ratios used throughout the test suite.
EPS_GRID = [10.0 ** (-9.0 + 7.0 * i / 14.0) for i in range(15)]
C_GRID = (0.0, 0.1, 1.0, 10.0)
DECADE_EPS = (1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3)


def rel_err(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


def log_spaced(lo: float, hi: float, n: int) -> list[float]:
    if n == 1:
        return [lo]
    step = (math.log(hi) - math.log(lo)) / (n - 1)
    return [math.exp(math.log(lo) + i * step) for i in range(n)]
