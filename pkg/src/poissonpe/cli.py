"""Command-line front end emitting plot-ready CSV/JSON data.

Subcommands: probe (all bounds at one parameter point), grid and figure1
(log-spaced sweeps in the fixed CSV schema), mc and ba (verification oracle
runs serialized as JSON). The CLI never plots.

Exit codes: 0 success, 1 I/O or oracle runtime failure, 2 usage error,
3 strict-mode regime violation, 4 oracle validation failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict

from .asymptotics import approximation
from .channel import ChannelParams, PpmConfig, ppm_config_from, regime_check
from .converse import pe_upper_duality, pe_upper_prp3
from .errors import ConsistencyError, DomainError, OracleMismatchError, RegimeError
from .ook import pe_lower_ook
from .oracle import (
    OUTCOME_CLASSES,
    analytic_class_probs,
    blahut_arimoto,
    build_super_matrix,
    mc_super_channel,
)
from .ppm import (
    pe_lower_ppm_simple_exact,
    pe_lower_ppm_soft_exact,
    pe_lower_prp1,
    pe_lower_prp2,
    simple_ppm_mi,
    simple_super_channel,
    soft_ppm_mi,
    soft_super_channel,
)

CSV_COLUMNS = (
    "epsilon",
    "c",
    "upper",
    "approx_log1c",
    "ook",
    "ppm_simple",
    "ppm_soft",
    "conditions_lower",
    "conditions_upper",
)

KIND_ORDER = (
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
)

FIGURE_C_VALUES = (0.1, 1.0, 10.0)
FIGURE_EPS_RANGE = (1e-8, 1e-2)
FIGURE_POINTS = 61

_UPPER_GATED = {"upper_duality", "upper_prp3"}
_LOWER_GATED = {"lower_prp1", "lower_prp2"}


def _fmt(x: float | None) -> str:
    # 17 significant digits guarantee float round-trip through text.
    return "" if x is None else format(x, ".17g")


def _fmt_bool(flag: bool) -> str:
    return "true" if flag else "false"


def log_grid(eps_min: float, eps_max: float, points: int) -> list[float]:
    """Log-spaced grid with exact endpoints."""
    if not (0.0 < eps_min <= eps_max < 1.0):
        raise DomainError(f"need 0 < eps_min <= eps_max < 1, got {eps_min}, {eps_max}")
    if points < 1:
        raise DomainError(f"points must be positive, got {points}")
    if eps_min == eps_max:
        return [eps_min] * points
    if points == 1:
        return [eps_min]
    lo, hi = math.log(eps_min), math.log(eps_max)
    grid = [math.exp(lo + (hi - lo) * i / (points - 1)) for i in range(points)]
    grid[0], grid[-1] = eps_min, eps_max
    return grid


def _kind_evaluators(params: ChannelParams, strict: bool):
    return {
        "upper_duality": lambda: pe_upper_duality(params, strict=strict),
        "upper_prp3": lambda: pe_upper_prp3(params, strict=strict),
        "lower_prp1": lambda: pe_lower_prp1(params, strict=strict),
        "lower_prp2": lambda: pe_lower_prp2(params, strict=strict),
        "lower_ppm_simple_exact": lambda: pe_lower_ppm_simple_exact(params),
        "lower_ppm_soft_exact": lambda: pe_lower_ppm_soft_exact(params),
        "lower_ook": lambda: pe_lower_ook(params),
        "approx_log1c": lambda: approximation("approx_log1c", params),
        "approx_large_c": lambda: approximation("approx_large_c", params),
        "first_order": lambda: approximation("first_order", params),
        "bosonic_ref": lambda: approximation("bosonic_ref", params),
    }


def evaluate_all_bounds(params: ChannelParams, strict: bool = False):
    """Every bound kind at one parameter point.

    Returns (values, reasons): non-evaluable kinds map to None with a
    reason code, "regime" when the kind's gating condition set fails and
    "domain" otherwise. In strict mode regime violations raise instead.
    """
    flags = regime_check(params)
    values: dict[str, float | None] = {}
    reasons: dict[str, str] = {}
    for kind, evaluate in _kind_evaluators(params, strict).items():
        try:
            values[kind] = evaluate().value
        except DomainError:
            values[kind] = None
            if kind in _UPPER_GATED and not flags.upper_ok:
                reasons[kind] = "regime"
            elif kind in _LOWER_GATED and not flags.lower_ok:
                reasons[kind] = "regime"
            else:
                reasons[kind] = "domain"
    return values, reasons


def _sweep_row(epsilon: float, c: float) -> dict[str, float | None | bool]:
    params = ChannelParams(epsilon=epsilon, c=c)
    flags = regime_check(params)

    def attempt(evaluate):
        try:
            return evaluate().value
        except DomainError:
            return None

    return {
        "epsilon": epsilon,
        "c": c,
        "upper": attempt(lambda: pe_upper_duality(params)),
        "approx_log1c": attempt(lambda: approximation("approx_log1c", params)),
        "ook": attempt(lambda: pe_lower_ook(params)),
        "ppm_simple": attempt(lambda: pe_lower_ppm_simple_exact(params)),
        "ppm_soft": attempt(lambda: pe_lower_ppm_soft_exact(params)),
        "conditions_lower": flags.lower_ok,
        "conditions_upper": flags.upper_ok,
    }


def sweep_csv(epsilons: list[float], c: float) -> str:
    """CSV sweep over epsilons at fixed c, rows in grid order."""
    with ThreadPoolExecutor(max_workers=min(8, len(epsilons))) as pool:
        rows = list(pool.map(lambda e: _sweep_row(e, c), epsilons))
    out = io.StringIO()
    out.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        out.write(
            ",".join(
                [
                    _fmt(row["epsilon"]),
                    _fmt(row["c"]),
                    _fmt(row["upper"]),
                    _fmt(row["approx_log1c"]),
                    _fmt(row["ook"]),
                    _fmt(row["ppm_simple"]),
                    _fmt(row["ppm_soft"]),
                    _fmt_bool(row["conditions_lower"]),
                    _fmt_bool(row["conditions_upper"]),
                ]
            )
            + "\n"
        )
    return out.getvalue()


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _json_dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def cmd_probe(args) -> int:
    params = ChannelParams(epsilon=args.epsilon, c=args.c)
    flags = regime_check(params)
    values, reasons = evaluate_all_bounds(params, strict=args.strict)
    try:
        cfg = ppm_config_from(params)
        b, eta = cfg.b, cfg.eta
    except DomainError:
        b, eta = None, None
    if args.format == "json":
        payload = {
            "epsilon": params.epsilon,
            "c": params.c,
            "b": b,
            "eta": eta,
            "regime": {"lower_ok": flags.lower_ok, "upper_ok": flags.upper_ok},
            "bounds": {kind: values[kind] for kind in KIND_ORDER},
            "reasons": reasons,
        }
        _emit(_json_dumps(payload), args.out)
    else:
        header = ",".join(CSV_COLUMNS) + "\n"
        row = ",".join(
            [
                _fmt(params.epsilon),
                _fmt(params.c),
                _fmt(values["upper_duality"]),
                _fmt(values["approx_log1c"]),
                _fmt(values["lower_ook"]),
                _fmt(values["lower_ppm_simple_exact"]),
                _fmt(values["lower_ppm_soft_exact"]),
                _fmt_bool(flags.lower_ok),
                _fmt_bool(flags.upper_ok),
            ]
        )
        _emit(header + row + "\n", args.out)
    return 0


def cmd_grid(args) -> int:
    epsilons = log_grid(args.eps_min, args.eps_max, args.points)
    if args.format == "json":
        with ThreadPoolExecutor(max_workers=min(8, len(epsilons))) as pool:
            rows = list(pool.map(lambda e: _sweep_row(e, args.c), epsilons))
        _emit(_json_dumps(rows), args.out)
    else:
        _emit(sweep_csv(epsilons, args.c), args.out)
    return 0


def cmd_figure1(args) -> int:
    epsilons = log_grid(*FIGURE_EPS_RANGE, args.points)
    os.makedirs(args.out_dir, exist_ok=True)
    for c in FIGURE_C_VALUES:
        path = os.path.join(args.out_dir, f"figure1_c{c:g}.csv")
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(sweep_csv(epsilons, c))
    return 0


def _sigma(diff: float, std_error: float) -> float:
    if std_error == 0.0:
        return 0.0 if diff == 0.0 else math.inf
    return abs(diff) / std_error


def cmd_mc(args) -> int:
    params = ChannelParams(epsilon=args.epsilon, c=args.c)
    cfg = ppm_config_from(params)
    report = mc_super_channel(params, cfg, trials=args.trials, seed=args.seed)

    expected = analytic_class_probs(params, cfg)
    class_sigmas = {}
    for name in OUTCOME_CLASSES:
        p = expected[name]
        se = math.sqrt(p * (1.0 - p) / args.trials)
        class_sigmas[name] = _sigma(report.empirical_probs[name] - p, se)

    simple_mi = simple_ppm_mi(simple_super_channel(params, cfg))
    soft_mi = (
        soft_ppm_mi(soft_super_channel(params, cfg)) if cfg.b >= 3 else simple_mi
    )
    mi_simple_sigma = _sigma(report.empirical_mi_simple - simple_mi, report.mi_simple_std_error)
    mi_soft_sigma = _sigma(report.empirical_mi_soft - soft_mi, report.mi_soft_std_error)

    worst = max([*class_sigmas.values(), mi_simple_sigma, mi_soft_sigma])
    payload = {
        "parameters": {
            "epsilon": params.epsilon,
            "c": params.c,
            "b": cfg.b,
            "eta": cfg.eta,
            "trials": args.trials,
            "seed": args.seed,
        },
        "report": asdict(report),
        "analytic": {
            "class_probs": expected,
            "mi_simple": simple_mi,
            "mi_soft": soft_mi,
        },
        "validation": {
            "class_sigmas": class_sigmas,
            "mi_simple_sigma": mi_simple_sigma,
            "mi_soft_sigma": mi_soft_sigma,
            "max_sigma": worst,
            "threshold_sigma": 5.0,
            "ok": worst <= 5.0,
        },
    }
    _emit(_json_dumps(payload), args.out)
    if worst > 5.0:
        raise OracleMismatchError(
            f"simulation disagrees with closed forms at {worst:.2f} standard errors"
        )
    return 0


def cmd_ba(args) -> int:
    params = ChannelParams(epsilon=args.epsilon, c=args.c)
    cfg = PpmConfig(b=args.b, eta=args.b * args.epsilon)
    matrix = build_super_matrix(params, cfg, receiver="soft")
    result = blahut_arimoto(matrix, tol=args.tol, max_iter=args.max_iter)
    if not result.converged:
        print(
            f"error: no convergence after {result.iterations} iterations "
            f"(residual {result.residual:.3e})",
            file=sys.stderr,
        )
        return 1

    if cfg.b >= 3:
        analytic = soft_ppm_mi(soft_super_channel(params, cfg))
    else:
        analytic = simple_ppm_mi(simple_super_channel(params, cfg))
    gap = abs(result.capacity - analytic)
    threshold = max(10.0 * args.tol, 1e-9 * abs(analytic))
    payload = {
        "parameters": {
            "epsilon": params.epsilon,
            "c": params.c,
            "b": cfg.b,
            "eta": cfg.eta,
            "tol": args.tol,
            "max_iter": args.max_iter,
        },
        "capacity": result.capacity,
        "input_distribution": [float(x) for x in result.input_distribution],
        "iterations": result.iterations,
        "residual": result.residual,
        "converged": result.converged,
        "analytic_mi": analytic,
        "validation": {"gap": gap, "threshold": threshold, "ok": gap <= threshold},
    }
    _emit(_json_dumps(payload), args.out)
    if gap > threshold:
        raise OracleMismatchError(
            f"capacity {result.capacity!r} disagrees with closed form {analytic!r}"
        )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poissonpe",
        description="Photon-efficiency bounds for the counting channel with dark current.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    probe = sub.add_parser("probe", help="evaluate every bound at one point")
    probe.add_argument("--epsilon", type=float, required=True)
    probe.add_argument("--c", type=float, required=True)
    probe.add_argument("--strict", action="store_true")
    probe.add_argument("--format", choices=("csv", "json"), default="json")
    probe.add_argument("--out", default=None)
    probe.set_defaults(handler=cmd_probe)

    grid = sub.add_parser("grid", help="sweep a log-spaced epsilon grid at fixed c")
    grid.add_argument("--eps-min", type=float, required=True)
    grid.add_argument("--eps-max", type=float, required=True)
    grid.add_argument("--points", type=int, required=True)
    grid.add_argument("--c", type=float, required=True)
    grid.add_argument("--format", choices=("csv", "json"), default="csv")
    grid.add_argument("--out", default=None)
    grid.set_defaults(handler=cmd_grid)

    figure1 = sub.add_parser("figure1", help="emit the three reference sweep files")
    figure1.add_argument("--out-dir", default=".")
    figure1.add_argument("--points", type=int, default=FIGURE_POINTS)
    figure1.set_defaults(handler=cmd_figure1)

    mc = sub.add_parser("mc", help="Monte-Carlo frame simulation report")
    mc.add_argument("--epsilon", type=float, required=True)
    mc.add_argument("--c", type=float, required=True)
    mc.add_argument("--trials", type=int, required=True)
    mc.add_argument("--seed", type=int, required=True)
    mc.add_argument("--out", default=None)
    mc.set_defaults(handler=cmd_mc)

    ba = sub.add_parser("ba", help="Blahut-Arimoto capacity of the explicit matrix")
    ba.add_argument("--b", type=int, required=True)
    ba.add_argument("--epsilon", type=float, required=True)
    ba.add_argument("--c", type=float, required=True)
    ba.add_argument("--tol", type=float, default=1e-9)
    ba.add_argument("--max-iter", type=int, default=10_000)
    ba.add_argument("--out", default=None)
    ba.set_defaults(handler=cmd_ba)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except RegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OracleMismatchError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConsistencyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())
