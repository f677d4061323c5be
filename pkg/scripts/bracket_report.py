#!/usr/bin/env python3
"""Print the constant-term bracket of the photon efficiency.

First table: the analytic constants the closed-form bounds converge to for
a range of dark-current ratios, with the ratio-to-log(c) columns that pin
the large-c growth rate at -1. Second table: finite-power residuals of the
computable bounds at a desk-scale power, showing how far each sits from
its limit.
"""

import argparse
import math

from poissonpe.asymptotics import k_from_bound, limit_constants
from poissonpe.channel import ChannelParams
from poissonpe.converse import pe_upper_duality
from poissonpe.ook import pe_lower_ook
from poissonpe.ppm import pe_lower_ppm_soft_exact, pe_lower_prp2


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--epsilon", type=float, default=1e-8)
    args = parser.parse_args()

    print("analytic constant-term bracket (nats):")
    print(f"{'c':>10} {'lower_simple':>13} {'lower_soft':>11} {'upper':>8} "
          f"{'soft/log c':>11} {'upper/log c':>12}")
    for c in (0.0, 0.1, 1.0, 10.0, 1e2, 1e4, 1e6):
        constants = limit_constants(c)
        if c > 1.0:
            soft_ratio = f"{constants.lower_soft / math.log(c):11.4f}"
            upper_ratio = f"{constants.upper / math.log(c):12.4f}"
        else:
            soft_ratio, upper_ratio = " " * 11, " " * 12
        print(
            f"{c:10g} {constants.lower_simple:13.4f} {constants.lower_soft:11.4f} "
            f"{constants.upper:8.4f} {soft_ratio} {upper_ratio}"
        )

    eps = args.epsilon
    print(f"\nresidual K = pe - log(1/eps) + loglog(1/eps) at eps = {eps:g}:")
    print(f"{'c':>6} {'K(soft exact)':>14} {'K(ook)':>9} {'K(closed soft)':>15} "
          f"{'K(duality)':>11} {'limit soft':>11} {'limit upper':>12}")
    for c in (0.0, 0.1, 1.0):
        params = ChannelParams(eps, c)
        k_soft = k_from_bound(pe_lower_ppm_soft_exact(params).value, eps).k_value
        k_ook = k_from_bound(pe_lower_ook(params).value, eps).k_value
        k_closed = k_from_bound(pe_lower_prp2(params).value, eps).k_value
        k_dual = k_from_bound(pe_upper_duality(params).value, eps).k_value
        constants = limit_constants(c)
        print(
            f"{c:6g} {k_soft:14.4f} {k_ook:9.4f} {k_closed:15.4f} "
            f"{k_dual:11.4f} {constants.lower_soft:11.4f} {constants.upper:12.4f}"
        )


if __name__ == "__main__":
    main()
