#!/usr/bin/env python3
"""Search for parameter sets where the differentiating profile
Pareto-dominates every semi-aligned equilibrium but cannot be sustained
as one (the commitment failure regime).

Scans a coarse grid over (q, pi0, pi1) at fixed costs and prints each
witness with its quality/threshold diagnostics.
"""

import argparse

import numpy as np

from filtergame import FilterStrategy, ModelParams, posterior, thresholds
from filtergame.equilibrium import inefficiency_check


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--b", type=float, default=1.0)
    ap.add_argument("--c1", type=float, default=1.0)
    ap.add_argument("--c2", type=float, default=4.0)
    ap.add_argument("--lam", type=float, default=2.0)
    ap.add_argument("--limit", type=int, default=20, help="stop after this many witnesses")
    args = ap.parse_args()

    found = 0
    for q in np.linspace(0.68, 0.9, 12):
        for pi0 in np.linspace(0.3, 0.9, 25):
            for pi1 in np.linspace(0.05, 0.6, 23):
                if pi1 >= pi0:
                    continue
                p = ModelParams(q=float(q), pi0=float(pi0), pi1=float(pi1),
                                b=args.b, c1=args.c1, c2=args.c2, lam=args.lam)
                r = inefficiency_check(p)
                if r["inefficient"]:
                    th = thresholds(p)
                    qd = posterior(p, FilterStrategy.differentiate()).value
                    print(f"q={q:.3f} pi0={pi0:.3f} pi1={pi1:.3f} "
                          f"q_dif={qd:.4f} q_L={th.q_L:.4f} q_H={th.q_H:.4f} "
                          f"Q={th.Q_quality:.3f} Lambda={th.Lambda:.3f}")
                    found += 1
                    if found >= args.limit:
                        print(f"... stopped at {args.limit} witnesses")
                        return 0
    print(f"{found} witnesses found")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
