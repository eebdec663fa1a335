#!/usr/bin/env python3
"""Sweep filter quality pi0 and locate the indifference point where
differentiating starts to beat forwarding.

Writes the payoff curves as CSV and prints the bracketing interval of
the crossing.  Baseline otherwise: q=0.5, b=1, c1=1, c2=4, lambda=2,
pi1=0.3.
"""

import argparse
import sys

from filtergame import FilterStrategy, ModelParams, evaluate


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pi1", type=float, default=0.3)
    ap.add_argument("--start", type=float, default=0.31)
    ap.add_argument("--stop", type=float, default=0.99)
    ap.add_argument("--steps", type=int, default=70)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    rows = ["pi0,v_fwd,v_dif"]
    crossing = None
    prev = None
    for i in range(args.steps):
        pi0 = args.start + (args.stop - args.start) * i / (args.steps - 1)
        p = ModelParams(q=0.5, pi0=pi0, pi1=args.pi1, b=1.0, c1=1.0, c2=4.0, lam=2.0)
        v_fwd = evaluate(p, FilterStrategy.forward()).filter_value
        v_dif = evaluate(p, FilterStrategy.differentiate()).filter_value
        rows.append(f"{pi0:.6f},{v_fwd:.9f},{v_dif:.9f}")
        gap = v_dif - v_fwd
        if prev is not None and prev[1] < 0.0 <= gap:
            crossing = (prev[0], pi0)
        prev = (pi0, gap)

    text = "\n".join(rows) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    if crossing:
        print(f"indifference crossing in pi0 ∈ ({crossing[0]:.6f}, {crossing[1]:.6f})",
              file=sys.stderr)
    else:
        print("no crossing in the scanned range", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
