#!/usr/bin/env python3
"""Show that improving the filter can hurt everyone once the attacker
adapts.

With an endogenous attacker the Forward-equilibrium welfare is flat in
filter quality; pushing the signal ratio pi0/pi1 past Lambda kills that
equilibrium and welfare drops.  Prints the welfare path along the
quality-improvement ray and the located drop.
"""

import argparse

from filtergame import ModelParams
from filtergame.attacker import endogenous_equilibrium, negative_votc_scan


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pi0", type=float, default=0.8)
    ap.add_argument("--pi1", type=float, default=0.3)
    args = ap.parse_args()

    p = ModelParams(q=0.5, pi0=args.pi0, pi1=args.pi1, b=1.0, c1=1.0, c2=4.0, lam=2.0)
    eq = endogenous_equilibrium(p)
    print(f"start: kind={eq.kind} rho0*={eq.rho0_star:.6f} v_players={eq.v_players:.6f}")

    scan = negative_votc_scan(p)
    if not scan["found"]:
        print(f"no welfare drop located: {scan['reason']}")
        return 0
    after = scan["after_eq"]
    print(f"after improving to pi0={scan['after'][0]:.6f} pi1={scan['after'][1]:.6f}:")
    print(f"  kind={after.kind} rho0*={after.rho0_star:.6f} v_players={after.v_players:.6f}")
    print(f"  welfare drop: {scan['v_drop']:.6f} (> 0: better filter, worse outcome)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
