"""Brute-force validators for the closed forms.

Nothing here trusts the analytic modules: the consumer optimum is found
by grid search plus local refinement, payoffs by seeded Monte-Carlo
simulation, and the attacker's rate by golden-section search.  The test
suite pits these against the closed forms.

Also hosts the generic-information-cost demonstration: the qualitative
conclusions (welfare rises in pi0, falls in pi1 whenever screening is
active) survive replacing the Shannon mutual-information cost by any
cost that is strictly convex in the signal structure, strictly concave
in the belief, differentiable, and zero only for uninformative signals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy import optimize

from .beliefs import FilterStrategy, equivalent_signal_quality, posterior
from .consumer import ConsumerPolicy, Mode, best_response, binary_entropy
from .params import ModelParams, require_valid, thresholds

__all__ = [
    "OracleConfig",
    "shannon_cost",
    "numeric_consumer_br",
    "monte_carlo_payoff",
    "numeric_attacker_br",
    "generic_cost_vot_demo",
    "CostModelError",
]

# cost(pt0, pt1, belief) -> utils
CostFn = Callable[[float, float, float], float]


class CostModelError(ValueError):
    """Probed information cost violates one of the structural assumptions."""


@dataclass(frozen=True)
class OracleConfig:
    grid_resolution: int = 400
    refine_iters: int = 60
    mc_samples: int = 1_000_000
    mc_batches: int = 100
    seed: int = 20260826
    cost_model: CostFn | None = None  # None -> Shannon at params.lam

    def __post_init__(self):
        if self.grid_resolution < 10:
            raise ValueError("grid_resolution must be >= 10")
        if self.mc_samples < 1_000:
            raise ValueError("mc_samples must be >= 1000")


def _entropy_arr(x):
    """Binary entropy in nats, elementwise, safe at the endpoints."""
    x = np.asarray(x, dtype=float)
    inner = np.clip(x, 1e-300, 1.0)
    outer = np.clip(1.0 - x, 1e-300, 1.0)
    return -(x * np.log(inner) + (1.0 - x) * np.log(outer))


def shannon_cost(lam: float) -> CostFn:
    """Mutual-information cost at price lam nats, as a black-box cost.

    Accepts scalars or numpy arrays in the signal arguments.
    """

    def cost(pt0, pt1, belief):
        sigma = belief * pt0 + (1.0 - belief) * pt1
        mi = _entropy_arr(sigma) - belief * _entropy_arr(pt0) - (1.0 - belief) * _entropy_arr(pt1)
        out = lam * np.maximum(mi, 0.0)
        return float(out) if np.ndim(out) == 0 else out

    return cost


def _objective(params: ModelParams, belief: float, cost: CostFn):
    """Consumer objective: action payoff minus attention cost, to maximize."""

    def f(pt0: float, pt1: float) -> float:
        action = belief * (1.0 - pt0) * (-params.c2) + (1.0 - belief) * (
            pt1 * (-params.c1) + (1.0 - pt1) * params.b
        )
        return action - cost(pt0, pt1, belief)

    return f


def numeric_consumer_br(
    params: ModelParams, belief: float, config: OracleConfig = OracleConfig()
) -> ConsumerPolicy:
    """Grid-plus-refinement maximization of the consumer objective.

    Independent of the closed form: a dense grid over ignore
    probabilities (pt0, pt1) in [0,1]^2 locates the basin, then a
    bounded quasi-Newton polish finds the optimum.
    """
    if not (0.0 < belief < 1.0):
        raise ValueError(f"belief must be interior, got {belief}")
    cost = config.cost_model or shannon_cost(params.lam)
    f = _objective(params, belief, cost)

    n = config.grid_resolution
    axis = np.linspace(0.0, 1.0, n)
    g0, g1 = np.meshgrid(axis, axis, indexing="ij")
    try:  # vectorized cost models evaluate the whole grid in one call
        vals = np.asarray(f(g0, g1), dtype=float)
        if vals.shape != g0.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.vectorize(f)(g0, g1)
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    x0 = np.array([g0[i, j], g1[i, j]])

    res = optimize.minimize(
        lambda x: -f(x[0], x[1]),
        x0,
        method="L-BFGS-B",
        bounds=[(0.0, 1.0), (0.0, 1.0)],
        options={"maxiter": config.refine_iters * 10, "ftol": 1e-15, "gtol": 1e-12},
    )
    pt0, pt1 = (res.x if -res.fun >= vals[i, j] else x0)
    obj = f(pt0, pt1)
    c = cost(pt0, pt1, belief)
    sigma = belief * pt0 + (1.0 - belief) * pt1
    if pt0 < 1e-9 and pt1 < 1e-9:
        mode = Mode.ACCEPT_ALL
    elif pt0 > 1.0 - 1e-9 and pt1 > 1.0 - 1e-9:
        mode = Mode.IGNORE_ALL
    else:
        mode = Mode.INTERIOR
    return ConsumerPolicy(
        belief=belief,
        mode=mode,
        pt0=float(pt0),
        pt1=float(pt1),
        p_accept=float(1.0 - sigma),
        info_cost=float(c),
        expected_utility=float(obj),
    )


def monte_carlo_payoff(
    params: ModelParams,
    filter_strategy: FilterStrategy,
    consumer_policy: ConsumerPolicy | None = None,
    config: OracleConfig = OracleConfig(),
) -> dict:
    """Simulated per-clean-content payoffs with batch-mean standard errors.

    One RNG stream per fixed-size batch, spawned from the master seed, so
    results are bit-reproducible and batches could run in any order.
    ``consumer_policy=None`` uses the closed-form best response to the
    induced posterior (or ignore-all when nothing is forwarded).
    """
    require_valid(params)
    if consumer_policy is None:
        if filter_strategy.is_block:
            consumer_policy = best_response(params, 1.0)
        else:
            consumer_policy = best_response(params, posterior(params, filter_strategy).value)
    pt0, pt1 = consumer_policy.pt0, consumer_policy.pt1
    pi0e, pi1e = equivalent_signal_quality(params, filter_strategy)
    info_per_forwarded = consumer_policy.info_cost

    batch = config.mc_samples // config.mc_batches
    streams = np.random.SeedSequence(config.seed).spawn(config.mc_batches)
    player_means = np.empty(config.mc_batches)
    attacker_means = np.empty(config.mc_batches)
    for k, ss in enumerate(streams):
        rng = np.random.default_rng(ss)
        u = rng.random((4, batch))
        malicious = u[0] < params.q
        blocked = np.where(malicious, u[1] < pi0e, u[1] < pi1e)
        ignored = np.where(malicious, u[2] < pt0, u[2] < pt1)
        accepted = ~blocked & ~ignored
        clean = ~malicious
        util = (
            np.where(accepted & clean, params.b, 0.0)
            + np.where(accepted & malicious, -params.c2, 0.0)
            + np.where(~accepted & clean, -params.c1, 0.0)
        )
        util -= np.where(~blocked, info_per_forwarded, 0.0)
        n_clean = max(int(clean.sum()), 1)
        player_means[k] = util.sum() / n_clean
        attacker_means[k] = (accepted & malicious).sum() / n_clean
    out = {}
    for name, m in (("players", player_means), ("attacker", attacker_means)):
        out[name] = {
            "mean": float(m.mean()),
            "std_error": float(m.std(ddof=1) / math.sqrt(config.mc_batches)),
        }
    return out


def numeric_attacker_br(
    params: ModelParams, filter_strategy: FilterStrategy, config: OracleConfig = OracleConfig()
) -> float:
    """Golden-section search for the attacker's rate over log rho0."""
    from .attacker import attacker_payoff_curve

    lo, hi = math.log(1e-4), math.log(1e4)
    invphi = (math.sqrt(5.0) - 1.0) / 2.0

    def f(t: float) -> float:
        return attacker_payoff_curve(params, filter_strategy, math.exp(t))

    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(max(config.refine_iters, 60)):
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    return math.exp(0.5 * (lo + hi))


def _probe_cost_assumptions(cost: CostFn, rng: np.random.Generator, n: int = 10) -> None:
    """Spot-check convexity in the signal structure, concavity in the
    belief, and non-degeneracy; raise CostModelError on failure."""
    if cost(0.9, 0.1, 0.5) <= 1e-12:
        raise CostModelError("cost model violates assumption 4 (informative signals must cost)")
    informative = False
    for _ in range(n):
        q = float(rng.uniform(0.1, 0.9))
        # segment in (pt0, pt1) with varying informativeness
        a = rng.uniform(0.05, 0.95, size=2)
        b = rng.uniform(0.05, 0.95, size=2)
        if abs((a[0] - a[1]) - (b[0] - b[1])) < 0.05:
            b = np.array([b[0], min(max(b[1] + 0.3, 0.0), 1.0)])
        mid = 0.5 * (a + b)
        chord = 0.5 * (cost(a[0], a[1], q) + cost(b[0], b[1], q))
        at_mid = cost(mid[0], mid[1], q)
        if at_mid > chord + 1e-12:
            raise CostModelError("cost model violates assumption 1 (convexity in the signal structure)")
        if at_mid >= chord - 1e-12 and abs((a[0] - a[1]) - (b[0] - b[1])) > 1e-6:
            raise CostModelError("cost model violates assumption 1 (strictness)")
        # concavity in belief at a fixed informative signal structure
        q2 = float(rng.uniform(0.1, 0.9))
        cm = cost(0.8, 0.2, 0.5 * (q + q2))
        cc = 0.5 * (cost(0.8, 0.2, q) + cost(0.8, 0.2, q2))
        if cm < cc - 1e-12:
            raise CostModelError("cost model violates assumption 2 (concavity in the belief)")
        if cost(0.8, 0.2, q) > 1e-12:
            informative = True
        if cost(0.4, 0.4, q) > 1e-9:
            raise CostModelError("cost model violates assumption 4 (uninformative signals must be free)")
    if not informative:
        raise CostModelError("cost model violates assumption 4 (informative signals must cost)")


def generic_cost_vot_demo(
    params: ModelParams,
    cost: CostFn,
    step: float = 1e-3,
    config: OracleConfig = OracleConfig(grid_resolution=160),
    seed: int = 7,
) -> tuple[float, float]:
    """Finite-difference welfare derivatives in (pi0, pi1) under a
    black-box information cost, at the differentiating profile.

    Returns the derivative pair; in the screening-active regime the
    signs should be (+, -) regardless of the cost's functional form.
    """
    require_valid(params)
    _probe_cost_assumptions(cost, np.random.default_rng(seed))
    cfg = replace(config, cost_model=cost)

    def welfare(p: ModelParams) -> float:
        bel = posterior(p, FilterStrategy.differentiate())
        pol = numeric_consumer_br(p, bel.value, cfg)
        per_content = -(1.0 - p.q) * p.pi1 * p.c1 + bel.forward_prob * pol.expected_utility
        return per_content / (1.0 - p.q)

    d = []
    for fieldname in ("pi0", "pi1"):
        x = getattr(params, fieldname)
        p_hi = replace(params, **{fieldname: x + step})
        p_lo = replace(params, **{fieldname: x - step})
        d.append((welfare(p_hi) - welfare(p_lo)) / (2.0 * step))
    return d[0], d[1]
