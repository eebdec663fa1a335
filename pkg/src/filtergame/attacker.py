"""Endogenous attacker: a third player choosing the malicious-content rate.

The attacker produces malicious content at rate rho0 per clean content,
maximizing the expected count of malicious items the consumer accepts.
Pushing rho0 up raises the volume but also the forwarded posterior; once
that posterior passes q_L the consumer starts screening, and past q_H
accepts nothing.  The optimum therefore pins the induced belief exactly
at q_L, where the consumer accepts everything for free — so in any
equilibrium with an optimizing attacker the consumer's information cost
is identically zero, and all screening value comes from the filter.

A perverse consequence: under the Forward equilibrium the welfare per
clean content is b - c2*q_L/(1-q_L), independent of filter quality.
Improving the filter enough to kill the Forward equilibrium (signal
ratio past Lambda) strictly lowers equilibrium welfare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .beliefs import FilterStrategy, equivalent_signal_quality, posterior
from .consumer import best_response
from .params import ModelParams, require_valid, thresholds

__all__ = [
    "AttackerEquilibrium",
    "attacker_best_rho",
    "attacker_payoff_curve",
    "endogenous_equilibrium",
    "negative_votc_scan",
]

_KNIFE_EDGE_TOL = 1e-12


@dataclass(frozen=True)
class AttackerEquilibrium:
    rho0_star: float
    filter_profile: FilterStrategy
    q_induced: float          # forwarded-content posterior; q_L in equilibrium
    v_players: float          # filter/consumer utility per clean content
    v_attacker: float         # expected accepted malicious count per clean content
    consumer_info_cost: float  # must be exactly 0 in equilibrium
    kind: str                 # Forward | Differentiate | Block
    knife_edge: bool
    sustained: bool           # candidate survived the deviation check
    fwd_posterior_above_qH: bool | None  # sufficiency condition for the Differentiate candidate
    diagnostic: str | None


def attacker_best_rho(params: ModelParams, filter_strategy: FilterStrategy) -> float:
    """Rate that drives the forwarded posterior to exactly q_L.

    The attacker's payoff rises with volume until the consumer starts
    screening; the unique optimum holds the posterior at the screening
    threshold.  The prior q on ``params`` is ignored (the attacker sets it).
    """
    require_valid(params)
    if filter_strategy.is_block:
        raise ValueError("attacker best response undefined against block-all (payoff identically 0)")
    th = thresholds(params)
    pi0e, pi1e = equivalent_signal_quality(params, filter_strategy)
    return th.q_L * (1.0 - pi1e) / ((1.0 - th.q_L) * (1.0 - pi0e))


def attacker_payoff_curve(params: ModelParams, filter_strategy: FilterStrategy, rho0: float) -> float:
    """Expected accepted malicious count per clean content at rate rho0."""
    if filter_strategy.is_block:
        raise ValueError("attacker payoff identically 0 against block-all")
    if rho0 <= 0.0:
        raise ValueError(f"rho0 must be positive, got {rho0}")
    p = params.with_rho0(rho0)
    pi0e, _ = equivalent_signal_quality(p, filter_strategy)
    bel = posterior(p, filter_strategy)
    pol = best_response(p, bel.value)
    return rho0 * (1.0 - pi0e) * (1.0 - pol.pt0)


def _accept_all_value(params: ModelParams, th_qL: float, profile: FilterStrategy) -> float:
    """Per-clean player value when the belief is pinned at q_L and the
    consumer accepts everything forwarded."""
    q = params.q
    pi0e, pi1e = equivalent_signal_quality(params, profile)
    beta = q * (1.0 - pi0e) + (1.0 - q) * (1.0 - pi1e)
    per_content = -(1.0 - q) * pi1e * params.c1 + beta * (
        th_qL * (-params.c2) + (1.0 - th_qL) * params.b
    )
    return per_content / (1.0 - q)


def endogenous_equilibrium(params: ModelParams) -> AttackerEquilibrium:
    """Equilibrium of the three-player game; prior q on input is ignored.

    The filter forwards everything iff its raw signal ratio pi0/pi1 is
    below Lambda (then Forward beats any screening, and it pays the
    players more than the Differentiate alternative).  Otherwise the
    Differentiate candidate is checked for sustainability against a
    deviation to Forward.
    """
    require_valid(params)
    th = thresholds(params)
    ratio = params.pi0 / params.pi1
    knife = abs(ratio - th.Lambda) < _KNIFE_EDGE_TOL

    if ratio < th.Lambda or knife:
        profile = FilterStrategy.forward()
        rho = attacker_best_rho(params, profile)
        p_eq = params.with_rho0(rho)
        v = _accept_all_value(p_eq, th.q_L, profile)
        return AttackerEquilibrium(
            rho0_star=rho,
            filter_profile=profile,
            q_induced=posterior(p_eq, profile).value,
            v_players=v,
            v_attacker=rho,
            consumer_info_cost=0.0,
            kind="Forward",
            knife_edge=knife,
            sustained=True,
            fwd_posterior_above_qH=None,
            diagnostic=None,
        )

    profile = FilterStrategy.differentiate()
    rho = attacker_best_rho(params, profile)
    p_eq = params.with_rho0(rho)
    v = _accept_all_value(p_eq, th.q_L, profile)
    # deviation to Forward with the consumer still accepting everything
    q_star = p_eq.q
    v_deviate = (q_star * (-params.c2) + (1.0 - q_star) * params.b) / (1.0 - q_star)
    sustained = v >= v_deviate - _KNIFE_EDGE_TOL
    above_qH = q_star > th.q_H
    if sustained:
        return AttackerEquilibrium(
            rho0_star=rho,
            filter_profile=profile,
            q_induced=posterior(p_eq, profile).value,
            v_players=v,
            v_attacker=rho * (1.0 - params.pi0),
            consumer_info_cost=0.0,
            kind="Differentiate",
            knife_edge=False,
            sustained=True,
            fwd_posterior_above_qH=above_qH,
            diagnostic=None,
        )
    return AttackerEquilibrium(
        rho0_star=math.inf,
        filter_profile=FilterStrategy.block(),
        q_induced=math.nan,
        v_players=-params.c1,
        v_attacker=0.0,
        consumer_info_cost=0.0,
        kind="Block",
        knife_edge=False,
        sustained=False,
        fwd_posterior_above_qH=above_qH,
        diagnostic="neither Forward nor Differentiate candidate is an equilibrium",
    )


def negative_votc_scan(
    params: ModelParams, ratio_step: float = 0.75, tol: float = 1e-9
) -> dict:
    """Improve the filter until the Forward equilibrium dies, and report
    the welfare drop.

    Moves along the ray (pi0 -> 1, pi1 -> 0) with geometric steps — both
    the signal ratio and Lambda-crossing are monotone along it — then
    bisects the crossing and compares equilibrium welfare on both sides.
    """
    require_valid(params)
    th = thresholds(params)
    if params.pi0 / params.pi1 >= th.Lambda:
        return {"found": False, "reason": "starting point already past the Lambda crossing",
                "before": (params.pi0, params.pi1), "after": None, "v_drop": None}

    def at(t: float) -> ModelParams:
        # t=0 is the start; t -> inf approaches (1, 0)
        shrink = ratio_step**t
        return replace(params, pi0=1.0 - (1.0 - params.pi0) * shrink, pi1=params.pi1 * shrink)

    def crossed(t: float) -> bool:
        p = at(t)
        return p.pi0 / p.pi1 > th.Lambda

    t_hi = 1.0
    while not crossed(t_hi):
        t_hi *= 2.0
        if t_hi > 1e6:
            return {"found": False, "reason": "Lambda crossing not reached along the ray",
                    "before": (params.pi0, params.pi1), "after": None, "v_drop": None}
    t_lo = 0.0
    while t_hi - t_lo > tol:
        mid = 0.5 * (t_lo + t_hi)
        if crossed(mid):
            t_hi = mid
        else:
            t_lo = mid

    before_eq = endogenous_equilibrium(params)
    p_after = at(t_hi + 1e-6)  # just past the crossing
    after_eq = endogenous_equilibrium(p_after)
    v_drop = before_eq.v_players - after_eq.v_players
    return {
        "found": v_drop > 0.0,
        "reason": None,
        "before": (params.pi0, params.pi1),
        "after": (p_after.pi0, p_after.pi1),
        "before_eq": before_eq,
        "after_eq": after_eq,
        "v_drop": v_drop,
    }
