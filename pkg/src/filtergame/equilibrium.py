"""Equilibrium analysis for the filter-consumer game.

The consumer side is always exact: their best response to the induced
posterior is unique and closed-form, so equilibrium hinges on unilateral
filter deviations.  Holding the consumer's conditional accept/ignore
channel fixed, the filter's payoff is linear in its per-signal block
probabilities, so checking the four pure corner strategies covers every
mixed deviation.

Aligned utilities make equilibrium selection trivial (the socially
optimal pure profile is an equilibrium and selection is by max payoff).
Semi-aligned utilities decouple the filter from attention costs, which
creates the interesting pathology: a profile can Pareto-dominate every
equilibrium and still not be sustainable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .beliefs import BeliefError, FilterStrategy, equivalent_signal_quality, posterior
from .consumer import Mode, best_response, binary_entropy, kl_bernoulli
from .params import ModelParams, require_valid, thresholds
from .payoffs import Alignment, Normalization, ProfileEvaluation, delta_u, evaluate

__all__ = [
    "ParetoOrder",
    "ProfileStatus",
    "EquilibriumReport",
    "deviation_payoff",
    "is_equilibrium",
    "aligned_optimum",
    "diff_vs_fwd_condition",
    "semi_equilibrium_status",
    "mixed_gamma",
    "inefficiency_check",
    "pareto_compare",
    "overcome_thresholds",
]

# payoff ties below this cannot be resolved in floating point
_KNIFE_EDGE_TOL = 1e-12
_CORNERS = {
    "Forward": FilterStrategy.forward(),
    "Block": FilterStrategy.block(),
    "Differentiate": FilterStrategy.differentiate(),
    "Unreasonable": FilterStrategy.unreasonable(),
}


class ParetoOrder(enum.Enum):
    A_DOMINATES = "ADominates"
    B_DOMINATES = "BDominates"
    INCOMPARABLE = "Incomparable"
    EQUAL = "Equal"


@dataclass(frozen=True)
class ProfileStatus:
    is_equilibrium: bool
    knife_edge: bool
    evaluation: ProfileEvaluation
    best_deviation: str | None  # name of the most profitable deviation, if any


@dataclass(frozen=True)
class EquilibriumReport:
    alignment: Alignment
    per_profile: dict[str, ProfileStatus]
    selected: str | None
    selection_rule: str  # SociallyOptimal | ParetoDominant | None
    inefficiency: bool
    mixed_gamma: float | None
    case: str | None  # diff-vs-fwd certification case, aligned mode


def _consumer_channel(params: ModelParams, candidate: FilterStrategy) -> tuple[float, float]:
    """Consumer's conditional ignore probabilities, best-responding to the
    candidate profile.  Off the equilibrium path after Block nothing is
    forwarded; we give the consumer the passive belief q (the prior)."""
    try:
        bel = posterior(params, candidate).value
    except BeliefError:
        bel = params.q
    pol = best_response(params, bel)
    return pol.pt0, pol.pt1


def deviation_payoff(
    params: ModelParams,
    deviation: FilterStrategy,
    channel: tuple[float, float],
    alignment: Alignment,
) -> float:
    """Filter's per-content payoff from ``deviation`` while the consumer
    keeps the conditional channel (pt0, pt1) tuned to the candidate."""
    pt0, pt1 = channel
    pi0e, pi1e = equivalent_signal_quality(params, deviation)
    q = params.q
    fwd_mal = q * (1.0 - pi0e)
    fwd_clean = (1.0 - q) * (1.0 - pi1e)
    blocked_clean = -(1.0 - q) * pi1e * params.c1
    action = fwd_mal * (1.0 - pt0) * (-params.c2) + fwd_clean * (
        pt1 * (-params.c1) + (1.0 - pt1) * params.b
    )
    value = blocked_clean + action
    if alignment is Alignment.ALIGNED:
        beta = fwd_mal + fwd_clean
        if beta > 0.0:
            q_fwd = fwd_mal / beta
            sigma = q_fwd * pt0 + (1.0 - q_fwd) * pt1
            info = binary_entropy(sigma) - q_fwd * binary_entropy(pt0) - (1.0 - q_fwd) * binary_entropy(pt1)
            value -= beta * params.lam * max(info, 0.0)
    return value


def _status(
    params: ModelParams, candidate: FilterStrategy, alignment: Alignment
) -> ProfileStatus:
    channel = _consumer_channel(params, candidate)
    own = deviation_payoff(params, candidate, channel, alignment)
    best_name, best_gain = None, 0.0
    for name, dev in _CORNERS.items():
        gain = deviation_payoff(params, dev, channel, alignment) - own
        if gain > best_gain:
            best_name, best_gain = name, gain
    is_eq = best_gain <= _KNIFE_EDGE_TOL
    # a positive but sub-tolerance gain is a tie we cannot certify strictly
    knife = is_eq and best_name is not None
    ev = evaluate(params, candidate, alignment)
    return ProfileStatus(is_equilibrium=is_eq, knife_edge=knife, evaluation=ev, best_deviation=best_name)


def is_equilibrium(params: ModelParams, candidate: FilterStrategy, alignment: Alignment) -> bool:
    return _status(params, candidate, alignment).is_equilibrium


def diff_vs_fwd_condition(params: ModelParams) -> tuple[str, bool]:
    """Which regime certifies V(dif) vs V(fwd), and whether dif wins.

    Cases by where the prior and the differentiated posterior fall:
      (a) q >= q_H: forwarding is worthless, differentiating weakly wins.
      (d) q <= q_L: reduces to the raw action gain delta_u > 0.
      (c) q interior, q_dif <= q_L: delta_u > lam*KL(q||q_L).
      (b) both interior: delta_u > lam*[KL(q||q_L) - beta*KL(q_dif||q_L)].
    """
    require_valid(params)
    th = thresholds(params)
    q = params.q
    du = delta_u(params)
    if q >= th.q_H:
        return "a", True
    if q <= th.q_L:
        return "d", du > 0.0
    q_dif = posterior(params, FilterStrategy.differentiate()).value
    if q_dif <= th.q_L:
        return "c", du > params.lam * kl_bernoulli(q, th.q_L)
    beta = (1.0 - params.pi0) * q + (1.0 - params.pi1) * (1.0 - q)
    rhs = params.lam * (kl_bernoulli(q, th.q_L) - beta * kl_bernoulli(q_dif, th.q_L))
    return "b", du > rhs


def aligned_optimum(params: ModelParams) -> EquilibriumReport:
    """Socially optimal pure profile under aligned utilities."""
    require_valid(params)
    case, dif_wins = diff_vs_fwd_condition(params)
    per = {
        name: _status(params, strat, Alignment.ALIGNED)
        for name, strat in (
            ("Forward", FilterStrategy.forward()),
            ("Differentiate", FilterStrategy.differentiate()),
            ("Block", FilterStrategy.block()),
        )
    }
    v_dif = per["Differentiate"].evaluation.filter_value
    v_fwd = per["Forward"].evaluation.filter_value
    selected = "Differentiate" if v_dif >= v_fwd else "Forward"
    assert dif_wins == (v_dif > v_fwd) or abs(v_dif - v_fwd) < 1e-9, (
        f"case-{case} certification disagrees with payoffs: {v_dif} vs {v_fwd}"
    )
    return EquilibriumReport(
        alignment=Alignment.ALIGNED,
        per_profile=per,
        selected=selected,
        selection_rule="SociallyOptimal",
        inefficiency=False,
        mixed_gamma=None,
        case=case,
    )


def mixed_gamma(params: ModelParams) -> float | None:
    """Blocking rate on the malicious signal that makes the semi-aligned
    filter indifferent, when both pure equilibria coexist."""
    th = thresholds(params)
    pi0, pi1 = params.pi0, params.pi1
    if pi1 <= 0.0 or pi0 <= 0.0:
        return None
    denom = pi0 * pi1 * (1.0 - th.Lambda)
    if denom == 0.0:
        return None
    g = (pi0 - th.Lambda * pi1) / denom
    if 0.0 < g < 1.0:
        return g
    return None


def semi_equilibrium_status(params: ModelParams) -> EquilibriumReport:
    """Equilibrium map of the semi-aligned game.

    Differentiate survives iff the quality odds-ratio exceeds the cost
    threshold Lambda; Forward survives iff the raw signal ratio falls
    short of it; both inequalities can hold at once, in which case a
    mixed equilibrium sits between them.
    """
    require_valid(params)
    per = {
        name: _status(params, strat, Alignment.SEMI)
        for name, strat in (
            ("Forward", FilterStrategy.forward()),
            ("Differentiate", FilterStrategy.differentiate()),
            ("Block", FilterStrategy.block()),
        )
    }
    gamma = None
    th = thresholds(params)
    if per["Forward"].is_equilibrium and per["Differentiate"].is_equilibrium:
        gamma = mixed_gamma(params)
        if gamma is not None:
            per["Mixed"] = _status(params, FilterStrategy.mixed(gamma, 0.0), Alignment.SEMI)

    equilibria = [n for n, s in per.items() if s.is_equilibrium]
    selected, rule = None, "None"
    if equilibria:
        # pick a Pareto-dominant equilibrium if one exists
        for cand in equilibria:
            ce = per[cand].evaluation
            if all(
                pareto_compare(ce, per[o].evaluation)
                in (ParetoOrder.A_DOMINATES, ParetoOrder.EQUAL)
                for o in equilibria
                if o != cand
            ):
                selected, rule = cand, "ParetoDominant"
                break

    dif_ev = per["Differentiate"]
    ineff = (
        not dif_ev.is_equilibrium
        and th.Q_quality < th.Lambda
        and all(
            pareto_compare(dif_ev.evaluation, per[n].evaluation) is ParetoOrder.A_DOMINATES
            for n in equilibria
        )
        and bool(equilibria)
    )
    return EquilibriumReport(
        alignment=Alignment.SEMI,
        per_profile=per,
        selected=selected,
        selection_rule=rule,
        inefficiency=ineff,
        mixed_gamma=gamma,
        case=None,
    )


def inefficiency_check(params: ModelParams) -> dict:
    """Does Differentiate Pareto-dominate every semi-aligned equilibrium
    while failing to be one itself?

    True exactly when the filter sees an interior posterior, the prior
    sits above q_H (forwarding everything is hopeless), and the quality
    odds-ratio falls below Lambda so the filter cannot commit.
    """
    require_valid(params)
    th = thresholds(params)
    try:
        q_dif = posterior(params, FilterStrategy.differentiate()).value
    except BeliefError:
        return {"inefficient": False, "witness": None, "premise": False}
    premise = th.q_L < q_dif < th.q_H < params.q and th.Q_quality < th.Lambda
    if not premise:
        return {"inefficient": False, "witness": None, "premise": False}
    rep = semi_equilibrium_status(params)
    dif = rep.per_profile["Differentiate"]
    others = [s for n, s in rep.per_profile.items() if n != "Differentiate" and s.is_equilibrium]
    dominated = others and all(
        pareto_compare(dif.evaluation, o.evaluation) is ParetoOrder.A_DOMINATES for o in others
    )
    inefficient = bool(dominated) and not dif.is_equilibrium
    return {
        "inefficient": inefficient,
        "premise": True,
        "witness": (dif.evaluation, [o.evaluation for o in others]),
    }


def pareto_compare(a: ProfileEvaluation, b: ProfileEvaluation) -> ParetoOrder:
    """Componentwise order on (filter value, consumer value)."""
    if a.normalization is not b.normalization:
        raise ValueError("cannot Pareto-compare evaluations under different normalizations")
    af, ac = a.filter_value, a.consumer_value
    bf, bc = b.filter_value, b.consumer_value
    if af == bf and ac == bc:
        return ParetoOrder.EQUAL
    if af >= bf and ac >= bc:
        return ParetoOrder.A_DOMINATES
    if bf >= af and bc >= ac:
        return ParetoOrder.B_DOMINATES
    return ParetoOrder.INCOMPARABLE


def _dif_beats_fwd(params: ModelParams) -> bool:
    th = thresholds(params)
    q_dif = posterior(params, FilterStrategy.differentiate()).value
    if not q_dif < th.q_H:
        return False
    v_dif = evaluate(params, FilterStrategy.differentiate()).filter_value
    v_fwd = evaluate(params, FilterStrategy.forward()).filter_value
    return v_dif > v_fwd


def overcome_thresholds(params: ModelParams, tol: float = 1e-9) -> tuple[float, float]:
    """Smallest pi0 (pi1 fixed) and largest pi1 (pi0 fixed) at which
    differentiating becomes socially preferred with an informative
    posterior.  Both conditions are monotone along each axis, so plain
    bisection finds the boundary."""
    require_valid(params)

    def ok(pi0: float, pi1: float) -> bool:
        if not (0.0 < pi1 <= pi0 < 1.0):
            return False
        return _dif_beats_fwd(replace(params, pi0=pi0, pi1=pi1))

    hi0 = 1.0 - 1e-9
    if not ok(hi0, params.pi1):
        pi0_thr = math.nan
    else:
        lo = params.pi1 + 1e-12 if not ok(params.pi1, params.pi1) else params.pi1
        hi = hi0
        if ok(lo, params.pi1):
            pi0_thr = lo
        else:
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if ok(mid, params.pi1):
                    hi = mid
                else:
                    lo = mid
            pi0_thr = hi

    lo1 = 1e-9
    if not ok(params.pi0, lo1):
        pi1_thr = math.nan
    else:
        lo, hi = lo1, min(params.pi0, 1.0 - 1e-12)
        if ok(params.pi0, hi):
            pi1_thr = hi
        else:
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if ok(params.pi0, mid):
                    lo = mid
                else:
                    hi = mid
            pi1_thr = lo
    return pi0_thr, pi1_thr
