"""Rationally inattentive consumer facing forwarded content.

The consumer chooses a joint distribution over (state, accept/ignore)
subject to a mutual-information cost at price ``lam`` nats.  With binary
state and binary action the optimum is characterized in closed form by the
conditional ignore probabilities (pt0, pt1) = P[ignore | X=0], P[ignore | X=1]
and the unconditional accept probability P_c.

The interesting regime is an interior belief in (q_L, q_H): there the
consumer mixes and pays a strictly positive attention cost.  At or below
q_L they accept everything; above q_H they ignore everything; in both
corner regimes the information cost is exactly zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .params import ModelParams, thresholds

__all__ = [
    "Mode",
    "ConsumerPolicy",
    "best_response",
    "value_hat",
    "action_value",
    "binary_entropy",
    "kl_bernoulli",
    "linear_identities",
]


class Mode(enum.Enum):
    ACCEPT_ALL = "accept_all"
    IGNORE_ALL = "ignore_all"
    INTERIOR = "interior"


@dataclass(frozen=True)
class ConsumerPolicy:
    """Optimal attention policy at a given belief.

    ``pt0``/``pt1`` are ignore probabilities conditional on the content
    being malicious/clean; ``p_accept`` is the unconditional accept
    probability; ``info_cost`` is the attention expenditure in utils
    (lam * mutual information in nats).
    """

    belief: float
    mode: Mode
    pt0: float
    pt1: float
    p_accept: float
    info_cost: float
    expected_utility: float  # gross action payoff minus info cost


def binary_entropy(p: float) -> float:
    """Entropy of a Bernoulli(p) in nats, with 0 log 0 := 0."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log(p) - (1.0 - p) * math.log(1.0 - p)


def kl_bernoulli(p: float, r: float) -> float:
    """KL divergence between Bernoulli(p) and Bernoulli(r), in nats."""
    if not (0.0 < r < 1.0):
        raise ValueError(f"reference probability must be interior, got {r}")
    out = 0.0
    if p > 0.0:
        out += p * math.log(p / r)
    if p < 1.0:
        out += (1.0 - p) * math.log((1.0 - p) / (1.0 - r))
    return out


def _gross_action_payoff(params: ModelParams, belief: float, pt0: float, pt1: float) -> float:
    """Expected action payoff (before information cost) at a belief."""
    mal = belief * ((1.0 - pt0) * (-params.c2) + pt0 * 0.0)
    clean = (1.0 - belief) * ((1.0 - pt1) * params.b + pt1 * (-params.c1))
    return mal + clean


def best_response(params: ModelParams, belief: float) -> ConsumerPolicy:
    """Optimal attention policy at posterior ``belief`` = P[malicious]."""
    if not (0.0 <= belief <= 1.0):
        raise ValueError(f"belief outside [0,1]: {belief}")
    lam = params.lam
    eb = math.exp(params.b / lam)
    e1 = math.exp(-params.c1 / lam)
    e2 = math.exp(-params.c2 / lam)

    # unconditional accept probability before clamping
    p_tilde = (eb * (belief - 1.0) + e1 * (1.0 - belief * e2)) / ((e2 - 1.0) * (eb - e1))
    if p_tilde >= 1.0:
        p_accept, mode = 1.0, Mode.ACCEPT_ALL
        pt0, pt1 = 0.0, 0.0
    elif p_tilde <= 0.0:
        p_accept, mode = 0.0, Mode.IGNORE_ALL
        pt0, pt1 = 1.0, 1.0
    else:
        p_accept, mode = p_tilde, Mode.INTERIOR
        pi = 1.0 - p_accept
        pt0 = pi / (pi + p_accept * e2)
        pt1 = pi * e1 / (pi * e1 + p_accept * eb)

    if mode is Mode.INTERIOR:
        info_cost = lam * (
            binary_entropy(p_accept)
            - belief * binary_entropy(pt0)
            - (1.0 - belief) * binary_entropy(pt1)
        )
        # numerical floor: mutual information is nonnegative
        info_cost = max(info_cost, 0.0)
    else:
        info_cost = 0.0

    gross = _gross_action_payoff(params, belief, pt0, pt1)
    return ConsumerPolicy(
        belief=belief,
        mode=mode,
        pt0=pt0,
        pt1=pt1,
        p_accept=p_accept,
        info_cost=info_cost,
        expected_utility=gross - info_cost,
    )


def action_value(params: ModelParams, belief: float, pt0: float, pt1: float) -> float:
    """Gross action payoff at a belief for arbitrary ignore probabilities."""
    return _gross_action_payoff(params, belief, pt0, pt1)


def value_hat(params: ModelParams, belief: float) -> float:
    """Consumer value (net of attention cost) as a function of belief.

    Piecewise: linear accept-all value below q_L, constant ignore-all
    value above q_H, and on the interior two equivalent KL forms whose
    agreement is asserted as a consistency check.
    """
    th = thresholds(params)
    u1 = (1.0 - belief) * params.b - belief * params.c2   # accept everything
    u0 = -(1.0 - belief) * params.c1                       # ignore everything
    if belief <= th.q_L:
        return u1
    if belief >= th.q_H:
        return u0
    lo = u1 + params.lam * kl_bernoulli(belief, th.q_L)
    hi = u0 + params.lam * kl_bernoulli(belief, th.q_H)
    assert abs(lo - hi) < 1e-9, f"value-function forms disagree: {lo} vs {hi}"
    return 0.5 * (lo + hi)


def linear_identities(params: ModelParams, belief: float) -> dict[str, tuple[float, float]]:
    """Linear-in-belief expressions for the interior policy's joint masses.

    Returns pairs (direct, linear) per identity, where "direct" uses the
    closed-form policy and "linear" the affine-in-belief expression:

      accept & malicious:  (1-pt0) q      = a_H (q_H - q)
      ignore & clean:      pt1 (1-q)      = a_L (q - q_L)
      accept & clean:      (1-pt1) (1-q)  = a_B (q_H - q)

    with a_H = e^{-c2/lam}/(1-e^{-c2/lam}), a_L = e^{-c1/lam}/(e^{b/lam}-e^{-c1/lam}),
    a_B = e^{b/lam}/(e^{b/lam}-e^{-c1/lam}).  Valid on the interior regime.
    """
    th = thresholds(params)
    pol = best_response(params, belief)
    lam = params.lam
    eb = math.exp(params.b / lam)
    e1 = math.exp(-params.c1 / lam)
    e2 = math.exp(-params.c2 / lam)
    a_H = e2 / (1.0 - e2)
    a_L = e1 / (eb - e1)
    a_B = eb / (eb - e1)
    return {
        "accept_malicious": ((1.0 - pol.pt0) * belief, a_H * (th.q_H - belief)),
        "ignore_clean": (pol.pt1 * (1.0 - belief), a_L * (belief - th.q_L)),
        "accept_clean": ((1.0 - pol.pt1) * (1.0 - belief), a_B * (th.q_H - belief)),
    }
