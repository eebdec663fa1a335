"""Ex-ante payoffs of filter strategies with a best-responding consumer.

Every strategy (pure or mixed) is evaluated through the equivalent
differentiating game with effective per-state block probabilities; the
consumer best-responds to the induced posterior over forwarded content.

Two utility alignments:

  * aligned      -- filter and consumer share the consumer's net value
                    (action payoff minus attention cost);
  * semi-aligned -- the filter internalizes only the action payoff (it is
                    paid for outcomes, not for the consumer's attention),
                    while the consumer still pays their attention cost.

Two normalizations: per unit of content, or per unit of clean content
(divide by 1-q).  Per-clean is the natural scale when comparing across
different attack rates, and is the default throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .beliefs import FilterStrategy, equivalent_signal_quality, posterior
from .consumer import ConsumerPolicy, action_value, best_response, value_hat
from .params import ModelParams

__all__ = [
    "Alignment",
    "Normalization",
    "ProfileEvaluation",
    "evaluate",
    "delta_u",
]


class Alignment(enum.Enum):
    ALIGNED = "aligned"
    SEMI = "semi"


class Normalization(enum.Enum):
    PER_CLEAN = "per-clean"
    PER_CONTENT = "per-content"


@dataclass(frozen=True)
class ProfileEvaluation:
    """Filter and consumer values for one strategy profile.

    Under aligned utilities the two values coincide.  ``belief`` and
    ``policy`` are None when nothing is forwarded (Block).
    """

    strategy: FilterStrategy
    alignment: Alignment
    normalization: Normalization
    filter_value: float
    consumer_value: float
    forward_prob: float
    belief: float | None
    policy: ConsumerPolicy | None


def _scale(value_per_content: float, params: ModelParams, normalization: Normalization) -> float:
    if normalization is Normalization.PER_CONTENT:
        return value_per_content
    return value_per_content / (1.0 - params.q)


def evaluate(
    params: ModelParams,
    strategy: FilterStrategy,
    alignment: Alignment = Alignment.ALIGNED,
    normalization: Normalization = Normalization.PER_CLEAN,
) -> ProfileEvaluation:
    """Evaluate a filter strategy against the consumer's best response."""
    pi0_eff, pi1_eff = equivalent_signal_quality(params, strategy)
    blocked_clean_loss = -(1.0 - params.q) * pi1_eff * params.c1

    if strategy.is_block:
        v = _scale(blocked_clean_loss, params, normalization)
        return ProfileEvaluation(
            strategy=strategy,
            alignment=alignment,
            normalization=normalization,
            filter_value=v,
            consumer_value=v,
            forward_prob=0.0,
            belief=None,
            policy=None,
        )

    bel = posterior(params, strategy)
    pol = best_response(params, bel.value)
    consumer_pc = blocked_clean_loss + bel.forward_prob * value_hat(params, bel.value)
    if alignment is Alignment.ALIGNED:
        filter_pc = consumer_pc
    else:
        gross = action_value(params, bel.value, pol.pt0, pol.pt1)
        filter_pc = blocked_clean_loss + bel.forward_prob * gross
    return ProfileEvaluation(
        strategy=strategy,
        alignment=alignment,
        normalization=normalization,
        filter_value=_scale(filter_pc, params, normalization),
        consumer_value=_scale(consumer_pc, params, normalization),
        forward_prob=bel.forward_prob,
        belief=bel.value,
        policy=pol,
    )


def delta_u(params: ModelParams) -> float:
    """Per-content action gain of Differentiate over Forward with an
    accepting consumer: blocked malicious harm avoided minus clean
    content lost to false positives."""
    return (
        params.pi0 * params.q * params.c2
        - params.pi1 * (1.0 - params.q) * (params.b + params.c1)
    )
