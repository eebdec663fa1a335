"""Consumer beliefs about forwarded content, for pure and mixed filter strategies.

A mixed filter strategy blocks with probability gamma0 after a malicious
signal and gamma1 after a clean signal.  The four pure strategies are the
corners: Forward=(0,0), Block=(1,1), Differentiate=(1,0), and the weakly
dominated Unreasonable=(0,1).

Any mixed strategy is payoff-equivalent to Differentiate in a game with
effective per-state block probabilities pi_x * (gamma0 - gamma1) + gamma1;
`equivalent_signal_quality` exposes that transform.
"""

from __future__ import annotations

from dataclasses import dataclass

from .params import ModelParams

__all__ = ["FilterStrategy", "Belief", "BeliefError", "posterior", "equivalent_signal_quality"]

# below this forwarding mass the posterior is 0/0 for practical purposes
_MIN_FORWARD_PROB = 1e-15


class BeliefError(ValueError):
    """Posterior requested for a strategy that forwards (almost) nothing."""


@dataclass(frozen=True)
class FilterStrategy:
    """Filter strategy as per-signal block probabilities."""

    gamma0: float  # P[block | malicious signal]
    gamma1: float  # P[block | clean signal]

    def __post_init__(self):
        if not (0.0 <= self.gamma0 <= 1.0 and 0.0 <= self.gamma1 <= 1.0):
            raise ValueError(f"block probabilities outside [0,1]: {self}")

    @classmethod
    def forward(cls) -> "FilterStrategy":
        return cls(0.0, 0.0)

    @classmethod
    def block(cls) -> "FilterStrategy":
        return cls(1.0, 1.0)

    @classmethod
    def differentiate(cls) -> "FilterStrategy":
        return cls(1.0, 0.0)

    @classmethod
    def unreasonable(cls) -> "FilterStrategy":
        return cls(0.0, 1.0)

    @classmethod
    def mixed(cls, gamma0: float, gamma1: float) -> "FilterStrategy":
        return cls(gamma0, gamma1)

    @property
    def kind(self) -> str:
        corners = {
            (0.0, 0.0): "Forward",
            (1.0, 1.0): "Block",
            (1.0, 0.0): "Differentiate",
            (0.0, 1.0): "Unreasonable",
        }
        return corners.get((self.gamma0, self.gamma1), "Mixed")

    @property
    def is_block(self) -> bool:
        return self.gamma0 == 1.0 and self.gamma1 == 1.0

    @property
    def is_unreasonable(self) -> bool:
        """Blocks clean-looking content more often than malicious-looking."""
        return self.gamma0 < self.gamma1


@dataclass(frozen=True)
class Belief:
    """Posterior P[malicious | forwarded] plus the unconditional forward mass."""

    value: float
    forward_prob: float


def equivalent_signal_quality(params: ModelParams, strategy: FilterStrategy) -> tuple[float, float]:
    """Effective per-state block probabilities of the equivalent differentiating game."""
    d = strategy.gamma0 - strategy.gamma1
    return (params.pi0 * d + strategy.gamma1, params.pi1 * d + strategy.gamma1)


def posterior(params: ModelParams, strategy: FilterStrategy) -> Belief:
    """Posterior belief that forwarded content is malicious.

    Undefined under Block (nothing is forwarded); strategies whose
    forwarding mass underflows are rejected rather than returning 0/0.
    """
    if strategy.is_block:
        raise BeliefError("posterior undefined under block-all")
    pi0_eff, pi1_eff = equivalent_signal_quality(params, strategy)
    fwd_mal = (1.0 - pi0_eff) * params.q
    fwd_clean = (1.0 - pi1_eff) * (1.0 - params.q)
    forward_prob = fwd_mal + fwd_clean
    if forward_prob < _MIN_FORWARD_PROB:
        raise BeliefError(f"forwarding mass {forward_prob:g} below {_MIN_FORWARD_PROB:g}; posterior ill-defined")
    return Belief(value=fwd_mal / forward_prob, forward_prob=forward_prob)
