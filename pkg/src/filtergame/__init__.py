"""Strategic content filtering with a rationally inattentive consumer.

A filter sees a noisy binary signal about each content item and decides
what to forward; the consumer screens forwarded items under a
mutual-information attention cost; optionally a strategic attacker
chooses the malicious-content rate.  The package provides closed-form
thresholds, best responses, payoffs and equilibria, their marginal
values in filter quality, and brute-force numeric validators.
"""

from .beliefs import Belief, BeliefError, FilterStrategy, posterior
from .consumer import ConsumerPolicy, Mode, best_response, value_hat
from .equilibrium import EquilibriumReport, aligned_optimum, semi_equilibrium_status
from .params import ModelParams, ParameterError, Thresholds, load_config, thresholds
from .payoffs import Alignment, Normalization, ProfileEvaluation, evaluate
from .vot import MvotReport, Regime, finite_difference, mvot_aligned, mvot_semialigned

__version__ = "0.1.0"

__all__ = [
    "Alignment",
    "Belief",
    "BeliefError",
    "ConsumerPolicy",
    "EquilibriumReport",
    "FilterStrategy",
    "Mode",
    "ModelParams",
    "MvotReport",
    "Normalization",
    "ParameterError",
    "ProfileEvaluation",
    "Regime",
    "Thresholds",
    "aligned_optimum",
    "best_response",
    "evaluate",
    "finite_difference",
    "load_config",
    "mvot_aligned",
    "mvot_semialigned",
    "posterior",
    "semi_equilibrium_status",
    "thresholds",
    "value_hat",
]
