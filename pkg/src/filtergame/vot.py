"""Marginal value of filter quality: derivatives of payoff in (pi0, pi1).

Quality improves as pi0 rises (more malicious content caught) and pi1
falls (fewer clean false positives), so a useful improvement should show
d_pi0 > 0 and d_pi1 < 0.  Closed forms depend on the regime:

  Zero         -- differentiating is useless (posterior still above q_H,
                  or forwarding pays more): derivatives vanish.
  Constant     -- posterior after differentiation is at or below q_L; the
                  consumer accepts everything forwarded and derivatives
                  are the raw action stakes.
  NonConstant  -- interior posterior; derivatives carry the attention
                  savings via log-ratio terms.

Aligned derivatives are stated per clean content; the semi-aligned
filter's closed forms are per content.  ``finite_difference`` accepts
either normalization so both can be validated numerically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .beliefs import FilterStrategy, posterior
from .params import ModelParams, require_valid, thresholds
from .payoffs import Alignment, Normalization, evaluate

__all__ = ["Regime", "Method", "MvotReport", "mvot_aligned", "mvot_semialigned", "finite_difference"]

# payoff ties below this are treated as a weak tie -> Zero regime
_TIE_TOL = 1e-12


class Regime(enum.Enum):
    ZERO = "Zero"
    CONSTANT = "Constant"
    NON_CONSTANT = "NonConstant"
    SEMI_FILTER_CONSTANT = "SemiFilterConstant"
    SEMI_CONSUMER_NONLINEAR = "SemiConsumerNonLinear"
    NUMERIC_ONLY = "NumericOnly"


class Method(enum.Enum):
    ANALYTIC = "Analytic"
    FINITE_DIFFERENCE = "FiniteDifference"


@dataclass(frozen=True)
class MvotReport:
    d_pi0: float
    d_pi1: float
    regime: Regime
    method: Method
    normalization: Normalization

    def __post_init__(self):
        if self.regime is Regime.ZERO:
            assert self.d_pi0 == 0.0 and self.d_pi1 == 0.0
        if self.regime is Regime.NON_CONSTANT:
            assert self.d_pi0 > 0.0 and self.d_pi1 < 0.0


def _classify_aligned(params: ModelParams) -> Regime:
    th = thresholds(params)
    q_dif = posterior(params, FilterStrategy.differentiate()).value
    v_dif = evaluate(params, FilterStrategy.differentiate()).filter_value
    v_fwd = evaluate(params, FilterStrategy.forward()).filter_value
    if q_dif > th.q_H or v_dif < v_fwd or abs(v_dif - v_fwd) < _TIE_TOL:
        return Regime.ZERO
    if q_dif < th.q_L:
        return Regime.CONSTANT
    return Regime.NON_CONSTANT


def mvot_aligned(params: ModelParams, normalization: Normalization = Normalization.PER_CLEAN) -> MvotReport:
    """Analytic derivative of the optimal aligned payoff in (pi0, pi1).

    Per clean content by default; the per-content value just rescales
    by 1-q since q is held fixed while differentiating.
    """
    require_valid(params)
    regime = _classify_aligned(params)
    q, lam = params.q, params.lam
    if regime is Regime.ZERO:
        d0, d1 = 0.0, 0.0
    elif regime is Regime.CONSTANT:
        d0 = (q / (1.0 - q)) * params.c2
        d1 = -(params.c1 + params.b)
    else:
        th = thresholds(params)
        q_dif = posterior(params, FilterStrategy.differentiate()).value
        d0 = (q / (1.0 - q)) * lam * math.log(th.q_H / q_dif)
        d1 = lam * math.log((1.0 - th.q_H) / (1.0 - q_dif))
    if normalization is Normalization.PER_CONTENT:
        d0 *= 1.0 - q
        d1 *= 1.0 - q
    return MvotReport(d0, d1, regime, Method.ANALYTIC, normalization)


def mvot_semialigned(
    params: ModelParams, profile: FilterStrategy
) -> tuple[MvotReport, MvotReport]:
    """Derivatives of (filter, consumer) payoffs in (pi0, pi1), semi-aligned.

    Only Forward and Differentiate profiles have closed forms.  Under
    Forward the strategy ignores the signal, so every derivative is zero.
    Under an interior Differentiate profile the filter's derivatives are
    constants (per content) and the consumer's follow the aligned
    non-constant form (per clean content).
    """
    require_valid(params)
    if profile.kind not in ("Forward", "Differentiate"):
        raise ValueError(f"closed forms exist only for Forward/Differentiate, got {profile.kind}")
    if profile.kind == "Forward":
        zero_f = MvotReport(0.0, 0.0, Regime.ZERO, Method.ANALYTIC, Normalization.PER_CONTENT)
        zero_c = MvotReport(0.0, 0.0, Regime.ZERO, Method.ANALYTIC, Normalization.PER_CLEAN)
        return zero_f, zero_c

    th = thresholds(params)
    q, lam = params.q, params.lam
    eb = math.exp(params.b / lam)
    e1 = math.exp(-params.c1 / lam)
    e2 = math.exp(-params.c2 / lam)
    # stakes bracket; positive because accepting is optimal at belief q_L
    bracket = (1.0 - th.q_L) * (params.b + params.c1) - th.q_L * params.c2
    f0 = q * e1 / (eb - e1) * bracket
    f1 = -(1.0 - q) / (1.0 - e2) * bracket
    filt = MvotReport(f0, f1, Regime.SEMI_FILTER_CONSTANT, Method.ANALYTIC, Normalization.PER_CONTENT)

    q_dif = posterior(params, FilterStrategy.differentiate()).value
    c0 = (q / (1.0 - q)) * lam * math.log(th.q_H / q_dif)
    c1d = lam * math.log((1.0 - th.q_H) / (1.0 - q_dif))
    cons = MvotReport(c0, c1d, Regime.SEMI_CONSUMER_NONLINEAR, Method.ANALYTIC, Normalization.PER_CLEAN)
    return filt, cons


class RegimeBoundaryError(ValueError):
    """Finite-difference step would straddle a payoff-regime boundary."""


def finite_difference(
    params: ModelParams,
    profile: FilterStrategy | None,
    alignment: Alignment = Alignment.ALIGNED,
    normalization: Normalization = Normalization.PER_CLEAN,
    step: float = 1e-5,
    player: str = "filter",
) -> MvotReport:
    """Central finite differences of a profile's payoff in pi0 and pi1.

    ``profile=None`` differences the optimal aligned value
    max(V(dif), V(fwd)) instead of a fixed profile; that is the object
    the analytic aligned report describes, including its Zero regime.
    Serves as the numeric check on the analytic reports; refuses to
    difference across a regime boundary (where the payoff is kinked)
    and when the step leaves (0,1).
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    require_valid(params)

    def value(p: ModelParams) -> float:
        if profile is None:
            return max(
                evaluate(p, FilterStrategy.differentiate(), alignment, normalization).filter_value,
                evaluate(p, FilterStrategy.forward(), alignment, normalization).filter_value,
            )
        ev = evaluate(p, profile, alignment, normalization)
        return ev.filter_value if player == "filter" else ev.consumer_value

    def regime_of(p: ModelParams) -> Regime | None:
        if profile is None or (profile.kind == "Differentiate" and not profile.is_block):
            try:
                return _classify_aligned(p)
            except Exception:
                return None
        return None

    diffs = []
    base_regime = regime_of(params)
    for field in ("pi0", "pi1"):
        x = getattr(params, field)
        lo, hi = x - step, x + step
        if not (0.0 < lo and hi < 1.0):
            raise RegimeBoundaryError(f"step {step} pushes {field} out of (0,1)")
        p_lo = replace(params, **{field: lo})
        p_hi = replace(params, **{field: hi})
        if p_lo.pi0 < p_lo.pi1 or p_hi.pi0 < p_hi.pi1:
            raise RegimeBoundaryError(f"step {step} violates pi0 >= pi1 around {field}")
        if base_regime is not None:
            r_lo, r_hi = regime_of(p_lo), regime_of(p_hi)
            if r_lo is not base_regime or r_hi is not base_regime:
                raise RegimeBoundaryError(
                    f"step {step} in {field} crosses regime boundary "
                    f"({base_regime.value} vs {r_lo.value if r_lo else '?'}/{r_hi.value if r_hi else '?'})"
                )
        diffs.append((value(p_hi) - value(p_lo)) / (2.0 * step))
    return MvotReport(diffs[0], diffs[1], Regime.NUMERIC_ONLY, Method.FINITE_DIFFERENCE, normalization)
