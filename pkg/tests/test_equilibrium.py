from dataclasses import replace

import numpy as np
import pytest

from filtergame.beliefs import FilterStrategy, posterior
from filtergame.equilibrium import (
    ParetoOrder,
    _consumer_channel,
    aligned_optimum,
    deviation_payoff,
    diff_vs_fwd_condition,
    inefficiency_check,
    mixed_gamma,
    overcome_thresholds,
    pareto_compare,
    semi_equilibrium_status,
)
from filtergame.params import ModelParams, thresholds
from filtergame.payoffs import Alignment, Normalization, evaluate

from conftest import random_params

WITNESS = ModelParams(q=0.75, pi0=0.5, pi1=0.2, b=1.0, c1=1.0, c2=4.0, lam=2.0)


def test_aligned_baseline_selects_differentiate(baseline):
    rep = aligned_optimum(baseline)
    assert rep.selected == "Differentiate"
    assert rep.case == "b"
    assert rep.per_profile["Differentiate"].is_equilibrium
    assert not rep.inefficiency


def test_uninformative_filter_prefers_forward(baseline):
    p = replace(baseline, pi0=0.3, pi1=0.3)
    rep = aligned_optimum(p)
    assert rep.selected == "Forward"


def test_condition_cases(baseline):
    assert diff_vs_fwd_condition(baseline) == ("b", True)
    # q above q_H: forwarding is hopeless either way
    case, ok = diff_vs_fwd_condition(replace(baseline, q=0.8))
    assert case == "a" and ok
    # q below q_L: raw action comparison
    case, ok = diff_vs_fwd_condition(replace(baseline, q=0.05))
    assert case == "d"
    assert ok == (0.05 * baseline.pi0 * baseline.c2
                  > 0.95 * baseline.pi1 * (baseline.b + baseline.c1))
    # strong filter drives q_dif under q_L: case (c)
    case, _ = diff_vs_fwd_condition(replace(baseline, pi0=0.995, pi1=0.05))
    assert case == "c"


def test_condition_matches_payoffs(rng):
    for _ in range(40):
        p = random_params(rng)
        case, dif_wins = diff_vs_fwd_condition(p)
        v_dif = evaluate(p, FilterStrategy.differentiate()).filter_value
        v_fwd = evaluate(p, FilterStrategy.forward()).filter_value
        if abs(v_dif - v_fwd) > 1e-9:
            assert dif_wins == (v_dif > v_fwd), (p, case)


def test_semi_baseline_flags(baseline):
    rep = semi_equilibrium_status(baseline)
    assert rep.per_profile["Forward"].is_equilibrium
    assert rep.per_profile["Differentiate"].is_equilibrium
    assert not rep.per_profile["Block"].is_equilibrium
    assert rep.mixed_gamma == pytest.approx(0.7360622927052209, abs=1e-9)
    assert rep.per_profile["Mixed"].is_equilibrium


def test_semi_closed_form_agreement(baseline):
    # deviation-based flags match the threshold inequalities cell by cell
    for pi0 in np.linspace(0.1, 0.95, 18):
        for pi1 in np.linspace(0.05, pi0 - 0.01, 8):
            p = replace(baseline, pi0=float(pi0), pi1=float(pi1))
            th = thresholds(p)
            rep = semi_equilibrium_status(p)
            dif, fwd = rep.per_profile["Differentiate"], rep.per_profile["Forward"]
            if not dif.knife_edge:
                assert dif.is_equilibrium == (th.Q_quality > th.Lambda), (pi0, pi1)
            if not fwd.knife_edge:
                assert fwd.is_equilibrium == (pi0 / pi1 < th.Lambda), (pi0, pi1)


def test_mixed_indifference(baseline):
    g = mixed_gamma(baseline)
    ch = _consumer_channel(baseline, FilterStrategy.mixed(g, 0.0))
    q = baseline.q
    q_sig0 = baseline.pi0 * q / (baseline.pi0 * q + baseline.pi1 * (1 - q))
    block_pay = (1 - q_sig0) * (-baseline.c1)
    fwd_pay = q_sig0 * (1 - ch[0]) * (-baseline.c2) + (1 - q_sig0) * (
        ch[1] * (-baseline.c1) + (1 - ch[1]) * baseline.b
    )
    assert block_pay == pytest.approx(fwd_pay, abs=1e-9)


def test_no_mixed_benefit(rng):
    # no (gamma0, gamma1) profile beats the better pure forwarding profile
    for _ in range(8):
        p = random_params(rng)
        best_pure = max(
            evaluate(p, FilterStrategy.forward()).filter_value,
            evaluate(p, FilterStrategy.differentiate()).filter_value,
        )
        grid = np.linspace(0.0, 1.0, 21)
        best = -np.inf
        for g0 in grid:
            for g1 in grid:
                v = evaluate(p, FilterStrategy.mixed(float(g0), float(g1))).filter_value
                best = max(best, v)
        assert best <= best_pure + 1e-9


def test_unreasonable_never_equilibrium(rng):
    # the dominating mixture pi1*Forward + (1-pi1)*Block forwards all
    # content at rate pi1 instead of inverting the signal
    for _ in range(20):
        p = random_params(rng)
        rep_semi = semi_equilibrium_status(p)
        ch = _consumer_channel(p, FilterStrategy.unreasonable())
        pol_accepts = ch != (1.0, 1.0)
        if pol_accepts:
            own = deviation_payoff(p, FilterStrategy.unreasonable(), ch, Alignment.SEMI)
            mix = deviation_payoff(p, FilterStrategy.mixed(1 - p.pi1, 1 - p.pi1), ch, Alignment.SEMI)
            assert mix >= own - 1e-12
        assert "Unreasonable" not in [n for n, s in rep_semi.per_profile.items() if s.is_equilibrium]


def test_deviation_certificate_when_dif_fails(baseline):
    p = WITNESS
    rep = semi_equilibrium_status(p)
    dif = rep.per_profile["Differentiate"]
    assert not dif.is_equilibrium
    assert dif.best_deviation == "Forward"
    ch = _consumer_channel(p, FilterStrategy.differentiate())
    own = deviation_payoff(p, FilterStrategy.differentiate(), ch, Alignment.SEMI)
    dev = deviation_payoff(p, FilterStrategy.forward(), ch, Alignment.SEMI)
    assert dev > own


def test_inefficiency_witness():
    th = thresholds(WITNESS)
    q_dif = posterior(WITNESS, FilterStrategy.differentiate()).value
    assert th.q_L < q_dif < th.q_H < WITNESS.q
    assert th.Q_quality < th.Lambda
    result = inefficiency_check(WITNESS)
    assert result["inefficient"]
    rep = semi_equilibrium_status(WITNESS)
    assert rep.inefficiency


def test_inefficiency_baseline_premise_fails(baseline):
    result = inefficiency_check(baseline)
    assert not result["inefficient"]
    assert not result["premise"]


def test_pareto_compare_basics(baseline):
    a = evaluate(baseline, FilterStrategy.differentiate())
    b = evaluate(baseline, FilterStrategy.forward())
    assert pareto_compare(a, b) is ParetoOrder.A_DOMINATES
    assert pareto_compare(a, a) is ParetoOrder.EQUAL
    with pytest.raises(ValueError):
        pareto_compare(a, evaluate(baseline, FilterStrategy.forward(),
                                   normalization=Normalization.PER_CONTENT))


def test_pareto_incomparable():
    from filtergame.payoffs import ProfileEvaluation

    def mk(f, c):
        return ProfileEvaluation(
            strategy=FilterStrategy.forward(), alignment=Alignment.SEMI,
            normalization=Normalization.PER_CLEAN, filter_value=f, consumer_value=c,
            forward_prob=1.0, belief=0.5, policy=None,
        )

    assert pareto_compare(mk(1, 2), mk(2, 1)) is ParetoOrder.INCOMPARABLE


def test_overcome_thresholds_baseline(baseline):
    pi0_thr, pi1_thr = overcome_thresholds(baseline)
    # baseline already clears both hurdles, so the thresholds lie inside
    assert pi0_thr <= baseline.pi0
    assert pi1_thr >= baseline.pi1
    # just-threshold quality configurations flip the comparison
    p_worse = replace(baseline, pi0=pi0_thr - 1e-6)
    v_dif = evaluate(p_worse, FilterStrategy.differentiate()).filter_value
    v_fwd = evaluate(p_worse, FilterStrategy.forward()).filter_value
    assert v_dif <= v_fwd + 1e-6


def test_overcome_thresholds_from_mediocre():
    p = ModelParams(q=0.5, pi0=0.5, pi1=0.5, b=1.0, c1=1.0, c2=4.0, lam=2.0)
    pi0_thr, _ = overcome_thresholds(p)
    assert p.pi1 < pi0_thr < 1.0
    better = replace(p, pi0=pi0_thr + 1e-6)
    assert (evaluate(better, FilterStrategy.differentiate()).filter_value
            > evaluate(better, FilterStrategy.forward()).filter_value)
