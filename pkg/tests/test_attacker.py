from dataclasses import replace

import numpy as np
import pytest

from filtergame.attacker import (
    attacker_best_rho,
    attacker_payoff_curve,
    endogenous_equilibrium,
    negative_votc_scan,
)
from filtergame.beliefs import FilterStrategy, posterior
from filtergame.params import ModelParams, thresholds

from conftest import random_params


def test_best_rho_forward(baseline):
    th = thresholds(baseline)
    rho = attacker_best_rho(baseline, FilterStrategy.forward())
    assert rho == pytest.approx(th.q_L / (1 - th.q_L), abs=1e-12)
    assert rho == pytest.approx(0.0989380198014472, abs=1e-9)


def test_best_rho_differentiate(baseline):
    rho = attacker_best_rho(baseline, FilterStrategy.differentiate())
    assert rho == pytest.approx(0.34628306930506525, abs=1e-9)
    # induced posterior lands exactly on q_L
    p = baseline.with_rho0(rho)
    th = thresholds(baseline)
    assert posterior(p, FilterStrategy.differentiate()).value == pytest.approx(th.q_L, abs=1e-12)


def test_best_rho_uninformative_matches_forward(baseline):
    p = replace(baseline, pi0=0.4, pi1=0.4)
    assert attacker_best_rho(p, FilterStrategy.differentiate()) == pytest.approx(
        attacker_best_rho(p, FilterStrategy.forward())
    )


def test_best_rho_block_rejected(baseline):
    with pytest.raises(ValueError, match="block"):
        attacker_best_rho(baseline, FilterStrategy.block())


def test_payoff_curve_accept_all_segment(baseline):
    # below the q_L crossing the consumer accepts everything: payoff = rho0
    rho_small = 0.5 * attacker_best_rho(baseline, FilterStrategy.forward())
    v = attacker_payoff_curve(baseline, FilterStrategy.forward(), rho_small)
    assert v == pytest.approx(rho_small, abs=1e-12)


def test_payoff_curve_unimodal(baseline):
    rho_star = attacker_best_rho(baseline, FilterStrategy.forward())
    v_star = attacker_payoff_curve(baseline, FilterStrategy.forward(), rho_star)
    for rho in (rho_star / 3, rho_star * 3, rho_star * 10):
        assert attacker_payoff_curve(baseline, FilterStrategy.forward(), rho) <= v_star + 1e-9


def test_payoff_affine_in_odds_on_interior(baseline):
    # between the crossings the payoff is affine in the induced odds
    th = thresholds(baseline)
    lo = th.q_L / (1 - th.q_L)
    hi = th.q_H / (1 - th.q_H)
    rhos = np.linspace(lo * 1.1, hi * 0.9, 3)
    vals = [attacker_payoff_curve(baseline, FilterStrategy.forward(), float(r)) for r in rhos]
    interp = vals[0] + (vals[2] - vals[0]) * (rhos[1] - rhos[0]) / (rhos[2] - rhos[0])
    assert vals[1] == pytest.approx(interp, abs=1e-9)


def test_equilibrium_baseline_forward(baseline):
    eq = endogenous_equilibrium(baseline)
    th = thresholds(baseline)
    assert eq.kind == "Forward"
    assert eq.q_induced == pytest.approx(th.q_L, abs=1e-12)
    assert eq.consumer_info_cost == 0.0
    assert eq.v_players == pytest.approx(baseline.b - baseline.c2 * th.q_L / (1 - th.q_L), abs=1e-9)
    assert eq.v_players == pytest.approx(0.6042479207942112, abs=1e-9)


def test_forward_welfare_independent_of_quality(baseline):
    vals = {
        endogenous_equilibrium(replace(baseline, pi0=pi0, pi1=pi1)).v_players
        for pi0, pi1 in [(0.6, 0.2), (0.9, 0.5), (0.7, 0.4), (0.55, 0.3)]
    }
    assert max(vals) - min(vals) < 1e-12


def test_fwd_vs_dif_gap_formula(rng):
    for _ in range(20):
        p = random_params(rng)
        th = thresholds(p)
        if p.pi0 / p.pi1 >= th.Lambda:
            continue
        eq = endogenous_equilibrium(p)
        rho_d = attacker_best_rho(p, FilterStrategy.differentiate())
        p_d = p.with_rho0(rho_d)
        from filtergame.attacker import _accept_all_value

        v_dif = _accept_all_value(p_d, th.q_L, FilterStrategy.differentiate())
        gap = p.pi1 * (p.b + p.c1 - p.c2 * th.q_L / (1 - th.q_L))
        assert eq.v_players - v_dif == pytest.approx(gap, abs=1e-9)
        assert gap > 0.0


def test_differentiate_equilibrium_regime():
    # push the signal ratio past Lambda so Forward dies
    p = ModelParams(q=0.5, pi0=0.9, pi1=0.1, b=1.0, c1=1.0, c2=4.0, lam=2.0)
    th = thresholds(p)
    assert p.pi0 / p.pi1 > th.Lambda
    eq = endogenous_equilibrium(p)
    assert eq.kind in ("Differentiate", "Block")
    if eq.kind == "Differentiate":
        assert eq.q_induced == pytest.approx(th.q_L, abs=1e-9)
        assert eq.consumer_info_cost == 0.0


def test_negative_votc_scan_baseline(baseline):
    scan = negative_votc_scan(baseline)
    assert scan["found"]
    assert scan["v_drop"] > 0.0
    pi0_after, pi1_after = scan["after"]
    assert pi0_after > baseline.pi0 and pi1_after < baseline.pi1
    th = thresholds(baseline)
    assert pi0_after / pi1_after > th.Lambda


def test_negative_votc_premise_gate():
    p = ModelParams(q=0.5, pi0=0.9, pi1=0.1, b=1.0, c1=1.0, c2=4.0, lam=2.0)
    scan = negative_votc_scan(p)
    assert not scan["found"]
    assert "crossing" in scan["reason"]
