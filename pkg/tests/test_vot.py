import math
from dataclasses import replace

import pytest

from filtergame.beliefs import FilterStrategy, posterior
from filtergame.params import ModelParams, thresholds
from filtergame.payoffs import Alignment, Normalization
from filtergame.vot import (
    Method,
    Regime,
    RegimeBoundaryError,
    finite_difference,
    mvot_aligned,
    mvot_semialigned,
)

from conftest import random_params


def test_baseline_nonconstant_regime(baseline):
    mv = mvot_aligned(baseline)
    assert mv.regime is Regime.NON_CONSTANT
    assert mv.d_pi0 == pytest.approx(2.1929428646637876, abs=1e-9)
    assert mv.d_pi1 == pytest.approx(-1.6860596972905026, abs=1e-9)


def test_baseline_matches_finite_difference(baseline):
    mv = mvot_aligned(baseline)
    fd = finite_difference(baseline, FilterStrategy.differentiate(), step=1e-5)
    assert fd.d_pi0 == pytest.approx(mv.d_pi0, abs=1e-4)
    assert fd.d_pi1 == pytest.approx(mv.d_pi1, abs=1e-4)


def test_zero_regime_when_forward_wins():
    # nearly uninformative filter: screening burns clean content for nothing
    p = ModelParams(q=0.5, pi0=0.31, pi1=0.3, b=1.0, c1=1.0, c2=4.0, lam=2.0)
    mv = mvot_aligned(p)
    assert mv.regime is Regime.ZERO
    assert mv.d_pi0 == 0.0 and mv.d_pi1 == 0.0
    fd = finite_difference(p, None, step=1e-6)
    assert fd.d_pi0 == pytest.approx(0.0, abs=1e-4)
    assert fd.d_pi1 == pytest.approx(0.0, abs=1e-4)


def _constant_regime_params():
    # strong filter, so the differentiated posterior drops below q_L
    return ModelParams(q=0.5, pi0=0.995, pi1=0.05, b=1.0, c1=1.0, c2=4.0, lam=2.0)


def test_constant_regime_closed_form():
    p = _constant_regime_params()
    th = thresholds(p)
    assert posterior(p, FilterStrategy.differentiate()).value < th.q_L
    mv = mvot_aligned(p)
    assert mv.regime is Regime.CONSTANT
    assert mv.d_pi0 == pytest.approx(p.q / (1 - p.q) * p.c2)
    assert mv.d_pi1 == pytest.approx(-(p.c1 + p.b))
    fd = finite_difference(p, FilterStrategy.differentiate(), step=1e-6)
    assert fd.d_pi0 == pytest.approx(mv.d_pi0, abs=1e-4)
    assert fd.d_pi1 == pytest.approx(mv.d_pi1, abs=1e-4)


def test_continuity_across_regime_boundary(baseline):
    # the log form at q_dif -> q_L collapses to the constant form because
    # lam*log(q_H/q_L) = c2 identically
    th = thresholds(baseline)
    assert baseline.lam * math.log(th.q_H / th.q_L) == pytest.approx(baseline.c2, abs=1e-12)


def test_nonconstant_signs_random(rng):
    seen = 0
    while seen < 25:
        p = random_params(rng)
        mv = mvot_aligned(p)
        if mv.regime is Regime.NON_CONSTANT:
            assert mv.d_pi0 > 0.0 and mv.d_pi1 < 0.0
            seen += 1


def test_analytic_vs_numeric_grid(baseline):
    # 10x10 quality grid, both utility modes, within the smooth regime
    import numpy as np

    for pi0 in np.linspace(0.55, 0.95, 10):
        for pi1 in np.linspace(0.05, 0.45, 10):
            p = replace(baseline, pi0=float(pi0), pi1=float(pi1))
            mv = mvot_aligned(p)
            if mv.regime is not Regime.NON_CONSTANT:
                continue
            try:
                fd = finite_difference(p, FilterStrategy.differentiate(), step=1e-5)
            except RegimeBoundaryError:
                continue
            assert fd.d_pi0 == pytest.approx(mv.d_pi0, abs=1e-4)
            assert fd.d_pi1 == pytest.approx(mv.d_pi1, abs=1e-4)
            filt, _ = mvot_semialigned(p, FilterStrategy.differentiate())
            fds = finite_difference(p, FilterStrategy.differentiate(), Alignment.SEMI,
                                    Normalization.PER_CONTENT, step=1e-5)
            assert fds.d_pi0 == pytest.approx(filt.d_pi0, abs=1e-4)
            assert fds.d_pi1 == pytest.approx(filt.d_pi1, abs=1e-4)


def test_semialigned_baseline(baseline):
    filt, cons = mvot_semialigned(baseline, FilterStrategy.differentiate())
    assert filt.regime is Regime.SEMI_FILTER_CONSTANT
    assert filt.d_pi0 == pytest.approx(0.4247896173955586, abs=1e-6)
    assert filt.d_pi1 == pytest.approx(-0.8441518039744366, abs=1e-6)
    assert cons.d_pi0 == pytest.approx(2.1929428646637876, abs=1e-9)
    assert cons.d_pi1 == pytest.approx(-1.6860596972905026, abs=1e-9)


def test_semialigned_bracket_positive(rng):
    # the stakes bracket is positive whenever accepting is optimal at q_L
    for _ in range(30):
        p = random_params(rng)
        th = thresholds(p)
        assert (1 - th.q_L) * (p.b + p.c1) - th.q_L * p.c2 > 0.0


def test_semialigned_forward_all_zero(baseline):
    filt, cons = mvot_semialigned(baseline, FilterStrategy.forward())
    assert (filt.d_pi0, filt.d_pi1, cons.d_pi0, cons.d_pi1) == (0.0, 0.0, 0.0, 0.0)


def test_block_profile_flat(baseline):
    fd = finite_difference(baseline, FilterStrategy.block(), step=1e-4)
    assert fd.d_pi0 == 0.0 and fd.d_pi1 == 0.0


def test_boundary_guard():
    # a step crossing q_dif = q_L must be refused, not silently averaged
    p = ModelParams(q=0.5, pi0=0.995, pi1=0.05, b=1.0, c1=1.0, c2=4.0, lam=2.0)
    with pytest.raises(RegimeBoundaryError):
        finite_difference(p, FilterStrategy.differentiate(), step=0.04)


def test_step_out_of_range(baseline):
    with pytest.raises(RegimeBoundaryError):
        finite_difference(replace(baseline, pi0=0.9999), FilterStrategy.differentiate(), step=1e-3)
