import numpy as np
import pytest

from filtergame.params import ModelParams, thresholds, validate


def random_params(rng: np.random.Generator, q_range=(0.05, 0.95)) -> ModelParams:
    """A random valid parameter set with non-degenerate thresholds."""
    while True:
        pi1 = rng.uniform(0.05, 0.85)
        pi0 = rng.uniform(pi1 + 0.02, 0.97)
        p = ModelParams(
            q=float(rng.uniform(*q_range)),
            pi0=float(pi0),
            pi1=float(pi1),
            b=float(rng.uniform(0.2, 4.0)),
            c1=float(rng.uniform(0.2, 4.0)),
            c2=float(rng.uniform(0.5, 6.0)),
            lam=float(rng.uniform(0.5, 4.0)),
        )
        if validate(p):
            continue
        th = thresholds(p)
        if th.q_H - th.q_L > 0.05:  # skip near-degenerate screening bands
            return p


@pytest.fixture
def baseline() -> ModelParams:
    return ModelParams(q=0.5, pi0=0.8, pi1=0.3, b=1.0, c1=1.0, c2=4.0, lam=2.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260826)
