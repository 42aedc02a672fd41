"""Shared draw helpers for randomized property tests.

Every randomized test builds its own ``numpy.random.default_rng`` with a
fixed seed, so the suite is deterministic end to end.
"""

from __future__ import annotations

import numpy as np
import pytest

from siwr import BASELINE_PARAMS, BASELINE_STATE, Parameters, State


def _log_uniform(rng: np.random.Generator, lo: float, hi: float) -> float:
    return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))


def draw_params(rng: np.random.Generator, mu_min: float = 1e-5, mu_max: float = 5e-2) -> Parameters:
    """Random parameter set over broad but epidemiologically sane scales.

    ``mu`` is strictly positive so equilibrium operations are always
    defined for drawn sets; pass a larger ``mu_min`` to keep slow-mode
    timescales short enough for integration-based checks.
    """
    p = Parameters(
        lam=float(rng.uniform(0.1, 10.0)),
        mu=_log_uniform(rng, mu_min, mu_max),
        delta=float(rng.uniform(0.0, 0.02)),
        gamma=_log_uniform(rng, 0.05, 1.0),
        beta1=_log_uniform(rng, 1e-3, 1.0),
        beta_max=_log_uniform(rng, 1e-2, 2.0),
        k=_log_uniform(rng, 1e2, 1e6),
        theta=_log_uniform(rng, 1e-3, 1.0),
        sigma=_log_uniform(rng, 1e-2, 2.0),
        eps_h=float(rng.uniform(0.0, 1.0)),
        eps_w=float(rng.uniform(0.0, 1.0)),
        nu=float(rng.uniform(0.0, 0.05)),
    )
    p.validate()
    return p


def draw_state(rng: np.random.Generator) -> State:
    """Random nonnegative initial state with a positive population."""
    x = State(
        s=float(rng.uniform(1e2, 1e5)),
        i=float(rng.uniform(0.0, 1e3)),
        r=float(rng.uniform(0.0, 1e4)),
        w=float(rng.uniform(0.0, 1e3)),
    )
    x.validate()
    return x


@pytest.fixture
def baseline() -> Parameters:
    return BASELINE_PARAMS


@pytest.fixture
def baseline_state() -> State:
    return BASELINE_STATE
