"""Adaptive Dormand-Prince 5(4) integration of the SIWR system.

The integrator advances an augmented 5-component state (S, I, R, W, C)
where C is cumulative incidence, dC/dt = incidence and C(0) = 0.  Steps
are accepted when the embedded 4th/5th-order error estimate satisfies the
mixed tolerance |err| <= abs_tol + rel_tol*|y| componentwise; output is
then sampled on a fixed grid by cubic Hermite interpolation over each
accepted step, so the reported trajectory is independent of the internal
step sequence's phase.  States are never clamped: small negative
excursions are left visible so that accuracy problems surface in tests
instead of being masked.

The hot path works on plain float tuples rather than numpy arrays; at
five components the interpreter overhead of tiny-array arithmetic costs
more than it saves, and parameter sweeps run thousands of solves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Parameters, State

__all__ = [
    "SolverConfig",
    "Trajectory",
    "EpidemicSummary",
    "StepSizeUnderflow",
    "integrate",
    "summarize",
]


class StepSizeUnderflow(RuntimeError):
    """Error control demanded a step below h_min; the solve cannot continue."""


@dataclass(frozen=True)
class SolverConfig:
    """Step-control and output-grid settings for :func:`integrate`."""

    rel_tol: float = 1e-6
    abs_tol: float = 1e-8
    h_init: float = 0.1
    h_min: float = 1e-10
    h_max: float = 10.0
    output_dt: float = 1.0
    t_end: float = 100.0

    def validate(self) -> None:
        for name in ("rel_tol", "abs_tol", "h_init", "h_min", "h_max", "output_dt", "t_end"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v) or v <= 0.0:
                raise ValueError(f"solver setting {name} must be finite and > 0, got {v!r}")
        if not (self.h_min <= self.h_init <= self.h_max):
            raise ValueError(
                f"solver step bounds must satisfy h_min <= h_init <= h_max, "
                f"got ({self.h_min!r}, {self.h_init!r}, {self.h_max!r})"
            )
        if self.output_dt > self.t_end:
            raise ValueError("solver setting output_dt must not exceed t_end")


@dataclass(frozen=True)
class Trajectory:
    """Dense solution on the output grid, plus step-acceptance counters."""

    times: np.ndarray          # (m,) grid times, times[0] = 0
    y: np.ndarray              # (m, 4) states, columns S, I, R, W
    cum_incidence: np.ndarray  # (m,) cumulative infections since t = 0
    accepted_steps: int
    rejected_steps: int

    @property
    def s(self) -> np.ndarray:
        return self.y[:, 0]

    @property
    def i(self) -> np.ndarray:
        return self.y[:, 1]

    @property
    def r(self) -> np.ndarray:
        return self.y[:, 2]

    @property
    def w(self) -> np.ndarray:
        return self.y[:, 3]

    @property
    def n(self) -> np.ndarray:
        """Living population N = S + I + R at each grid point."""
        return self.y[:, :3].sum(axis=1)

    def state_at(self, idx: int) -> State:
        s, i, r, w = self.y[idx]
        return State(s=float(s), i=float(i), r=float(r), w=float(w))


@dataclass(frozen=True)
class EpidemicSummary:
    """Outbreak-level quantities reduced from one trajectory."""

    peak_infected: float        # max of I over the grid
    peak_time: float            # earliest grid time attaining the max
    cumulative_infections: float
    final_susceptible: float
    duration_above: float       # days with I > threshold (trapezoid on the indicator)
    threshold: float


# Dormand-Prince 5(4) tableau.  b-row equals the last a-row (FSAL): the
# final stage evaluation of an accepted step is the first stage of the next.
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# 5th-order minus embedded 4th-order weights; k2 has weight 0 in both.
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0,
)

_SAFETY = 0.9
_SHRINK_FLOOR = 0.2
_GROWTH_CAP = 5.0
_ORDER_EXP = -0.2  # 1/(order of the error estimate)


def _make_deriv(p: Parameters):
    """Bind parameters into a fast derivative on (s, i, r, w, c) tuples."""
    lam, mu, delta, gamma, beta1, beta_max, k, theta, sigma, eps_h, eps_w, nu = p.as_tuple()
    b_direct = beta1 * (1.0 - eps_h)
    b_water = beta_max * (1.0 - eps_w)
    gmd = gamma + mu + delta
    mn = mu + nu

    def deriv(y):
        s, i, r, w, _ = y
        n = s + i + r
        if n <= 0.0:
            raise ValueError("total population N = S + I + R must be > 0 during integration")
        inc = (b_direct * i / n + b_water * w / (k + w)) * s
        return (
            lam - inc - mn * s,
            inc - gmd * i,
            gamma * i + nu * s - mu * r,
            theta * i - sigma * w,
            inc,
        )

    return deriv


def _hermite(y0, f0, y1, f1, h: float, s: float):
    """Cubic Hermite value at fraction ``s`` of a step of width ``h``."""
    s2 = s * s
    s3 = s2 * s
    h00 = 2.0 * s3 - 3.0 * s2 + 1.0
    h10 = s3 - 2.0 * s2 + s
    h01 = -2.0 * s3 + 3.0 * s2
    h11 = s3 - s2
    return tuple(
        h00 * y0[j] + h10 * h * f0[j] + h01 * y1[j] + h11 * h * f1[j]
        for j in range(5)
    )


def integrate(p: Parameters, x0: State, cfg: SolverConfig | None = None) -> Trajectory:
    """Solve the model from ``x0`` over [0, t_end], sampled every output_dt.

    The grid is times[j] = j*output_dt for j = 0..floor(t_end/output_dt),
    so the last grid point lies within one output_dt of t_end.  Raises
    :class:`StepSizeUnderflow` if error control pushes the step below
    h_min, and ValueError if the population ever reaches N <= 0.  Two
    calls with identical inputs produce bitwise-identical trajectories.
    """
    if cfg is None:
        cfg = SolverConfig()
    p.validate()
    x0.validate()
    cfg.validate()

    deriv = _make_deriv(p)
    rel, ab = cfg.rel_tol, cfg.abs_tol

    m = int(math.floor(cfg.t_end / cfg.output_dt + 1e-9)) + 1
    out_times = [j * cfg.output_dt for j in range(m)]
    t_last = out_times[-1]

    y = (float(x0.s), float(x0.i), float(x0.r), float(x0.w), 0.0)
    t = 0.0
    k1 = deriv(y)
    h = min(cfg.h_init, t_last)

    samples = [y]
    next_out = 1
    accepted = 0
    rejected = 0
    rng5 = range(5)

    while next_out < m:
        landing = t_last - t
        if h > landing:
            h = landing  # the final landing step may fall below h_min

        y2 = tuple(y[j] + h * (_A21 * k1[j]) for j in rng5)
        k2 = deriv(y2)
        y3 = tuple(y[j] + h * (_A31 * k1[j] + _A32 * k2[j]) for j in rng5)
        k3 = deriv(y3)
        y4 = tuple(y[j] + h * (_A41 * k1[j] + _A42 * k2[j] + _A43 * k3[j]) for j in rng5)
        k4 = deriv(y4)
        y5 = tuple(
            y[j] + h * (_A51 * k1[j] + _A52 * k2[j] + _A53 * k3[j] + _A54 * k4[j])
            for j in rng5
        )
        k5 = deriv(y5)
        y6 = tuple(
            y[j] + h * (_A61 * k1[j] + _A62 * k2[j] + _A63 * k3[j] + _A64 * k4[j] + _A65 * k5[j])
            for j in rng5
        )
        k6 = deriv(y6)
        y_new = tuple(
            y[j] + h * (_B1 * k1[j] + _B3 * k3[j] + _B4 * k4[j] + _B5 * k5[j] + _B6 * k6[j])
            for j in rng5
        )
        k7 = deriv(y_new)

        err_norm = 0.0
        for j in rng5:
            e = h * (_E1 * k1[j] + _E3 * k3[j] + _E4 * k4[j] + _E5 * k5[j] + _E6 * k6[j] + _E7 * k7[j])
            scale = ab + rel * max(abs(y[j]), abs(y_new[j]))
            q = abs(e) / scale
            if q > err_norm:
                err_norm = q

        if err_norm <= 1.0:
            accepted += 1
            t_new = t + h
            edge = t_new - 1e-12 * max(1.0, t_new)
            while next_out < m and out_times[next_out] <= t_new:
                tau = out_times[next_out]
                if tau >= edge:
                    samples.append(y_new)
                else:
                    samples.append(_hermite(y, k1, y_new, k7, h, (tau - t) / h))
                next_out += 1
            t = t_new
            y = y_new
            k1 = k7  # FSAL
            factor = _GROWTH_CAP if err_norm == 0.0 else min(
                _GROWTH_CAP, max(_SHRINK_FLOOR, _SAFETY * err_norm ** _ORDER_EXP)
            )
            h = min(cfg.h_max, h * factor)
        else:
            rejected += 1
            h_new = h * max(_SHRINK_FLOOR, _SAFETY * err_norm ** _ORDER_EXP)
            if h_new < cfg.h_min:
                if h <= cfg.h_min * (1.0 + 1e-12):
                    raise StepSizeUnderflow(
                        f"error control requires a step below h_min={cfg.h_min!r} at t={t!r}"
                    )
                h_new = cfg.h_min
            h = h_new

    arr = np.asarray(samples, dtype=float)
    return Trajectory(
        times=np.asarray(out_times, dtype=float),
        y=arr[:, :4].copy(),
        cum_incidence=arr[:, 4].copy(),
        accepted_steps=accepted,
        rejected_steps=rejected,
    )


def summarize(tr: Trajectory, threshold: float = 1.0) -> EpidemicSummary:
    """Reduce a trajectory to outbreak metrics.

    The peak is taken over the output grid with ties broken toward the
    earliest time; duration_above integrates the indicator of
    I > threshold by the trapezoid rule, so a grid interval where I
    crosses the threshold contributes half its width.
    """
    if not math.isfinite(threshold) or threshold < 0.0:
        raise ValueError(f"threshold must be finite and >= 0, got {threshold!r}")
    i_col = tr.i
    idx = int(np.argmax(i_col))  # argmax returns the first maximizer
    indicator = (i_col > threshold).astype(float)
    duration = float(np.trapezoid(indicator, tr.times))
    return EpidemicSummary(
        peak_infected=float(i_col[idx]),
        peak_time=float(tr.times[idx]),
        cumulative_infections=float(tr.cum_incidence[-1]),
        final_susceptible=float(tr.s[-1]),
        duration_above=duration,
        threshold=float(threshold),
    )
