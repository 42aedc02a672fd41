"""Global sensitivity: Latin hypercube sampling and partial rank correlation.

The pipeline is the classic LHS/PRCC pairing: stratified uniform samples
over parameter ranges, one model evaluation per sample, then for each
parameter the Pearson correlation between its rank column and the
rank-transformed outcome after both are residualized against every other
parameter's rank column.  Rank transforms make the coefficients invariant
under monotone reparameterization, which is why PRCC is the standard
summary for monotone-but-nonlinear epidemic responses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import rankdata

from .integrator import SolverConfig, StepSizeUnderflow, integrate
from .model import BASELINE_STATE, PARAM_FIELDS, Parameters, State

__all__ = [
    "ParameterRange",
    "SampleMatrix",
    "PrccResult",
    "DegenerateColumn",
    "SingularRegression",
    "GENERATOR",
    "DEFAULT_SEED",
    "default_ranges",
    "lhs_sample",
    "prcc",
    "run_sensitivity",
]

# Identity of the pseudo-random generator behind lhs_sample, recorded in
# result metadata so runs can be reproduced bit for bit.
GENERATOR = "numpy-pcg64"
DEFAULT_SEED = 42


class DegenerateColumn(ValueError):
    """A sample or outcome column is constant; ranks carry no information."""


class SingularRegression(ValueError):
    """The rank-regression design matrix is rank-deficient."""


def canonical_param_name(name: str) -> str:
    """Accept the serialized spelling "lambda" for the ``lam`` field."""
    if name == "lambda":
        return "lam"
    if name in PARAM_FIELDS:
        return name
    raise ValueError(f"unknown parameter name {name!r}; expected one of {PARAM_FIELDS}")


@dataclass(frozen=True)
class ParameterRange:
    """Uniform sampling interval for one parameter."""

    name: str
    lower: float
    upper: float
    distribution: str = "uniform"


@dataclass(frozen=True)
class SampleMatrix:
    """n_samples x n_params design, with the seed that produced it."""

    data: np.ndarray
    names: tuple[str, ...]
    seed: int


@dataclass(frozen=True)
class PrccResult:
    """Partial rank correlation per parameter, with provenance metadata."""

    coefficients: dict[str, float]
    n_samples: int
    outcome: str
    seed: int
    generator: str = GENERATOR
    failed_samples: tuple[int, ...] = ()


def validate_ranges(ranges: list[ParameterRange], base: Parameters) -> list[ParameterRange]:
    """Canonicalize names and check each interval against the model invariants.

    Both endpoints must produce a valid parameter set when substituted into
    ``base``, so an out-of-bounds efficacy or a zero-width interval is
    rejected here rather than mid-run.
    """
    if not ranges:
        raise ValueError("at least one parameter range is required")
    seen: set[str] = set()
    out: list[ParameterRange] = []
    for rng in ranges:
        name = canonical_param_name(rng.name)
        if name in seen:
            raise ValueError(f"duplicate range for parameter {name!r}")
        seen.add(name)
        if rng.distribution != "uniform":
            raise ValueError(f"range {name!r}: only the uniform distribution is supported")
        if not (math.isfinite(rng.lower) and math.isfinite(rng.upper)):
            raise ValueError(f"range {name!r}: bounds must be finite")
        if not rng.lower < rng.upper:
            raise ValueError(
                f"range {name!r}: lower bound must be strictly below upper, "
                f"got [{rng.lower!r}, {rng.upper!r}]"
            )
        for endpoint in (rng.lower, rng.upper):
            replace(base, **{name: endpoint}).validate()
        out.append(ParameterRange(name, float(rng.lower), float(rng.upper)))
    return out


def default_ranges(base: Parameters) -> list[ParameterRange]:
    """Ranges used when the caller supplies none.

    Rate-like parameters vary uniformly within +-50% of their base value;
    the controls get fixed spans covering every regime of interest:
    efficacies on [0, 0.9] and the vaccination rate on [0, 0.03].
    Recruitment and natural mortality stay fixed (they set the demographic
    scale, not the outbreak response).
    """
    ranges = []
    for name in ("beta1", "beta_max", "k", "theta", "sigma", "gamma", "delta"):
        v = getattr(base, name)
        if v <= 0.0:
            raise ValueError(
                f"no default range for {name!r}: base value is 0, supply an explicit range"
            )
        ranges.append(ParameterRange(name, 0.5 * v, 1.5 * v))
    ranges.append(ParameterRange("eps_h", 0.0, 0.9))
    ranges.append(ParameterRange("eps_w", 0.0, 0.9))
    ranges.append(ParameterRange("nu", 0.0, 0.03))
    return validate_ranges(ranges, base)


def lhs_sample(ranges: list[ParameterRange], n: int, seed: int) -> SampleMatrix:
    """Latin hypercube: one uniform draw in each of n equal strata per column.

    Column j is built by permuting the strata 0..n-1 and jittering
    uniformly inside each, consuming the generator in column order
    (permutation first, then jitter) so the layout is reproducible for a
    fixed seed.
    """
    if n < 2:
        raise ValueError(f"lhs_sample requires n >= 2, got {n}")
    if seed < 0:
        raise ValueError(f"seed must be a nonnegative integer, got {seed!r}")
    names = tuple(canonical_param_name(r.name) for r in ranges)
    rng = np.random.default_rng(seed)
    data = np.empty((n, len(ranges)))
    for j, r in enumerate(ranges):
        if not r.lower < r.upper:
            raise ValueError(f"range {names[j]!r}: lower bound must be strictly below upper")
        strata = rng.permutation(n)
        jitter = rng.uniform(size=n)
        unit = (strata + jitter) / n
        data[:, j] = r.lower + (r.upper - r.lower) * unit
    return SampleMatrix(data=data, names=names, seed=int(seed))


def _residualize(col: np.ndarray, design: np.ndarray) -> np.ndarray:
    coef, _, _, _ = np.linalg.lstsq(design, col, rcond=None)
    return col - design @ coef


def prcc(samples: SampleMatrix, outcomes: np.ndarray, outcome_name: str = "outcome") -> PrccResult:
    """Partial rank correlation of each sample column against the outcome.

    For parameter j, both rank(x_j) and rank(y) are regressed (least
    squares, with intercept) on the rank columns of all other parameters;
    the coefficient is the Pearson correlation of the two residual
    vectors.  If a residual vector vanishes (the outcome is an exact
    function of the other parameters) the coefficient is reported as 0.
    """
    y = np.asarray(outcomes, dtype=float)
    x = np.asarray(samples.data, dtype=float)
    n, n_par = x.shape
    if y.shape != (n,):
        raise ValueError(f"expected {n} outcomes, got shape {y.shape}")
    if n <= n_par + 2:
        raise ValueError(f"need n_samples > n_params + 2, got n={n} with {n_par} parameters")
    if not np.all(np.isfinite(x)) or not np.all(np.isfinite(y)):
        raise ValueError("samples and outcomes must be finite")

    for j, name in enumerate(samples.names):
        if np.ptp(x[:, j]) == 0.0:
            raise DegenerateColumn(f"parameter column {name!r} is constant")
    if np.ptp(y) == 0.0:
        raise DegenerateColumn("outcome column is constant")

    rank_x = np.column_stack([rankdata(x[:, j]) for j in range(n_par)])
    rank_y = rankdata(y)
    ones = np.ones((n, 1))

    coefficients: dict[str, float] = {}
    for j, name in enumerate(samples.names):
        others = np.delete(rank_x, j, axis=1)
        design = np.hstack([ones, others])
        if np.linalg.matrix_rank(design) < design.shape[1]:
            raise SingularRegression(
                f"rank design matrix is rank-deficient when excluding {name!r}"
            )
        res_x = _residualize(rank_x[:, j], design)
        res_y = _residualize(rank_y, design)
        denom = math.sqrt(float(res_x @ res_x) * float(res_y @ res_y))
        coefficients[name] = float(res_x @ res_y) / denom if denom > 0.0 else 0.0

    return PrccResult(
        coefficients=coefficients,
        n_samples=n,
        outcome=outcome_name,
        seed=samples.seed,
    )


def run_sensitivity(
    base: Parameters,
    ranges: list[ParameterRange] | None = None,
    n: int = 1000,
    seed: int = DEFAULT_SEED,
    horizon: float = 100.0,
    x0: State = BASELINE_STATE,
    solver: SolverConfig | None = None,
) -> PrccResult:
    """LHS/PRCC of cumulative infections at ``horizon`` days.

    Each sample overrides ``base`` with its drawn parameter values and is
    integrated from the common initial state; the outcome is the final
    cumulative incidence.  Samples whose solve fails are dropped and
    recorded; more than 1% failures aborts the analysis, since at that
    point the design is no longer a Latin hypercube in any useful sense.
    """
    base.validate()
    checked = validate_ranges(ranges, base) if ranges is not None else default_ranges(base)
    if solver is None:
        solver = SolverConfig(t_end=float(horizon), output_dt=float(horizon))
    elif solver.t_end != horizon:
        raise ValueError(f"solver.t_end={solver.t_end!r} disagrees with horizon={horizon!r}")

    samples = lhs_sample(checked, n, seed)
    outcomes = np.empty(n)
    failed: list[int] = []
    for idx in range(n):
        overrides = {name: float(samples.data[idx, j]) for j, name in enumerate(samples.names)}
        try:
            tr = integrate(replace(base, **overrides), x0, solver)
            outcomes[idx] = tr.cum_incidence[-1]
        except (StepSizeUnderflow, ValueError):
            failed.append(idx)
            outcomes[idx] = math.nan
    if failed:
        if len(failed) > 0.01 * n:
            raise RuntimeError(
                f"sensitivity aborted: {len(failed)} of {n} samples failed to solve (> 1%)"
            )
        keep = np.setdiff1d(np.arange(n), np.asarray(failed))
        samples = SampleMatrix(data=samples.data[keep], names=samples.names, seed=samples.seed)
        outcomes = outcomes[keep]

    result = prcc(samples, outcomes, outcome_name=f"cumulative_infections_t{horizon:g}")
    return PrccResult(
        coefficients=result.coefficients,
        n_samples=result.n_samples,
        outcome=result.outcome,
        seed=result.seed,
        failed_samples=tuple(failed),
    )
