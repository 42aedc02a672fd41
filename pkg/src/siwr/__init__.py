"""SIWR cholera dynamics with interventions.

Susceptible / Infected / Water-pathogen / Recovered compartments with
saturating environmental transmission and three controls: hygiene
efficacy eps_h, water-treatment efficacy eps_w, vaccination rate nu.
The package provides the closed-form reproduction number, an adaptive
Runge-Kutta integrator with dense output, equilibrium and stability
analysis, intervention sweeps, a bifurcation scan, and LHS/PRCC global
sensitivity.  ``siwr.cli`` exposes the same operations as a command
line driven by a JSON config.
"""

from .model import (
    BASELINE_PARAMS,
    BASELINE_STATE,
    PARAM_FIELDS,
    Derivative,
    Parameters,
    State,
    dfe,
    incidence,
    monod_beta2,
    r0,
    r0_components,
    rhs,
)
from .integrator import (
    EpidemicSummary,
    SolverConfig,
    StepSizeUnderflow,
    Trajectory,
    integrate,
    summarize,
)
from .equilibrium import (
    EquilibriumReport,
    NonConvergence,
    classify_stability,
    dfe_report,
    eigenvalues_4x4,
    jacobian_dfe,
    jacobian_numeric,
    solve_endemic,
)
from .sensitivity import (
    DegenerateColumn,
    ParameterRange,
    PrccResult,
    SampleMatrix,
    SingularRegression,
    default_ranges,
    lhs_sample,
    prcc,
    run_sensitivity,
)
from .sweeps import (
    ScenarioSpec,
    SweepRow,
    bifurcation_scan,
    calibration_report,
    default_scenarios,
    intervention_sweep,
    r0_contour,
    scenario_compare,
)

__version__ = "0.1.0"

__all__ = [
    "BASELINE_PARAMS",
    "BASELINE_STATE",
    "PARAM_FIELDS",
    "Derivative",
    "Parameters",
    "State",
    "dfe",
    "incidence",
    "monod_beta2",
    "r0",
    "r0_components",
    "rhs",
    "EpidemicSummary",
    "SolverConfig",
    "StepSizeUnderflow",
    "Trajectory",
    "integrate",
    "summarize",
    "EquilibriumReport",
    "NonConvergence",
    "classify_stability",
    "dfe_report",
    "eigenvalues_4x4",
    "jacobian_dfe",
    "jacobian_numeric",
    "solve_endemic",
    "DegenerateColumn",
    "ParameterRange",
    "PrccResult",
    "SampleMatrix",
    "SingularRegression",
    "default_ranges",
    "lhs_sample",
    "prcc",
    "run_sensitivity",
    "ScenarioSpec",
    "SweepRow",
    "bifurcation_scan",
    "calibration_report",
    "default_scenarios",
    "intervention_sweep",
    "r0_contour",
    "scenario_compare",
    "__version__",
]
