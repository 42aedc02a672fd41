"""SIWR cholera dynamics with sanitation and vaccination controls.

Compartments are susceptible S, infected I, and recovered R people
(persons) plus the concentration W of free-living pathogen in
environmental water (cells/mL).  Infection runs through two routes:
direct person-to-person contact at rate ``beta1``, and ingestion of
environmental pathogen, which saturates in W with half-saturation
constant ``k`` and ceiling ``beta_max`` (Monod kinetics).  Three controls
enter the rates: hygiene efficacy ``eps_h`` discounts the direct route,
water-sanitation efficacy ``eps_w`` discounts the environmental route,
and susceptibles are vaccinated straight into R at rate ``nu``.

The state equations, with N = S + I + R:

    dS/dt = lam - beta1*(1-eps_h)*(I/N)*S - beta2(W)*(1-eps_w)*S - (mu+nu)*S
    dI/dt = beta1*(1-eps_h)*(I/N)*S + beta2(W)*(1-eps_w)*S - (gamma+mu+delta)*I
    dR/dt = gamma*I + nu*S - mu*R
    dW/dt = theta*I - sigma*W

with beta2(W) = beta_max * W / (k + W).

Everything here is a pure function of its arguments; nothing is cached or
mutated, so all operations are safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "Parameters",
    "State",
    "Derivative",
    "BASELINE_PARAMS",
    "BASELINE_STATE",
    "monod_beta2",
    "rhs",
    "incidence",
    "r0",
    "r0_components",
    "dfe",
]

# Canonical field order, shared by the fast integrator path and the CLI.
PARAM_FIELDS = (
    "lam", "mu", "delta", "gamma", "beta1", "beta_max",
    "k", "theta", "sigma", "eps_h", "eps_w", "nu",
)


@dataclass(frozen=True)
class Parameters:
    """Model constants.  Rates are per day; ``lam`` persons/day, ``k`` cells/mL."""

    lam: float       # recruitment rate of susceptibles
    mu: float        # natural mortality rate
    delta: float     # disease-induced mortality rate
    gamma: float     # recovery rate
    beta1: float     # direct human-to-human transmission rate
    beta_max: float  # ceiling of the environment-to-human transmission rate
    k: float         # half-saturation pathogen concentration
    theta: float     # pathogen shedding rate per infected
    sigma: float     # environmental pathogen decay rate
    eps_h: float     # hygiene (direct-route) efficacy, in [0, 1]
    eps_w: float     # water-sanitation (environmental-route) efficacy, in [0, 1]
    nu: float        # vaccination rate of susceptibles

    def validate(self) -> None:
        """Raise ValueError naming the offending field if any invariant fails.

        ``mu`` and ``nu`` may be zero here; the operations that divide by them
        (``dfe``, ``r0``, the endemic solver) check positivity at the point of
        use so that degenerate configurations stay usable for pure integration.
        """
        for name in PARAM_FIELDS:
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValueError(f"parameter {name} must be a finite number, got {v!r}")
            if v < 0.0:
                raise ValueError(f"parameter {name} must be >= 0, got {v!r}")
        if self.eps_h > 1.0:
            raise ValueError(f"parameter eps_h must lie in [0, 1], got {self.eps_h!r}")
        if self.eps_w > 1.0:
            raise ValueError(f"parameter eps_w must lie in [0, 1], got {self.eps_w!r}")
        if self.k <= 0.0:
            raise ValueError(f"parameter k must be > 0, got {self.k!r}")
        if self.sigma <= 0.0:
            raise ValueError(f"parameter sigma must be > 0, got {self.sigma!r}")
        if self.gamma + self.mu + self.delta <= 0.0:
            raise ValueError("gamma + mu + delta must be > 0 (infectious period)")

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(float(getattr(self, name)) for name in PARAM_FIELDS)


@dataclass(frozen=True)
class State:
    """Point in the (S, I, R, W) phase space."""

    s: float
    i: float
    r: float
    w: float

    @property
    def n(self) -> float:
        """Living population size N = S + I + R."""
        return self.s + self.i + self.r

    def validate(self) -> None:
        for name in ("s", "i", "r", "w"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValueError(f"state component {name} must be a finite number, got {v!r}")
            if v < 0.0:
                raise ValueError(f"state component {name} must be >= 0, got {v!r}")
        if self.n <= 0.0:
            raise ValueError("total population N = S + I + R must be > 0")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.s, self.i, self.r, self.w)


@dataclass(frozen=True)
class Derivative:
    """Time derivative of a :class:`State`, in compartment units per day."""

    ds: float
    di: float
    dr: float
    dw: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.ds, self.di, self.dr, self.dw)


# Default calibration: a town of 10^4 people with a small seeded outbreak.
BASELINE_PARAMS = Parameters(
    lam=1.0, mu=1e-4, delta=5e-3, gamma=0.2,
    beta1=0.25, beta_max=0.5, k=1e4, theta=0.1, sigma=0.33,
    eps_h=0.0, eps_w=0.0, nu=0.0,
)
BASELINE_STATE = State(s=9990.0, i=10.0, r=0.0, w=0.0)


def monod_beta2(w: float, p: Parameters) -> float:
    """Environmental transmission rate beta_max*W/(k+W) at concentration ``w``.

    Saturating in ``w``: 0 at w=0, half the ceiling at w=k, approaching
    ``beta_max`` from below as w grows.
    """
    if not math.isfinite(w) or w < 0.0:
        raise ValueError(f"pathogen concentration w must be finite and >= 0, got {w!r}")
    if p.k <= 0.0:
        raise ValueError(f"parameter k must be > 0, got {p.k!r}")
    return p.beta_max * w / (p.k + w)


def incidence(x: State, p: Parameters) -> float:
    """New-infection flux (persons/day) out of S through both routes combined."""
    p.validate()
    n = x.n
    if n <= 0.0:
        raise ValueError("total population N = S + I + R must be > 0")
    direct = p.beta1 * (1.0 - p.eps_h) * (x.i / n)
    environmental = monod_beta2(x.w, p) * (1.0 - p.eps_w)
    return (direct + environmental) * x.s


def rhs(x: State, p: Parameters) -> Derivative:
    """Vector field of the model at state ``x``.

    The incidence term is computed once and reused in dS and dI so the
    bookkeeping identity ds + di + dr = lam - mu*N - delta*I holds to
    rounding error.
    """
    p.validate()
    n = x.s + x.i + x.r
    if n <= 0.0:
        raise ValueError("total population N = S + I + R must be > 0")
    inc = (p.beta1 * (1.0 - p.eps_h) * (x.i / n)
           + p.beta_max * x.w / (p.k + x.w) * (1.0 - p.eps_w)) * x.s
    ds = p.lam - inc - (p.mu + p.nu) * x.s
    di = inc - (p.gamma + p.mu + p.delta) * x.i
    dr = p.gamma * x.i + p.nu * x.s - p.mu * x.r
    dw = p.theta * x.i - p.sigma * x.w
    return Derivative(ds=ds, di=di, dr=dr, dw=dw)


def r0_components(p: Parameters) -> dict[str, float]:
    """Pieces of the basic reproduction number.

    direct_term            beta1*(1-eps_h)*mu           (person-to-person)
    environmental_term     (1-eps_w)*lam*beta_max*theta/(k*sigma)
    removal_denominator    (mu+nu)*(gamma+mu+delta)

    r0 = (direct_term + environmental_term) / removal_denominator.  The
    environmental piece uses the low-concentration slope beta_max/k of the
    Monod response together with the quasi-steady pathogen load
    W = (theta/sigma)*I per infected.
    """
    p.validate()
    den = (p.mu + p.nu) * (p.gamma + p.mu + p.delta)
    if den <= 0.0:
        raise ValueError("r0 undefined: (mu+nu)*(gamma+mu+delta) must be > 0")
    direct = p.beta1 * (1.0 - p.eps_h) * p.mu
    environmental = (1.0 - p.eps_w) * p.lam * p.beta_max * p.theta / (p.k * p.sigma)
    return {
        "direct_term": direct,
        "environmental_term": environmental,
        "removal_denominator": den,
        "r0": (direct + environmental) / den,
    }


def r0(p: Parameters) -> float:
    """Basic reproduction number at parameters ``p``.

    Strictly decreasing in each control (eps_h, eps_w, nu) whenever the
    transmission term it acts on is positive; the outbreak threshold is
    r0 = 1.
    """
    return r0_components(p)["r0"]


def dfe(p: Parameters) -> State:
    """Disease-free equilibrium (S*, 0, R*, 0).

    S* = lam/(mu+nu) and R* = nu*lam/(mu*(mu+nu)): with no infection the
    population settles where recruitment balances mortality plus
    vaccination throughput.  Requires mu > 0.
    """
    p.validate()
    if p.mu <= 0.0:
        raise ValueError("dfe undefined: mu must be > 0")
    s = p.lam / (p.mu + p.nu)
    r = p.nu * p.lam / (p.mu * (p.mu + p.nu))
    return State(s=s, i=0.0, r=r, w=0.0)
