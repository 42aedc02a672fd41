"""Equilibria of the SIWR system: Jacobians, eigenvalues, stability, roots.

The disease-free equilibrium has a closed-form Jacobian; the endemic
equilibrium (EE) is found numerically.  At any equilibrium the pathogen
and recovered pools are slaved to (S*, I*):

    W* = (theta/sigma) * I*        R* = (gamma*I* + nu*S*) / mu

so the root problem reduces to two equations, the stationary dS/dt and
dI/dt, in the two unknowns (S*, I*).  A damped Newton iteration solves
that reduced system; a 1-D bracketing scan over I* in (0, lam/mu], with
S* eliminated through the quadratic stationarity condition of dS/dt,
provides both the fallback bracket and the certificate that no positive
root exists.

Eigenvalues of 4x4 matrices are computed from the characteristic
polynomial (Faddeev-LeVerrier coefficients) by Durand-Kerner simultaneous
root iteration.  At fixed degree 4 this is compact, dependency-free, and
easy to verify against matrices with known spectra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .integrator import SolverConfig, integrate
from .model import Parameters, State, dfe, r0, rhs

__all__ = [
    "Matrix4",
    "EquilibriumReport",
    "NonConvergence",
    "jacobian_dfe",
    "jacobian_numeric",
    "eigenvalues_4x4",
    "classify_stability",
    "dfe_report",
    "solve_endemic",
]

Matrix4 = np.ndarray  # shape (4, 4), row/column order (S, I, R, W)

STABLE = "stable"
UNSTABLE = "unstable"
MARGINAL = "marginal"

# Eigenvalue solvers cannot distinguish an exact zero real part; anything
# inside this band is classified marginal.
STABILITY_BAND = 1e-9


class NonConvergence(RuntimeError):
    """An iterative computation failed to reach its tolerance."""


@dataclass(frozen=True)
class EquilibriumReport:
    """An equilibrium point together with its local stability diagnosis."""

    kind: str                # "disease_free" or "endemic"
    state: State
    residual_norm: float     # max-norm of rhs at state
    eigenvalues: tuple[complex, complex, complex, complex]
    stability: str           # "stable", "unstable" or "marginal"
    r0_at_params: float


def jacobian_dfe(p: Parameters) -> Matrix4:
    """Closed-form Jacobian of the vector field at the disease-free equilibrium.

    At the DFE, S*/N* = mu/(mu+nu), and the environmental route enters
    through the low-concentration slope beta_max/k of the Monod response,
    giving d(dS/dt)/dW = -(1-eps_w)*(lam/(mu+nu))*(beta_max/k).
    """
    p.validate()
    mn = p.mu + p.nu
    if mn <= 0.0:
        raise ValueError("jacobian_dfe undefined: mu + nu must be > 0")
    a_direct = p.beta1 * (1.0 - p.eps_h) * p.mu / mn
    b_water = (1.0 - p.eps_w) * (p.lam / mn) * (p.beta_max / p.k)
    gmd = p.gamma + p.mu + p.delta
    return np.array([
        [-mn, -a_direct, 0.0, -b_water],
        [0.0, a_direct - gmd, 0.0, b_water],
        [p.nu, p.gamma, -p.mu, 0.0],
        [0.0, p.theta, 0.0, -p.sigma],
    ])


def jacobian_numeric(x: State, p: Parameters) -> Matrix4:
    """Central-difference Jacobian of rhs at ``x``, step 1e-6*max(|x_j|, 1).

    The probes may push a coordinate infinitesimally negative (e.g. around
    I = 0); the vector field extends smoothly there, so this is harmless.
    """
    if x.n <= 0.0:
        raise ValueError("jacobian_numeric requires N = S + I + R > 0")
    base = x.as_tuple()
    jac = np.empty((4, 4))
    for j in range(4):
        h = 1e-6 * max(abs(base[j]), 1.0)
        up = list(base)
        dn = list(base)
        up[j] += h
        dn[j] -= h
        f_up = rhs(State(*up), p).as_tuple()
        f_dn = rhs(State(*dn), p).as_tuple()
        for row in range(4):
            jac[row, j] = (f_up[row] - f_dn[row]) / (2.0 * h)
    return jac


def _char_poly(m: np.ndarray) -> tuple[float, float, float, float]:
    """Faddeev-LeVerrier coefficients (c1..c4) of det(lambda*I - m).

    The characteristic polynomial is lambda^4 + c1*lambda^3 + c2*lambda^2
    + c3*lambda + c4.
    """
    eye = np.eye(4)
    m1 = m
    c1 = -np.trace(m1)
    m2 = m @ (m1 + c1 * eye)
    c2 = -np.trace(m2) / 2.0
    m3 = m @ (m2 + c2 * eye)
    c3 = -np.trace(m3) / 3.0
    m4 = m @ (m3 + c3 * eye)
    c4 = -np.trace(m4) / 4.0
    return float(c1), float(c2), float(c3), float(c4)


def _durand_kerner(coeffs: tuple[float, float, float, float], max_iter: int = 500):
    """All four roots of a monic quartic by simultaneous iteration.

    Converged when every residual |p(z_j)| falls below 1e-12 times the
    polynomial scale (fourth power of the Fujiwara root-radius bound), so
    the criterion is invariant under rescaling the underlying matrix.
    """
    c1, c2, c3, c4 = coeffs

    def poly(z: complex) -> complex:
        return (((z + c1) * z + c2) * z + c3) * z + c4

    radius = 2.0 * max(abs(c1), abs(c2) ** 0.5, abs(c3) ** (1.0 / 3.0), abs(c4) ** 0.25)
    radius = max(radius, 1e-3)
    tol = 1e-12 * max(1.0, radius) ** 4

    seed = 0.4 + 0.9j
    z = [radius * seed ** (j + 1) for j in range(4)]
    for _ in range(max_iter):
        worst = 0.0
        for j in range(4):
            denom = 1.0 + 0.0j
            for kk in range(4):
                if kk != j:
                    d = z[j] - z[kk]
                    if d == 0:
                        d = 1e-30 + 1e-30j
                    denom *= d
            z[j] = z[j] - poly(z[j]) / denom
        for j in range(4):
            res = abs(poly(z[j]))
            if res > worst:
                worst = res
        if worst <= tol:
            return z
    raise NonConvergence(
        f"root iteration did not reach residual {tol!r} within {max_iter} sweeps"
    )


def eigenvalues_4x4(m: Matrix4) -> tuple[complex, complex, complex, complex]:
    """Eigenvalues of a real 4x4 matrix, sorted by descending real part."""
    arr = np.asarray(m, dtype=float)
    if arr.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must all be finite")
    roots = _durand_kerner(_char_poly(arr))
    roots.sort(key=lambda v: (-v.real, -v.imag))
    return tuple(roots)


def classify_stability(eigs) -> str:
    """Classify a spectrum: stable / unstable / marginal (within +-1e-9 of 0)."""
    top = max(complex(v).real for v in eigs)
    if top < -STABILITY_BAND:
        return STABLE
    if top > STABILITY_BAND:
        return UNSTABLE
    return MARGINAL


def _report(kind: str, state: State, p: Parameters) -> EquilibriumReport:
    d = rhs(state, p)
    residual = max(abs(v) for v in d.as_tuple())
    eigs = eigenvalues_4x4(jacobian_dfe(p) if kind == "disease_free" else jacobian_numeric(state, p))
    return EquilibriumReport(
        kind=kind,
        state=state,
        residual_norm=residual,
        eigenvalues=eigs,
        stability=classify_stability(eigs),
        r0_at_params=r0(p),
    )


def dfe_report(p: Parameters) -> EquilibriumReport:
    """Disease-free equilibrium with spectrum of the closed-form Jacobian."""
    return _report("disease_free", dfe(p), p)


# ---------------------------------------------------------------------------
# Endemic equilibrium


def _s_given_i(i: float, con) -> float:
    """Positive root of the stationary dS/dt condition at fixed I*.

    Substituting N = a*S + b*I (with a = 1 + nu/mu, b = 1 + gamma/mu from
    the slaved R*) turns lam = S*[(mu+nu) + direct + water] into a
    quadratic A*S^2 + B*S + C = 0 with A > 0 and C <= 0, which has exactly
    one nonnegative root.
    """
    lam, mn, b1e, a, b, k, q, bwe = con
    cw = bwe * q * i / (k + q * i)
    big_a = a * (mn + cw)
    big_b = b * i * (mn + cw) + b1e * i - lam * a
    big_c = -lam * b * i
    disc = math.sqrt(big_b * big_b - 4.0 * big_a * big_c)
    if big_b <= 0.0:
        return (-big_b + disc) / (2.0 * big_a)
    return -2.0 * big_c / (big_b + disc)


def _growth_residual(i: float, con, gmd: float) -> float:
    """Per-infected stationary growth g(I*) whose positive zero is the EE.

    g(I*) = direct + water force of infection per infected minus removal;
    its limit at I* -> 0+ equals (gamma+mu+delta)*(r0 - 1), so the sign at
    the origin is exactly the outbreak threshold.
    """
    lam, mn, b1e, a, b, k, q, bwe = con
    s = _s_given_i(i, con)
    n = a * s + b * i
    return b1e * s / n + bwe * q * s / (k + q * i) - gmd


def solve_endemic(
    p: Parameters,
    guess: State | None = None,
    *,
    scan_points: int = 256,
) -> EquilibriumReport | None:
    """Find the endemic equilibrium, or return None when none exists.

    Newton runs on the reduced (S*, I*) system with a central-difference
    Jacobian and step halving (up to 30 halvings per iteration).  The
    starting point is ``guess`` when given, otherwise the integrator's
    state at t = 1000 days from a small seeded outbreak near the DFE.  If
    Newton stalls, a geometric scan of the reduced growth residual over
    I* in (0, lam/mu] either brackets a root (restarting Newton from the
    bisected bracket) or certifies that no positive root exists, in which
    case None is returned.  NonConvergence signals the pathological case
    where a sign change exists but no starting point converges.
    """
    p.validate()
    if p.mu <= 0.0:
        raise ValueError("solve_endemic undefined: mu must be > 0 (R* = (gamma*I + nu*S)/mu)")

    b1e = p.beta1 * (1.0 - p.eps_h)
    bwe = p.beta_max * (1.0 - p.eps_w)
    if b1e == 0.0 and (bwe == 0.0 or p.theta == 0.0):
        return None  # no transmission route: infection cannot persist

    gmd = p.gamma + p.mu + p.delta
    q = p.theta / p.sigma
    a = 1.0 + p.nu / p.mu
    b = 1.0 + p.gamma / p.mu
    con = (p.lam, p.mu + p.nu, b1e, a, b, p.k, q, bwe)
    i_cap = p.lam / p.mu
    f_tol = 1e-12 * max(1.0, p.lam)

    def reduced(s: float, i: float) -> tuple[float, float]:
        n = a * s + b * i
        force = (b1e * i / n + bwe * q * i / (p.k + q * i)) * s
        return (p.lam - force - (p.mu + p.nu) * s, force - gmd * i)

    def newton(s: float, i: float) -> tuple[float, float] | None:
        f1, f2 = reduced(s, i)
        fn = max(abs(f1), abs(f2))
        for _ in range(100):
            if fn <= f_tol:
                return s, i
            hs = 1e-7 * max(abs(s), 1.0)
            hi = 1e-7 * max(abs(i), 1.0)
            j11 = (reduced(s + hs, i)[0] - reduced(s - hs, i)[0]) / (2.0 * hs)
            j12 = (reduced(s, i + hi)[0] - reduced(s, i - hi)[0]) / (2.0 * hi)
            j21 = (reduced(s + hs, i)[1] - reduced(s - hs, i)[1]) / (2.0 * hs)
            j22 = (reduced(s, i + hi)[1] - reduced(s, i - hi)[1]) / (2.0 * hi)
            det = j11 * j22 - j12 * j21
            if det == 0.0 or not math.isfinite(det):
                return None
            ds = (-f1 * j22 + f2 * j12) / det
            di = (-j11 * f2 + j21 * f1) / det
            lam_step = 1.0
            for _halving in range(30):
                s_new = s + lam_step * ds
                i_new = i + lam_step * di
                if s_new > 0.0 and i_new > 0.0:
                    g1, g2 = reduced(s_new, i_new)
                    gn = max(abs(g1), abs(g2))
                    if gn < fn:
                        s, i, f1, f2, fn = s_new, i_new, g1, g2, gn
                        break
                lam_step *= 0.5
            else:
                return None  # no damping factor reduced the residual
        return (s, i) if fn <= f_tol else None

    def scan_bracket() -> tuple[float, float] | None:
        """First sign change of g over a geometric I* grid, or None."""
        g_lo = gmd * (r0(p) - 1.0)  # exact limit of g at I* -> 0+
        i_lo = 0.0
        lo_exp, hi_exp = math.log(i_cap * 1e-13), math.log(i_cap)
        for idx in range(scan_points + 1):
            i_pt = math.exp(lo_exp + (hi_exp - lo_exp) * idx / scan_points)
            g_pt = _growth_residual(i_pt, con, gmd)
            if g_lo > 0.0 >= g_pt or g_lo <= 0.0 < g_pt:
                return i_lo, i_pt
            i_lo, g_lo = i_pt, g_pt
        return None

    candidates: list[tuple[float, float]] = []
    if guess is not None:
        guess.validate()
        if guess.i > 0.0 and guess.s > 0.0:
            candidates.append((guess.s, guess.i))
    else:
        # Integrator-based guess: run a seeded outbreak well past the
        # 100-day epidemic scale and take the 1000-day state.
        base = dfe(p)
        seed_i = max(base.s * 1e-3, 1e-6)
        start = State(s=base.s - seed_i, i=seed_i, r=base.r, w=0.0)
        cfg = SolverConfig(t_end=1000.0, output_dt=1000.0, h_max=10.0)
        try:
            tr = integrate(p, start, cfg)
            end = tr.state_at(-1)
            if end.i > 0.0 and end.s > 0.0:
                candidates.append((end.s, end.i))
        except (ValueError, RuntimeError):
            pass

    bracket = scan_bracket()
    if bracket is not None:
        lo, hi = bracket
        g_lo = gmd * (r0(p) - 1.0) if lo == 0.0 else _growth_residual(lo, con, gmd)
        for _ in range(200):
            mid = 0.5 * (lo + hi) if lo > 0.0 else hi * 0.5
            g_mid = _growth_residual(mid, con, gmd)
            if (g_lo > 0.0) == (g_mid > 0.0):
                lo, g_lo = mid, g_mid
            else:
                hi = mid
            if hi - lo <= 1e-14 * max(hi, 1.0):
                break
        i_mid = 0.5 * (lo + hi)
        candidates.append((_s_given_i(i_mid, con), i_mid))

    i_floor = i_cap * 1e-11
    for s0, i0 in candidates:
        root = newton(s0, i0)
        if root is not None and root[1] > i_floor:
            s_star, i_star = root
            state = State(
                s=s_star,
                i=i_star,
                r=(p.gamma * i_star + p.nu * s_star) / p.mu,
                w=q * i_star,
            )
            report = _report("endemic", state, p)
            if report.residual_norm <= 1e-10 * max(p.lam, 1.0):
                return report
    if bracket is None:
        return None  # scan certifies g has no positive zero on (0, lam/mu]
    raise NonConvergence(
        "endemic root bracketed by the 1-D scan but Newton failed from every start"
    )
