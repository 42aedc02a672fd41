"""
Equilibria and the outbreak threshold
=====================================

Where does the system settle?  Below r0 = 1 the disease-free state is
the only equilibrium and it is stable.  Crossing r0 = 1 it loses
stability and a stable endemic branch grows out of zero -- a forward
(transcritical) bifurcation, traced here along the direct-transmission
rate beta1.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from siwr import BASELINE_PARAMS, bifurcation_scan, dfe_report, solve_endemic

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

# At the baseline the disease-free equilibrium exists but is unstable.
rep = dfe_report(BASELINE_PARAMS)
print(f"disease-free equilibrium: S*={rep.state.s:,.0f}, stability: {rep.stability}")
print("  eigenvalues:", ", ".join(f"{v.real:+.2e}{v.imag:+.2e}j" for v in rep.eigenvalues))

# The endemic equilibrium is found by collapsing the fixed-point system
# to one equation in I*, bracketing a sign change, and polishing with a
# damped Newton iteration on the full 4-dimensional system.
rep = solve_endemic(BASELINE_PARAMS)
print(f"\nendemic equilibrium: S*={rep.state.s:.1f} I*={rep.state.i:.3f} "
      f"R*={rep.state.r:.1f} W*={rep.state.w:.4f}")
print(f"  residual {rep.residual_norm:.1e}, stability: {rep.stability}")
slowest = max(rep.eigenvalues, key=lambda v: v.real)
print(f"  slowest mode {slowest.real:+.2e}{slowest.imag:+.2e}j "
      f"(damping timescale ~{-1.0 / slowest.real:,.0f} days)")

# Trace the endemic branch along beta1.  Each solve warm-starts from the
# previous root, so the scan is effectively a continuation method.
rows = bifurcation_scan(BASELINE_PARAMS, "beta1", 0.0, 0.26, 50)
values = [row.overrides["beta1"] for row in rows]

fig, ax = plt.subplots(figsize=(7, 4.5))
ax.plot(values, [row.endemic_i for row in rows], "o-", ms=3, label="endemic I*")
crossing = next(v for v, row in zip(values, rows) if row.r0 > 1.0)
ax.axvline(crossing, ls=":", color="gray", label="r0 = 1")
ax.set_xlabel("beta1 (direct transmission rate)")
ax.set_ylabel("equilibrium infected I*")
ax.legend(frameon=False)
fig.tight_layout()
path = os.path.join(OUT, "bifurcation_beta1.png")
fig.savefig(path, dpi=150)
print(f"\nwrote {path}")
