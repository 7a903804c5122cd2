#!/usr/bin/env python3
"""Cross-check: quadrature Laplace transforms of a simulated run against
the closed forms, and the final-value extrapolation toward s -> 0.

The first table shows |F_x(s)| agreement across s and x; the second shows
s * F_0(s) marching toward the limiting amplitude 1 - (g0/g1)^2 = 5/9.
"""

import numpy as np

from halfline_ctqw import (
    HoppingPair,
    Integrator,
    LatticeKind,
    LatticeTopology,
    WalkConfig,
    evolve,
    final_value_estimate,
    laplace_amplitude,
    limiting_amplitude,
    numeric_laplace,
)

couplings = HoppingPair(1 / 3, 1 / 2)
config = WalkConfig(
    couplings=couplings,
    topology=LatticeTopology(LatticeKind.HALF_LINE_TRUNCATED, 500),
    t_max=500.0,
    dt=0.1,
    integrator=Integrator.REFERENCE,
    record_stride=1,
)
traj = evolve(config)

print("quadrature vs closed form (gamma0=1/3, gamma1=1/2, T=500):")
print(f"{'s':>6} {'x':>3} {'numeric':>24} {'closed':>24} {'abs err':>10}")
for s in (0.5, 1.0, 2.0, 5.0):
    for x in (0, 1, 2, 3):
        numeric = numeric_laplace(traj, s, x)
        closed = laplace_amplitude(x, s, couplings)
        print(
            f"{s:>6.2f} {x:>3d} {str(np.round(numeric.value, 10)):>24} "
            f"{str(np.round(closed, 10)):>24} {abs(numeric.value - closed):>10.2e}"
        )

print()
print("final value theorem: s * F_0(s) as s -> 0+")
for s in (0.1, 0.05, 0.02, 0.01):
    value = s * numeric_laplace(traj, s, 0).value
    print(f"  s = {s:5.3f}: s*F_0(s) = {value.real:+.6f}{value.imag:+.6f}i")
estimate = final_value_estimate(traj, 0)
target = limiting_amplitude(0, couplings)
print(
    f"  extrapolated: {estimate.value.real:.6f} "
    f"(uncertainty {estimate.uncertainty:.1e}), exact limit {target.real:.6f}"
)
