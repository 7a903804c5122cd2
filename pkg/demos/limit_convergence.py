#!/usr/bin/env python3
"""How fast does P(X_t = 0) approach its long-time limit?

Runs both coupling orders of the pair (1/3, 1/2) and plots the origin
probability over time against the closed-form limit: a plateau at
(1 - (g0/g1)^2)^2 = 25/81 in the localized phase, and decay to zero after
swapping the couplings.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from halfline_ctqw import (
    HoppingPair,
    Integrator,
    LatticeKind,
    LatticeTopology,
    WalkConfig,
    evolve,
    limit_measure,
)

T_MAX = 500.0
N_SITES = 500

fig, axes = plt.subplots(1, 2, figsize=(10, 3.6), sharex=True)
for ax, (g0, g1) in zip(axes, [(1 / 3, 1 / 2), (1 / 2, 1 / 3)]):
    couplings = HoppingPair(g0, g1)
    config = WalkConfig(
        couplings=couplings,
        topology=LatticeTopology(LatticeKind.HALF_LINE_TRUNCATED, N_SITES),
        t_max=T_MAX,
        dt=0.1,
        integrator=Integrator.REFERENCE,
        record_stride=1,
    )
    traj = evolve(config)
    p0 = np.abs(traj.values[:, 0]) ** 2
    limit = limit_measure(0, couplings)
    print(
        f"gamma0={g0:.4f} gamma1={g1:.4f}: "
        f"P(0) at t={T_MAX:.0f} is {p0[-1]:.5f}, long-time limit {limit:.5f}"
    )
    ax.plot(traj.times, p0, lw=0.7, label="$|\\psi_t(0)|^2$")
    ax.axhline(limit, color="crimson", ls="--", label=f"limit = {limit:.4f}")
    ax.set_title(f"$\\gamma_0$ = {g0:.3f}, $\\gamma_1$ = {g1:.3f}")
    ax.set_xlabel("t")
    ax.set_ylim(-0.02, 1.0)
    ax.legend()
axes[0].set_ylabel("probability at the origin")
fig.tight_layout()
fig.savefig("limit_convergence.png", dpi=150)
print("wrote limit_convergence.png")
