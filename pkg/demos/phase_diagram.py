#!/usr/bin/env python3
"""The localization phase diagram over the (gamma0, gamma1) square.

Colors each grid point by the simulation indicator (tail-averaged origin
probability) and overlays the predicted boundary |gamma0| = |gamma1|.
The full 41x41 grid takes a few minutes; pass --quick for a 13x13 preview.

Usage: python3 phase_diagram.py [--quick] [--workers N]
"""

import argparse
import os

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from halfline_ctqw import default_grid, default_sweep_budget, sweep_phase_diagram

parser = argparse.ArgumentParser()
parser.add_argument("--quick", action="store_true", help="13x13 grid, shorter runs")
parser.add_argument("--workers", type=int, default=os.cpu_count())
args = parser.parse_args()

if args.quick:
    grid_points = 13
    budget = default_sweep_budget(n_sites=300, t_max=100.0)
else:
    grid_points = 41
    budget = default_sweep_budget()

grid = default_grid(grid_points)
points = sweep_phase_diagram(grid, budget, workers=args.workers)

indicator = np.full((grid_points, grid_points), np.nan)
for k, p in enumerate(points):
    i, j = divmod(k, grid_points)
    indicator[j, i] = p.indicator_value  # row = gamma1, col = gamma0

n_inconclusive = sum(
    1 for p in points if p.observed is not None and p.observed.value == "inconclusive"
)
n_flagged = sum(1 for p in points if p.flagged)
print(f"{len(points)} points: {n_inconclusive} inconclusive, {n_flagged} flagged")
for p in points:
    if p.flagged:
        print(
            f"  flagged ({p.gamma0:+.2f}, {p.gamma1:+.2f}): "
            f"predicted {p.predicted.value}, observed {p.observed.value}, "
            f"indicator {p.indicator_value:.5f}"
        )

fig, ax = plt.subplots(figsize=(5.4, 4.6))
bound = max(abs(g) for g, _ in grid)
im = ax.imshow(
    indicator,
    origin="lower",
    extent=(-bound, bound, -bound, bound),
    cmap="viridis",
    vmin=0.0,
    vmax=0.6,
)
diag = np.linspace(-bound, bound, 2)
ax.plot(diag, diag, "w:", lw=1)
ax.plot(diag, -diag, "w:", lw=1)
ax.set_xlabel("$\\gamma_0$")
ax.set_ylabel("$\\gamma_1$")
ax.set_title("tail-averaged $P(X_t = 0)$; localization inside $|\\gamma_0|<|\\gamma_1|$")
fig.colorbar(im, ax=ax, label="indicator")
fig.tight_layout()
fig.savefig("phase_diagram.png", dpi=150)
print("wrote phase_diagram.png")
