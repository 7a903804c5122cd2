"""Grid sweeps, front tracking, and convergence studies.

The phase sweep pits the closed-form localization rule |gamma0| < |gamma1|
against a simulation indicator (the tail-averaged probability at the
origin): above `epsilon` the run looks localized, below `epsilon / 5` it
looks delocalized, and the band in between is inconclusive, which absorbs
the slow finite-time convergence near the |gamma0| = |gamma1| boundary.
Points where the two labels contradict each other are flagged and their
trajectories kept for inspection.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .closed_form import Phase, classify_phase, limit_measure
from .errors import FrontReachedBoundary, ZeroCoupling, ZeroCouplingInGrid
from .hamiltonian import HoppingPair, LatticeKind, LatticeTopology
from .laplace import default_tail_window, tail_average_probability
from .propagator import Integrator, Trajectory, WalkConfig, evolve

DEFAULT_EPSILON = 0.05
DEFAULT_FRONT_THRESHOLD = 1e-6


class Observation(Enum):
    LOCALIZED = "localized"
    DELOCALIZED = "delocalized"
    INCONCLUSIVE = "inconclusive"


@dataclass
class PhasePoint:
    """One grid point of the phase diagram; `note` marks rejected points."""

    gamma0: float
    gamma1: float
    predicted: Phase | None
    observed: Observation | None
    indicator_value: float
    flagged: bool = False
    note: str | None = None
    trajectory: Trajectory | None = None


def default_grid(n_per_axis: int = 41, bound: float = 1.0) -> list[tuple[float, float]]:
    """Uniform n x n grid over [-bound, bound]^2; axis points are kept so the
    sweep can report them as rejected rather than silently dropping them.

    The axis is built from integer ratios so that +a and -a have exactly
    equal magnitude; linspace rounding would otherwise break the
    |gamma0| = |gamma1| boundary classification at the last bit.
    """
    if n_per_axis < 2:
        raise ValueError("n_per_axis must be >= 2")
    ticks = 2 * np.arange(n_per_axis) - (n_per_axis - 1)
    axis = bound * ticks / (n_per_axis - 1)
    return [(float(g0), float(g1)) for g0 in axis for g1 in axis]


def default_sweep_budget(
    n_sites: int = 500, t_max: float = 200.0, dt: float = 0.01, record_stride: int = 20
) -> WalkConfig:
    """Simulation budget template for the phase sweep (couplings are swapped
    in per grid point)."""
    return WalkConfig(
        couplings=HoppingPair(1.0, 1.0),
        topology=LatticeTopology(LatticeKind.HALF_LINE_TRUNCATED, n_sites),
        t_max=t_max,
        dt=dt,
        integrator=Integrator.REFERENCE,
        record_stride=record_stride,
    )


def _classify_indicator(indicator: float, epsilon: float) -> Observation:
    if indicator > epsilon:
        return Observation.LOCALIZED
    if indicator < epsilon / 5.0:
        return Observation.DELOCALIZED
    return Observation.INCONCLUSIVE


def _evaluate_point(
    args: tuple[int, float, float, WalkConfig, float]
) -> tuple[int, PhasePoint]:
    index, g0, g1, budget, epsilon = args
    try:
        couplings = HoppingPair(g0, g1)
    except ZeroCoupling:
        err = ZeroCouplingInGrid(f"grid point ({g0}, {g1}) has a zero coupling")
        return index, PhasePoint(
            gamma0=g0,
            gamma1=g1,
            predicted=None,
            observed=None,
            indicator_value=float("nan"),
            note=str(err),
        )
    predicted = classify_phase(couplings)
    config = replace(budget, couplings=couplings)
    traj = evolve(config)
    indicator = tail_average_probability(traj, 0, default_tail_window(traj))
    if traj.boundary_leak_flagged:
        observed = Observation.INCONCLUSIVE
        note = "boundary leak exceeded threshold; excluded from the diagram"
    else:
        observed = _classify_indicator(indicator, epsilon)
        note = None
    flagged = (
        observed is not Observation.INCONCLUSIVE
        and observed.value != predicted.value
    )
    return index, PhasePoint(
        gamma0=g0,
        gamma1=g1,
        predicted=predicted,
        observed=observed,
        indicator_value=indicator,
        flagged=flagged,
        note=note,
        trajectory=traj if flagged else None,
    )


def sweep_phase_diagram(
    grid: list[tuple[float, float]],
    budget: WalkConfig,
    epsilon: float = DEFAULT_EPSILON,
    workers: int | None = None,
) -> list[PhasePoint]:
    """Evaluate every grid point and return PhasePoints in grid order.

    Grid points with a zero coupling are reported with a note instead of a
    simulation.  `workers` > 1 distributes points over a process pool;
    output order is by grid index regardless of completion order.
    """
    tasks = [
        (i, g0, g1, budget, epsilon) for i, (g0, g1) in enumerate(grid)
    ]
    results: list[PhasePoint | None] = [None] * len(tasks)
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(tasks) <= 1:
        for task in tasks:
            index, point = _evaluate_point(task)
            results[index] = point
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for index, point in pool.map(
                _evaluate_point, tasks, chunksize=max(1, len(tasks) // (8 * workers))
            ):
                results[index] = point
    return results  # type: ignore[return-value]


@dataclass
class SpreadProfile:
    """Rightmost occupied site over time with a ballistic (linear) fit."""

    times: np.ndarray
    front_position: np.ndarray
    fitted_speed: float
    fit_r2: float


def spread_profile(
    traj: Trajectory, front_threshold: float = DEFAULT_FRONT_THRESHOLD
) -> SpreadProfile:
    """Track the front (rightmost site with P > threshold) and fit its speed.

    The fit uses only samples recorded before the boundary-leak monitor
    tripped; raises FrontReachedBoundary when fewer than 10 clean samples
    exist.
    """
    trip = traj.leak_trip_index()
    n_clean = traj.n_samples if trip is None else trip
    if n_clean < 10:
        raise FrontReachedBoundary(
            f"only {n_clean} samples precede the boundary-leak flag"
        )
    prob = np.abs(traj.values[:n_clean]) ** 2
    occupied = prob > front_threshold
    front = np.where(
        occupied.any(axis=1), occupied.shape[1] - 1 - occupied[:, ::-1].argmax(axis=1), 0
    ).astype(float)
    times = traj.times[:n_clean]
    slope, intercept = np.polyfit(times, front, 1)
    residuals = front - (slope * times + intercept)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((front - front.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return SpreadProfile(
        times=times,
        front_position=front,
        fitted_speed=float(slope),
        fit_r2=r2,
    )


@dataclass(frozen=True)
class ConvergencePoint:
    t: float
    p_sim: float
    p_limit: float


def convergence_study(
    couplings: HoppingPair,
    checkpoints: list[float],
    n_sites: int = 500,
    sample_spacing: float = 0.1,
) -> list[ConvergencePoint]:
    """P(X_t = 0) from a reference run at each checkpoint vs its limit."""
    if any(t < 0 for t in checkpoints):
        raise ValueError("checkpoints must be >= 0")
    if sorted(checkpoints) != list(checkpoints):
        raise ValueError("checkpoints must be increasing")
    p_limit = limit_measure(0, couplings)
    t_max = max(checkpoints)
    if t_max == 0.0:
        return [ConvergencePoint(0.0, 1.0, p_limit)]
    topology = LatticeTopology(LatticeKind.HALF_LINE_TRUNCATED, n_sites)
    config = WalkConfig(
        couplings=couplings,
        topology=topology,
        t_max=t_max,
        dt=sample_spacing,
        integrator=Integrator.REFERENCE,
        record_stride=1,
    )
    traj = evolve(config)
    out = []
    for t in checkpoints:
        k = int(np.argmin(np.abs(traj.times - t)))
        p_sim = float(np.abs(traj.values[k, 0]) ** 2)
        out.append(ConvergencePoint(float(traj.times[k]), p_sim, p_limit))
    return out
