"""Numerical Laplace transforms of simulated trajectories.

These estimators bridge the time-domain simulation and the closed-form
Laplace amplitudes: F_x(s) = integral_0^inf e^{-st} psi_t(x) dt is
approximated by composite Simpson quadrature over the recorded window
[0, T], with the neglected tail bounded by e^{-sT}/s (since |psi| <= 1 for
norm-preserving runs).  The final value theorem is realized numerically by
extrapolating s * F_x(s) along a grid of shrinking s.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyWindow, NonPositiveS, NonUniformGrid, TailDominates
from .propagator import Trajectory

DEFAULT_S_GRID = (1e-1, 1e-2, 1e-3)
# Largest admissible tail contribution to s*F on the default grid; values
# of s whose e^{-sT} exceeds this are dropped (trajectory too short).
DEFAULT_TAIL_CAP = 0.05


@dataclass(frozen=True)
class LaplaceSample:
    """One quadrature estimate of F_x(s) with its truncation error bar."""

    s: float
    x: int
    value: complex
    truncation_t: float
    tail_bound: float  # e^{-s T} / s, from |psi| <= 1


def _uniform_spacing(times: np.ndarray) -> float:
    if times.size < 2:
        return 0.0
    steps = np.diff(times)
    h = float(steps[0])
    if np.max(np.abs(steps - h)) > 1e-9 * max(h, 1.0):
        raise NonUniformGrid("trajectory samples are not uniformly spaced")
    return h


def _simpson_uniform(f: np.ndarray, h: float) -> complex:
    """Composite Simpson on a uniform grid; odd leftover interval by trapezoid."""
    n_int = f.size - 1
    if n_int <= 0:
        return 0.0 + 0.0j
    total = 0.0 + 0.0j
    pairs = n_int // 2
    if pairs > 0:
        m = 2 * pairs
        total += h / 3.0 * (
            f[0] + f[m] + 4.0 * np.sum(f[1:m:2]) + 2.0 * np.sum(f[2:m:2])
        )
    if n_int % 2 == 1:
        total += h / 2.0 * (f[-2] + f[-1])
    return complex(total)


def numeric_laplace(traj: Trajectory, s: float, x: int) -> LaplaceSample:
    """Quadrature estimate of F_x(s) from a uniformly sampled trajectory."""
    if not (s > 0.0):
        raise NonPositiveS(f"Laplace variable must be > 0, got s={s}")
    h = _uniform_spacing(traj.times)
    integrand = np.exp(-s * traj.times) * traj.site_history(x)
    value = _simpson_uniform(integrand, h)
    t_end = float(traj.times[-1])
    return LaplaceSample(
        s=s,
        x=x,
        value=value,
        truncation_t=t_end,
        tail_bound=float(np.exp(-s * t_end) / s),
    )


@dataclass(frozen=True)
class FinalValueEstimate:
    """Extrapolated limit of s F_x(s) as s -> 0+ with a spread estimate."""

    value: complex
    uncertainty: float
    samples: tuple[LaplaceSample, ...]


def _extrapolate_to_zero(s_values: np.ndarray, v_values: np.ndarray) -> complex:
    """Neville polynomial extrapolation of v(s) to s = 0."""
    work = v_values.astype(np.complex128).copy()
    m = s_values.size
    for level in range(1, m):
        for i in range(m - level):
            s_i, s_j = s_values[i], s_values[i + level]
            work[i] = (s_i * work[i + 1] - s_j * work[i]) / (s_i - s_j)
    return complex(work[0])


def final_value_estimate(
    traj: Trajectory, x: int, s_grid: list[float] | None = None
) -> FinalValueEstimate:
    """Estimate lim_{t->inf} psi_t(x) as lim_{s->0+} s F_x(s).

    With an explicit `s_grid` (positive, decreasing), raises TailDominates
    when the truncation tail bound e^{-sT}/s exceeds 10% of |F_x(s)| at the
    smallest s.  The default grid 1e-1, 1e-2, 1e-3 is pre-filtered by the
    trajectory length: s values whose tail contribution to s*F exceeds
    DEFAULT_TAIL_CAP are dropped.
    """
    t_end = float(traj.times[-1])
    if s_grid is None:
        usable = [s for s in DEFAULT_S_GRID if np.exp(-s * t_end) <= DEFAULT_TAIL_CAP]
        if not usable:
            raise TailDominates(
                f"trajectory span T={t_end} too short for the default s grid"
            )
        samples = [numeric_laplace(traj, s, x) for s in usable]
    else:
        if any(s <= 0.0 for s in s_grid):
            raise NonPositiveS("all s values must be > 0")
        samples = [numeric_laplace(traj, s, x) for s in sorted(s_grid, reverse=True)]
        smallest = samples[-1]
        if smallest.tail_bound > 0.1 * abs(smallest.value):
            raise TailDominates(
                f"tail bound {smallest.tail_bound:.3g} exceeds 10% of "
                f"|F_x({smallest.s})| = {abs(smallest.value):.3g}; "
                f"trajectory too short for s = {smallest.s}"
            )

    s_values = np.array([smp.s for smp in samples])
    v_values = np.array([smp.s * smp.value for smp in samples])
    value = _extrapolate_to_zero(s_values, v_values)
    tail = float(max(np.exp(-smp.s * t_end) for smp in samples))
    if len(samples) > 1:
        shorter = _extrapolate_to_zero(s_values[1:], v_values[1:])
        spread = abs(value - shorter)
    else:
        spread = abs(value - v_values[0])
    return FinalValueEstimate(
        value=value, uncertainty=spread + tail, samples=tuple(samples)
    )


def default_tail_window(traj: Trajectory) -> tuple[float, float]:
    """Final 20% of the recorded span, the default averaging window."""
    t_end = float(traj.times[-1])
    return 0.8 * t_end, t_end


def tail_average_probability(
    traj: Trajectory, x: int, window: tuple[float, float]
) -> float:
    """Mean of |psi_t(x)|^2 over recorded samples with t in [t_lo, t_hi]."""
    t_lo, t_hi = window
    mask = (traj.times >= t_lo) & (traj.times <= t_hi)
    if not np.any(mask):
        raise EmptyWindow(f"no recorded samples in window [{t_lo}, {t_hi}]")
    return float(np.mean(np.abs(traj.site_history(x)[mask]) ** 2))
