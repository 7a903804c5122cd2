"""Deterministic CSV and JSON writers for every run artifact.

All floats are written in scientific notation with 17 significant digits
and '\n' line endings, so identical configs produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterable

import numpy as np

from .closed_form import LimitMeasure, Phase
from .experiments import ConvergencePoint, PhasePoint
from .hamiltonian import HoppingPair
from .laplace import LaplaceSample
from .propagator import Trajectory
from .state import AmplitudeField


def fmt(value: float) -> str:
    """Fixed scientific formatting: 17 significant digits."""
    return f"{value:.16e}"


def write_csv(path: Path, header: list[str], rows: Iterable[list[str]]) -> None:
    with open(path, "w", newline="") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(row) + "\n")


def sha256_of(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_trajectory_csv(traj: Trajectory, path: Path) -> None:
    """Columns (t, x, re, im, prob), one row per recorded sample and site."""

    def rows():
        for k in range(traj.n_samples):
            t = fmt(float(traj.times[k]))
            psi = traj.values[k]
            prob = np.abs(psi) ** 2
            for x in range(psi.size):
                yield [t, str(x), fmt(psi[x].real), fmt(psi[x].imag), fmt(prob[x])]

    write_csv(path, ["t", "x", "re", "im", "prob"], rows())


def trajectory_metadata(traj: Trajectory) -> dict:
    cfg = traj.config
    return {
        "gamma0": cfg.couplings.gamma0,
        "gamma1": cfg.couplings.gamma1,
        "n_sites": cfg.topology.n_sites,
        "topology": cfg.topology.kind.value,
        "dt": cfg.dt,
        "t_max": cfg.t_max,
        "integrator": cfg.integrator.value,
        "record_stride": cfg.resolved_stride,
        "n_samples": traj.n_samples,
        "norm_initial": float(traj.norm_log[0]),
        "norm_final": float(traj.norm_log[-1]),
        "norm_drift": traj.norm_drift,
        "boundary_leak_max": traj.max_boundary_leak,
        "boundary_leak_flagged": traj.boundary_leak_flagged,
    }


def write_json(payload: dict, path: Path) -> None:
    with open(path, "w", newline="") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def write_limit_csv(couplings: HoppingPair, cutoff: int, path: Path) -> None:
    """Columns (x, limit_amplitude_re, limit_amplitude_im, limit_measure)."""
    measure = LimitMeasure(couplings)

    def rows():
        for x in range(cutoff):
            amp = measure.amplitude(x)
            yield [str(x), fmt(amp.real), fmt(amp.imag), fmt(measure.probability(x))]

    write_csv(
        path,
        ["x", "limit_amplitude_re", "limit_amplitude_im", "limit_measure"],
        rows(),
    )


def write_oracle_csv(
    entries: list[tuple[LaplaceSample, complex]], path: Path
) -> None:
    """Columns (s, x, numeric_re, numeric_im, closed_re, closed_im,
    abs_error, tail_bound) for (quadrature, closed-form) pairs."""

    def rows():
        for sample, closed in entries:
            yield [
                fmt(sample.s),
                str(sample.x),
                fmt(sample.value.real),
                fmt(sample.value.imag),
                fmt(closed.real),
                fmt(closed.imag),
                fmt(abs(sample.value - closed)),
                fmt(sample.tail_bound),
            ]

    write_csv(
        path,
        [
            "s",
            "x",
            "numeric_re",
            "numeric_im",
            "closed_re",
            "closed_im",
            "abs_error",
            "tail_bound",
        ],
        rows(),
    )


def write_sweep_csv(points: list[PhasePoint], path: Path) -> None:
    """Columns (gamma0, gamma1, predicted, observed, indicator_value);
    rejected grid points carry the label 'rejected'."""

    def label(value: Phase | None, point: PhasePoint) -> str:
        if point.note is not None and point.predicted is None:
            return "rejected"
        return value.value if value is not None else "rejected"

    def rows():
        for p in points:
            yield [
                fmt(p.gamma0),
                fmt(p.gamma1),
                label(p.predicted, p),
                label(p.observed, p),
                fmt(p.indicator_value),
            ]

    write_csv(
        path, ["gamma0", "gamma1", "predicted", "observed", "indicator_value"], rows()
    )


def write_convergence_csv(points: list[ConvergencePoint], path: Path) -> None:
    write_csv(
        path,
        ["t", "p_sim", "p_limit"],
        ([fmt(p.t), fmt(p.p_sim), fmt(p.p_limit)] for p in points),
    )


def write_field_csv(field: AmplitudeField, path: Path) -> None:
    """Columns (x, re, im, prob) for a single amplitude field."""
    prob = field.probability()

    def rows():
        for x in range(field.n_sites):
            v = field.values[x]
            yield [str(x), fmt(v.real), fmt(v.imag), fmt(prob[x])]

    write_csv(path, ["x", "re", "im", "prob"], rows())
