"""Walk state: one complex amplitude per lattice site at a fixed time."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass
class AmplitudeField:
    """Complex amplitudes over the sites 0..N-1 at time `time`.

    Treated as immutable once recorded into a trajectory.
    """

    values: np.ndarray
    time: float = 0.0

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.ndim != 1:
            raise ValueError("amplitude field must be one-dimensional")

    @property
    def n_sites(self) -> int:
        return self.values.size

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def probability(self) -> np.ndarray:
        """P(x) = |psi(x)|^2 per site; sums to the squared norm."""
        return np.abs(self.values) ** 2


def delta_at_origin(n_sites: int, time: float = 0.0) -> AmplitudeField:
    """The walker localized at the edge: psi(0) = 1, psi(x) = 0 elsewhere."""
    values = np.zeros(n_sites, dtype=np.complex128)
    values[0] = 1.0
    return AmplitudeField(values, time)
