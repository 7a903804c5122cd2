"""Spatially 2-periodic tridiagonal Hamiltonian on a finite chain.

The operator is real symmetric with zero diagonal.  Bond k couples sites k
and k+1 and carries gamma0 when k is even, gamma1 when k is odd, so the
matrix rows read

    (H psi)(0)    = gamma0 psi(1)
    (H psi)(2n)   = gamma1 psi(2n-1) + gamma0 psi(2n+1)
    (H psi)(2n+1) = gamma0 psi(2n)   + gamma1 psi(2n+2)
    (H psi)(N-1)  = gamma0 psi(N-2)          (N even)

The state evolves under i d(psi)/dt = H psi.  A chain of even length N >= 4
serves both as the finite-line model and as the truncation used to
approximate the half line; the two topologies share the same operator and
differ only in intent (and in whether boundary leakage is a concern).

Only the bond array is stored; `apply` is O(N) and is the hot path of the
time steppers.  The dense matrix form exists solely in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BadSize, SizeMismatch, ZeroCoupling
from .state import AmplitudeField


@dataclass(frozen=True)
class HoppingPair:
    """The two real couplings defining the 2-periodic hopping pattern."""

    gamma0: float
    gamma1: float

    def __post_init__(self):
        if self.gamma0 == 0.0 or self.gamma1 == 0.0:
            raise ZeroCoupling(
                f"couplings must be nonzero, got gamma0={self.gamma0}, "
                f"gamma1={self.gamma1}"
            )
        if not (np.isfinite(self.gamma0) and np.isfinite(self.gamma1)):
            raise ZeroCoupling("couplings must be finite real numbers")

    @property
    def ratio(self) -> float:
        """gamma0 / gamma1, the parameter controlling localization."""
        return self.gamma0 / self.gamma1


class LatticeKind(Enum):
    HALF_LINE_TRUNCATED = "half_line_truncated"
    FINITE_LINE = "finite_line"


@dataclass(frozen=True)
class LatticeTopology:
    """Chain of `n_sites` sites; the kind records intent, not structure."""

    kind: LatticeKind
    n_sites: int

    def __post_init__(self):
        if self.n_sites < 4 or self.n_sites % 2 != 0:
            raise BadSize(
                f"n_sites must be an even integer >= 4, got {self.n_sites}"
            )


@dataclass(frozen=True)
class HamiltonianOperator:
    """Tridiagonal operator stored as its off-diagonal bond sequence."""

    couplings: HoppingPair
    topology: LatticeTopology
    bonds: np.ndarray  # length N-1; bonds[k] couples sites k and k+1

    @property
    def n_sites(self) -> int:
        return self.topology.n_sites

    @property
    def spectral_bound(self) -> float:
        """Upper bound on |eigenvalue| (Gershgorin row sum)."""
        return abs(self.couplings.gamma0) + abs(self.couplings.gamma1)

    def apply_values(self, values: np.ndarray, out: np.ndarray | None = None) -> np.ndarray:
        """H @ values on a raw array; `out` may be preallocated (not aliased)."""
        n = self.n_sites
        if values.shape != (n,):
            raise SizeMismatch(
                f"state has length {values.shape}, operator expects {n}"
            )
        if out is None:
            out = np.zeros(n, dtype=np.complex128)
        else:
            out[-1] = 0.0
        np.multiply(self.bonds, values[1:], out=out[:-1])
        out[1:] += self.bonds * values[:-1]
        return out

    def apply(self, psi: AmplitudeField) -> AmplitudeField:
        """Return H psi, i.e. the right-hand side of i d(psi)/dt = H psi."""
        return AmplitudeField(self.apply_values(psi.values), psi.time)


def build_hamiltonian(couplings: HoppingPair, topology: LatticeTopology) -> HamiltonianOperator:
    """Assemble the alternating bond sequence gamma0, gamma1, gamma0, ..."""
    n = topology.n_sites
    bonds = np.empty(n - 1, dtype=np.float64)
    bonds[0::2] = couplings.gamma0
    bonds[1::2] = couplings.gamma1
    return HamiltonianOperator(couplings, topology, bonds)


def half_line_operator(couplings: HoppingPair, n_sites: int) -> HamiltonianOperator:
    """Convenience constructor for the truncated half-line operator."""
    return build_hamiltonian(
        couplings, LatticeTopology(LatticeKind.HALF_LINE_TRUNCATED, n_sites)
    )
