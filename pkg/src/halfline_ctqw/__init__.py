"""Continuous-time quantum walk on the half line with 2-periodic hopping.

The walk runs on sites {0, 1, 2, ...} under i d(psi)/dt = H psi, where H is
tridiagonal with zero diagonal and couplings alternating gamma0, gamma1
along the chain.  Starting from the walker localized at the edge, the
long-time probability P(X_t = x) converges to a geometric measure on even
sites when |gamma0| < |gamma1| and vanishes everywhere otherwise, which the
package exposes both as closed formulas (Laplace-domain transfer matrices
and the final value theorem) and as time-domain simulation (the explicit
Euler scheme and a norm-preserving Chebyshev reference propagator).

Subpackages by task:

- `hamiltonian`: the lattice operator and its O(N) application.
- `propagator`: time evolution, trajectories, probability profiles.
- `closed_form`: q_pm(s), transfer-matrix powers, F_x(s), long-time
  limits, phase classification, invariant states.
- `laplace`: numerical Laplace transforms of trajectories, final-value
  extrapolation, tail averages.
- `experiments`: localization phase sweeps, front tracking, convergence.
- `cli`: `halfline-ctqw` command-line interface writing CSV/JSON artifacts.
"""

from .closed_form import (
    InvariantState,
    LimitMeasure,
    Phase,
    RecurrenceReport,
    SpectralPair,
    TransferMatrices,
    classify_phase,
    invariant_state,
    laplace_amplitude,
    limit_measure,
    limiting_amplitude,
    normalized_invariant_state,
    spectral_pair,
    transfer_matrices,
    transfer_power_closed_form,
    verify_laplace_recurrences,
)
from .experiments import (
    ConvergencePoint,
    Observation,
    PhasePoint,
    SpreadProfile,
    convergence_study,
    default_grid,
    default_sweep_budget,
    spread_profile,
    sweep_phase_diagram,
)
from .hamiltonian import (
    HamiltonianOperator,
    HoppingPair,
    LatticeKind,
    LatticeTopology,
    build_hamiltonian,
    half_line_operator,
)
from .laplace import (
    FinalValueEstimate,
    LaplaceSample,
    default_tail_window,
    final_value_estimate,
    numeric_laplace,
    tail_average_probability,
)
from .propagator import (
    AmplitudeField,
    Integrator,
    Trajectory,
    WalkConfig,
    euler_step,
    evolve,
    expm_apply,
    probability_distribution,
    reference_config,
)
from .state import delta_at_origin

__version__ = "0.1.0"

__all__ = [
    "AmplitudeField",
    "ConvergencePoint",
    "FinalValueEstimate",
    "HamiltonianOperator",
    "HoppingPair",
    "Integrator",
    "InvariantState",
    "LaplaceSample",
    "LatticeKind",
    "LatticeTopology",
    "LimitMeasure",
    "Observation",
    "Phase",
    "PhasePoint",
    "RecurrenceReport",
    "SpectralPair",
    "SpreadProfile",
    "Trajectory",
    "TransferMatrices",
    "WalkConfig",
    "build_hamiltonian",
    "classify_phase",
    "convergence_study",
    "default_grid",
    "default_sweep_budget",
    "default_tail_window",
    "delta_at_origin",
    "euler_step",
    "evolve",
    "expm_apply",
    "final_value_estimate",
    "half_line_operator",
    "invariant_state",
    "laplace_amplitude",
    "limit_measure",
    "limiting_amplitude",
    "normalized_invariant_state",
    "numeric_laplace",
    "probability_distribution",
    "reference_config",
    "spectral_pair",
    "spread_profile",
    "sweep_phase_diagram",
    "tail_average_probability",
    "transfer_matrices",
    "transfer_power_closed_form",
    "verify_laplace_recurrences",
]
