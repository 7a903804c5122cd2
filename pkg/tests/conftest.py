"""Shared fixtures: long reference trajectories reused across test modules."""

import pytest

from halfline_ctqw import (
    HoppingPair,
    Integrator,
    LatticeKind,
    LatticeTopology,
    WalkConfig,
    evolve,
)

N_SITES = 500


def topology(n_sites: int = N_SITES) -> LatticeTopology:
    return LatticeTopology(LatticeKind.HALF_LINE_TRUNCATED, n_sites)


@pytest.fixture(scope="session")
def couplings_localized() -> HoppingPair:
    return HoppingPair(1.0 / 3.0, 0.5)


@pytest.fixture(scope="session")
def couplings_delocalized() -> HoppingPair:
    return HoppingPair(0.5, 1.0 / 3.0)


@pytest.fixture(scope="session")
def ref_traj_localized_t500(couplings_localized):
    """Reference run to t=500 at sample spacing 0.1 (the long-time workhorse)."""
    config = WalkConfig(
        couplings=couplings_localized,
        topology=topology(),
        t_max=500.0,
        dt=1e-4,
        integrator=Integrator.REFERENCE,
        record_stride=1000,
    )
    return evolve(config)


@pytest.fixture(scope="session")
def ref_traj_delocalized_t500(couplings_delocalized):
    config = WalkConfig(
        couplings=couplings_delocalized,
        topology=topology(),
        t_max=500.0,
        dt=1e-4,
        integrator=Integrator.REFERENCE,
        record_stride=1000,
    )
    return evolve(config)


@pytest.fixture(scope="session")
def ref_traj_localized_t50(couplings_localized):
    """Reference run to t=50 at sample spacing 0.05 (quadrature checks)."""
    config = WalkConfig(
        couplings=couplings_localized,
        topology=topology(),
        t_max=50.0,
        dt=1e-4,
        integrator=Integrator.REFERENCE,
        record_stride=500,
    )
    return evolve(config)
