"""Exception types shared across the package."""


class WalkError(Exception):
    """Base class for every error raised by this package."""


class ZeroCoupling(WalkError):
    """A hopping coupling is zero; the walk is undefined."""


class BadSize(WalkError):
    """Lattice size is not an even integer >= 4."""


class SizeMismatch(WalkError):
    """State length does not match the operator's site count."""


class NonFiniteDetected(WalkError):
    """An amplitude became inf or nan during time evolution."""


class NonPositiveS(WalkError):
    """Laplace variable must satisfy s > 0."""


class ZeroPhi0(WalkError):
    """Invariant state requires a nonzero amplitude at site 0."""


class NotSquareSummable(WalkError):
    """Normalization requested for a state with infinite total mass."""


class NonUniformGrid(WalkError):
    """Trajectory samples are not on a uniform time grid."""


class TailDominates(WalkError):
    """Truncation tail bound exceeds 10% of the Laplace value."""


class EmptyWindow(WalkError):
    """No recorded samples fall inside the requested time window."""


class FrontReachedBoundary(WalkError):
    """Boundary leak tripped before enough clean samples existed."""


class ZeroCouplingInGrid(WalkError):
    """A sweep grid point has a zero coupling (reported per point)."""


class ConfigError(WalkError):
    """Invalid run configuration; message names the offending field."""
