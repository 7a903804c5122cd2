"""Laplace-domain closed forms and long-time limits for the half-line walk.

With F_x(s) the Laplace transform of the amplitude at site x, the
Schroedinger equations become position recurrences that pairs of 2x2
transfer matrices propagate two sites at a time.  The eigenvalues of the
two-cell transfer matrix,

    q_pm(s) = -( sqrt(s^2 + (g0+g1)^2) +- sqrt(s^2 + (g0-g1)^2) )^2 / (4 g0 g1),

satisfy q_plus q_minus = 1 with |q_minus| < 1 for s > 0, and boundedness of
F_x forces the q_plus branch out of the solution.  The surviving branch
gives

    F_{2n}(s)   = (g1 + g0 q_minus) / (s g1) * q_minus^n
    F_{2n+1}(s) = (i / g1) * q_minus^(n+1)

and, through the final value theorem (lim_{t->inf} psi = lim_{s->0+} s F),
the long-time amplitudes: zero everywhere when |g0| >= |g1|, and a
geometric profile on even sites with ratio -g0/g1 when |g0| < |g1|.  The
squared limits form a measure of total mass 1 - (g0/g1)^2 < 1, so the walk
localizes exactly when |g0| < |g1|.

Numerical note: q_minus is evaluated as -4 g0 g1 / (A + B)^2 where
A, B are the two radicals.  This is algebraically identical to the defining
expression (A - B = 4 g0 g1 / (A + B)) and avoids the subtractive
cancellation of A - B as s -> 0, which drives the final-value checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NonPositiveS, NotSquareSummable, ZeroPhi0
from .hamiltonian import HoppingPair
from .state import AmplitudeField


@dataclass(frozen=True)
class SpectralPair:
    """Transfer-matrix eigenvalues q_pm and discriminant p at one s > 0."""

    s: float
    q_plus: float
    q_minus: float
    p: float


def _radicals(s: float, couplings: HoppingPair) -> tuple[float, float]:
    g0, g1 = couplings.gamma0, couplings.gamma1
    a = np.hypot(s, g0 + g1)
    b = np.hypot(s, g0 - g1)
    return float(a), float(b)


def _require_positive_s(s: float) -> None:
    if not (s > 0.0):
        raise NonPositiveS(f"Laplace variable must be > 0, got s={s}")


def spectral_pair(s: float, couplings: HoppingPair) -> SpectralPair:
    """q_pm(s) and p(s) = {s^2+(g0+g1)^2}{s^2+(g0-g1)^2} for s > 0."""
    _require_positive_s(s)
    a, b = _radicals(s, couplings)
    four_g = 4.0 * couplings.gamma0 * couplings.gamma1
    q_minus = -four_g / (a + b) ** 2
    q_plus = -((a + b) ** 2) / four_g
    p = (a * a) * (b * b)
    return SpectralPair(s=s, q_plus=q_plus, q_minus=q_minus, p=p)


@dataclass(frozen=True)
class TransferMatrices:
    """The two 2x2 matrices stepping the Laplace recurrence by one site.

    m0 advances (F_{2n-1}, F_{2n-2}) -> (F_{2n}, F_{2n-1}); m1 advances
    (F_{2n}, F_{2n-1}) -> (F_{2n+1}, F_{2n}).  det(m0) = g0/g1,
    det(m1) = g1/g0, so the two-cell product m1 @ m0 has determinant 1.
    """

    m0: np.ndarray
    m1: np.ndarray


def transfer_matrices(s: float, couplings: HoppingPair) -> TransferMatrices:
    _require_positive_s(s)
    g0, g1 = couplings.gamma0, couplings.gamma1
    m0 = np.array([[1j * s / g1, -g0 / g1], [1.0, 0.0]], dtype=np.complex128)
    m1 = np.array([[1j * s / g0, -g1 / g0], [1.0, 0.0]], dtype=np.complex128)
    return TransferMatrices(m0=m0, m1=m1)


def transfer_power_closed_form(s: float, couplings: HoppingPair, n: int) -> np.ndarray:
    """(m1 @ m0)^n from the eigenvalue expansion, without iterated products."""
    _require_positive_s(s)
    if n < 0:
        raise ValueError("power must be a nonnegative integer")
    g0, g1 = couplings.gamma0, couplings.gamma1
    pair = spectral_pair(s, couplings)
    a, b = _radicals(s, couplings)
    sqrt_p = a * b  # positive root
    qp_n = pair.q_plus ** n
    qm_n = pair.q_minus ** n
    total = qp_n + qm_n
    diff = qp_n - qm_n
    asym = (s * s - g0 * g0 + g1 * g1) / sqrt_p
    out = np.empty((2, 2), dtype=np.complex128)
    out[0, 0] = 0.5 * (total + asym * diff)
    out[0, 1] = 1j * s * g0 / sqrt_p * diff
    out[1, 0] = -1j * s * g0 / sqrt_p * diff
    out[1, 1] = 0.5 * (total - asym * diff)
    return out


def laplace_amplitude(x: int, s: float, couplings: HoppingPair) -> complex:
    """F_x(s) for site x >= 0 and s > 0 (even sites real, odd imaginary)."""
    _require_positive_s(s)
    if x < 0:
        raise ValueError("site index must be >= 0")
    g0, g1 = couplings.gamma0, couplings.gamma1
    q_minus = spectral_pair(s, couplings).q_minus
    if x % 2 == 0:
        n = x // 2
        return complex((g1 + g0 * q_minus) / (s * g1) * q_minus**n)
    n = (x - 1) // 2
    return complex(1j / g1 * q_minus ** (n + 1))


@dataclass(frozen=True)
class RecurrenceReport:
    """Residuals of the closed-form F_x under the position recurrences."""

    s: float
    n_max: int
    rows_checked: int
    max_residual: float
    worst_site: int


def verify_laplace_recurrences(s: float, couplings: HoppingPair, n_max: int) -> RecurrenceReport:
    """Substitute the closed forms into the transformed equations.

    Checks the rows for sites x = 0 .. 2*n_max:

        i (s F_0 - 1)  = g0 F_1
        i s F_{2n}     = g1 F_{2n-1} + g0 F_{2n+1}     (1 <= n <= n_max)
        i s F_{2n+1}   = g0 F_{2n}   + g1 F_{2n+2}     (0 <= n <= n_max-1)

    each as a relative residual |lhs - rhs| / max(|lhs|, |rhs|); n_max = 0
    checks only the site-0 row.
    """
    _require_positive_s(s)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    g0, g1 = couplings.gamma0, couplings.gamma1
    f = [laplace_amplitude(x, s, couplings) for x in range(2 * n_max + 2)]

    def residual(lhs: complex, rhs: complex) -> float:
        scale = max(abs(lhs), abs(rhs))
        return abs(lhs - rhs) / scale if scale > 0.0 else 0.0

    worst = residual(1j * (s * f[0] - 1.0), g0 * f[1])
    worst_site = 0
    rows = 1
    for x in range(1, 2 * n_max + 1):
        lhs = 1j * s * f[x]
        if x % 2 == 0:
            rhs = g1 * f[x - 1] + g0 * f[x + 1]
        else:
            rhs = g0 * f[x - 1] + g1 * f[x + 1]
        r = residual(lhs, rhs)
        rows += 1
        if r > worst:
            worst, worst_site = r, x
    return RecurrenceReport(
        s=s, n_max=n_max, rows_checked=rows, max_residual=worst, worst_site=worst_site
    )


class Phase(Enum):
    LOCALIZED = "localized"
    DELOCALIZED = "delocalized"


def classify_phase(couplings: HoppingPair) -> Phase:
    """Localized iff |gamma0| < |gamma1| strictly; the diagonal delocalizes."""
    if abs(couplings.gamma0) < abs(couplings.gamma1):
        return Phase.LOCALIZED
    return Phase.DELOCALIZED


def limiting_amplitude(x: int, couplings: HoppingPair) -> complex:
    """lim_{t->inf} psi_t(x): geometric on even sites when localized, else 0."""
    if x < 0:
        raise ValueError("site index must be >= 0")
    if x % 2 == 1 or classify_phase(couplings) is Phase.DELOCALIZED:
        return 0.0 + 0.0j
    r = couplings.ratio
    n = x // 2
    return complex((1.0 - r * r) * (-r) ** n)


def limit_measure(x: int, couplings: HoppingPair) -> float:
    """lim_{t->inf} P(X_t = x), the squared modulus of the limiting amplitude."""
    return abs(limiting_amplitude(x, couplings)) ** 2


@dataclass(frozen=True)
class LimitMeasure:
    """Long-time site measure; evaluates lazily through the closed formulas."""

    couplings: HoppingPair

    @property
    def total_mass(self) -> float:
        """Sum over all sites: 1 - (g0/g1)^2 when localized, else 0 (< 1)."""
        if classify_phase(self.couplings) is Phase.DELOCALIZED:
            return 0.0
        r = self.couplings.ratio
        return 1.0 - r * r

    def amplitude(self, x: int) -> complex:
        return limiting_amplitude(x, self.couplings)

    def probability(self, x: int) -> float:
        return limit_measure(x, self.couplings)

    def truncated_mass(self, cutoff: float = 1e-15) -> float:
        """Partial sum of the measure until the terms drop below `cutoff`."""
        total = 0.0
        x = 0
        while True:
            term = self.probability(x)
            total += term
            if x > 0 and term < cutoff:
                break
            x += 2
            if x > 100_000:  # delocalized phase: everything is 0
                break
        return total


@dataclass(frozen=True)
class InvariantState:
    """Stationary solution of the dynamics: H phi = 0 on the half line.

    phi(2n) = phi0 * (-g0/g1)^n and phi(2n+1) = 0; square-summable exactly
    when |g0| < |g1|, with total mass |phi0|^2 / (1 - (g0/g1)^2).
    """

    couplings: HoppingPair
    phi0: complex

    def __post_init__(self):
        if self.phi0 == 0:
            raise ZeroPhi0("invariant state requires phi0 != 0")

    @property
    def is_square_summable(self) -> bool:
        return abs(self.couplings.gamma0) < abs(self.couplings.gamma1)

    @property
    def total_mass(self) -> float:
        if not self.is_square_summable:
            raise NotSquareSummable(
                "total mass diverges unless |gamma0| < |gamma1|"
            )
        r = self.couplings.ratio
        return abs(self.phi0) ** 2 / (1.0 - r * r)

    def as_field(self, n_sites: int, time: float = 0.0) -> AmplitudeField:
        values = np.zeros(n_sites, dtype=np.complex128)
        amp = complex(self.phi0)
        ratio = -self.couplings.ratio
        for x in range(0, n_sites, 2):
            values[x] = amp
            amp *= ratio
        return AmplitudeField(values, time)


def invariant_state(couplings: HoppingPair, phi0: complex, n_sites: int) -> AmplitudeField:
    """The invariant state truncated to `n_sites` sites."""
    return InvariantState(couplings, phi0).as_field(n_sites)


def normalized_invariant_state(couplings: HoppingPair, n_sites: int) -> AmplitudeField:
    """Invariant state with unit total mass on the half line.

    Picks phi0 = sqrt(1 - (g0/g1)^2) > 0; only exists for |g0| < |g1|.
    """
    if abs(couplings.gamma0) >= abs(couplings.gamma1):
        raise NotSquareSummable(
            "normalized invariant state exists only for |gamma0| < |gamma1|"
        )
    r = couplings.ratio
    phi0 = float(np.sqrt(1.0 - r * r))
    return invariant_state(couplings, phi0, n_sites)
