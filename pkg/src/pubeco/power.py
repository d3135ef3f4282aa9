"""Two-sample t-test machinery: noncentral-t CDF, power, and sample size.

All sample sizes are continuous totals (two equal groups of n/2, so the
degrees of freedom n - 2 are real-valued).  ``prob_positive`` is the full
two-sided probability of a significant result and equals alpha exactly under
the null; ``prob_positive_upper`` counts only the rejection tail on the side
of the true effect, the convention of a-priori power calculations, and is
what the strategy grid inverts for its n(pwr) mapping.
"""

import math
from dataclasses import dataclass

from . import kernels
from .errors import DomainError, UnattainablePowerError

#: smallest admissible total sample size (two observations per group)
N_FLOOR = 4.0


@dataclass(frozen=True)
class TestSpec:
    """Effect size, observation noise, and significance level of one test."""

    delta: float
    sigma: float
    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"sigma must be positive and finite, got {self.sigma}")
        if not (math.isfinite(self.alpha) and 0 < self.alpha < 1):
            raise DomainError(f"alpha must be in (0, 1), got {self.alpha}")
        if not (math.isfinite(self.delta) and self.delta >= 0):
            raise DomainError(f"delta must be >= 0 and finite, got {self.delta}")


def noncentral_t_cdf(x: float, df: float, ncp: float) -> float:
    """P(T <= x) for T noncentral-t with real df > 0."""
    for name, value in (("x", x), ("df", df), ("ncp", ncp)):
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value}")
    if df <= 0:
        raise DomainError(f"df must be > 0, got {df}")
    return kernels.nct_cdf(float(x), float(df), float(ncp))


def _check_n(n: float) -> float:
    if not math.isfinite(n):
        raise DomainError(f"n must be finite, got {n}")
    if n <= 2:
        raise DomainError(f"n must exceed 2 (df = n - 2 > 0), got {n}")
    return float(n)


def prob_positive(n: float, spec: TestSpec) -> float:
    """Two-sided probability of a significant result at total sample size n."""
    n = _check_n(n)
    return kernels.positive_prob(n, spec.delta, spec.sigma, spec.alpha, True)


def prob_positive_upper(n: float, spec: TestSpec) -> float:
    """Probability of rejecting on the side of the true effect only."""
    n = _check_n(n)
    return kernels.positive_prob(n, spec.delta, spec.sigma, spec.alpha, False)


def _solve(pwr: float, spec: TestSpec, two_sided: bool, n_floor: float) -> float:
    if not math.isfinite(pwr):
        raise DomainError(f"pwr must be finite, got {pwr}")
    if spec.delta <= 0:
        raise DomainError("sample size inversion requires delta > 0")
    if pwr >= 1:
        raise UnattainablePowerError(f"power {pwr} is not attainable (must be < 1)")
    floor_pwr = kernels.positive_prob(
        n_floor, spec.delta, spec.sigma, spec.alpha, two_sided
    )
    if pwr < floor_pwr - 1e-12:
        raise UnattainablePowerError(
            f"power {pwr} lies below {floor_pwr:.6g}, the power at the "
            f"sample-size floor n = {n_floor}"
        )
    n = kernels.solve_sample_size(
        pwr, spec.delta, spec.sigma, spec.alpha, n_floor, two_sided
    )
    if n < 0:
        raise UnattainablePowerError(
            f"power {pwr} needs a total sample size beyond 1e8"
        )
    return n


def sample_size_for_power(pwr: float, spec: TestSpec, n_floor: float = N_FLOOR) -> float:
    """Continuous total n with prob_positive(n, spec) = pwr (to ~1e-11 in n)."""
    return _solve(pwr, spec, True, n_floor)


def sample_size_for_power_upper(
    pwr: float, spec: TestSpec, n_floor: float = N_FLOOR
) -> float:
    """Inversion of prob_positive_upper; the grid's n(pwr) convention."""
    return _solve(pwr, spec, False, n_floor)
