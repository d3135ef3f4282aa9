"""Independent oracles used by the test suite.

These deliberately avoid the package's own kernels: the noncentral-t CDF is
integrated from its defining chi-square mixture with scipy's adaptive
quadrature, the central-t CDF comes from scipy's incomplete beta, and sample
sizes from the textbook normal approximation.
"""

import numpy as np
from scipy import integrate, special, stats


def nct_cdf_quadrature(x, df, ncp):
    """P(T <= x) for T = (Z + ncp) / sqrt(V / df), by adaptive quadrature."""

    def f(v):
        return stats.norm.cdf(x * np.sqrt(v / df) - ncp) * stats.chi2.pdf(v, df)

    split = df + 20.0 * np.sqrt(2.0 * df) + 30.0
    head, _ = integrate.quad(f, 0.0, split, epsabs=1e-13, epsrel=1e-13, limit=400)
    tail, _ = integrate.quad(f, split, np.inf, epsabs=1e-13, epsrel=1e-13, limit=400)
    return head + tail


def central_t_cdf_betainc(x, df):
    """Central-t CDF through the regularized incomplete beta (scipy's)."""
    ib = special.betainc(df / 2.0, 0.5, df / (df + x * x))
    return 1.0 - 0.5 * ib if x >= 0 else 0.5 * ib


def normal_approx_sample_size(pwr, delta, sigma, alpha):
    """Total n from the z-based two-group power formula."""
    z_alpha = stats.norm.ppf(1.0 - alpha / 2.0)
    z_beta = stats.norm.ppf(pwr)
    n_per_group = 2.0 * sigma**2 * (z_alpha + z_beta) ** 2 / delta**2
    return 2.0 * n_per_group
