"""Scalar special-function kernels for the two-sample t-test machinery.

Everything here is plain scalar math (regularized incomplete beta, its
inverse, the noncentral-t CDF as a Poisson-weighted incomplete-beta series,
and the power solvers built on top).  The functions are jitted with numba
when available; setting ``PUBECO_NO_NUMBA=1`` (or running without numba
installed) selects the pure-Python fallback, which computes identical values.

Kernels signal failure through sentinel returns (NaN / negative n) so they
stay nopython-compatible; the wrappers in :mod:`pubeco.power` turn those
into typed exceptions.
"""

import math
import os

import numpy as np

USING_NUMBA = False
if os.environ.get("PUBECO_NO_NUMBA", "") != "1":
    try:
        from numba import njit

        USING_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        pass

if not USING_NUMBA:

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


_SQRT2 = math.sqrt(2.0)
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_FPMIN = 1e-300
_CF_MAXIT = 2000
_SERIES_MAXIT = 5000
# beyond this Poisson weight scale exp(-ncp^2/2) underflows and the series
# degenerates; switch to the large-df/large-ncp normal approximation
_NCP_SERIES_LIMIT = 37.0
_DF_SERIES_LIMIT = 1e7


_LGAMMA_HALF = math.lgamma(0.5)


@njit(cache=True)
def norm_cdf(z):
    return 0.5 * math.erfc(-z / _SQRT2)


@njit(cache=True)
def _lgamma_half_diff(z):
    """lgamma(z + 1/2) - lgamma(z), stable for large z.

    The direct difference loses ~|lgamma(z)| * eps absolute accuracy, which
    the noncentral-t series amplifies; the Stirling form keeps the error at
    the 1e-15 level.  Bernoulli-term differences are taken in closed form.
    """
    if z < 50.0:
        return math.lgamma(z + 0.5) - math.lgamma(z)
    zh = z + 0.5
    d = z * math.log1p(0.5 / z) + 0.5 * math.log(z) - 0.5
    d += (1.0 / 12.0) * (1.0 / zh - 1.0 / z)
    d -= (1.0 / 360.0) * (1.0 / zh**3 - 1.0 / z**3)
    d += (1.0 / 1260.0) * (1.0 / zh**5 - 1.0 / z**5)
    return d


@njit(cache=True)
def _log_beta(a, b):
    """log B(a, b); routed through the stable half-step ratio when possible."""
    if b == 0.5:
        return _LGAMMA_HALF - _lgamma_half_diff(a)
    if a == 0.5:
        return _LGAMMA_HALF - _lgamma_half_diff(b)
    return math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b)


@njit(cache=True)
def _betacf(a, b, x):
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        step = d * c
        h *= step
        if abs(step - 1.0) < 1e-16:
            return h
    return math.nan


@njit(cache=True)
def reg_inc_beta(a, b, x):
    """Regularized incomplete beta I_x(a, b)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    lbt = -_log_beta(a, b) + a * math.log(x) + b * math.log1p(-x)
    bt = math.exp(lbt)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _betacf(a, b, x) / a
    return 1.0 - bt * _betacf(b, a, 1.0 - x) / b


@njit(cache=True)
def inv_reg_inc_beta(a, b, p):
    """Inverse of I_x(a, b) in x, solved by guarded Halley iteration."""
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return 1.0
    a1 = a - 1.0
    b1 = b - 1.0
    if a >= 1.0 and b >= 1.0:
        pp = p if p < 0.5 else 1.0 - p
        t = math.sqrt(-2.0 * math.log(pp))
        x = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t
        if p < 0.5:
            x = -x
        al = (x * x - 3.0) / 6.0
        h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0))
        w = x * math.sqrt(al + h) / h - (
            1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)
        ) * (al + 5.0 / 6.0 - 2.0 / (3.0 * h))
        x = a / (a + b * math.exp(2.0 * w))
    else:
        lna = math.log(a / (a + b))
        lnb = math.log(b / (a + b))
        t = math.exp(a * lna) / a
        u = math.exp(b * lnb) / b
        w = t + u
        if p < t / w:
            x = (a * w * p) ** (1.0 / a)
        else:
            x = 1.0 - (b * w * (1.0 - p)) ** (1.0 / b)
    afac = -_log_beta(a, b)
    for j in range(12):
        if x <= 0.0 or x >= 1.0:
            return x
        err = reg_inc_beta(a, b, x) - p
        t = math.exp(a1 * math.log(x) + b1 * math.log1p(-x) + afac)
        u = err / t
        corr = u * (a1 / x - b1 / (1.0 - x))
        if corr > 1.0:
            corr = 1.0
        t = u / (1.0 - 0.5 * corr)
        x -= t
        if x <= 0.0:
            x = 0.5 * (x + t)
        if x >= 1.0:
            x = 0.5 * (x + t + 1.0)
        if abs(t) < 1e-15 * x and j > 0:
            break
    return x


@njit(cache=True)
def _nct_cdf_normal_approx(x, df, ncp):
    # large-df / large-ncp asymptote (Abramowitz & Stegun 26.7.10 form)
    num = x * (1.0 - 1.0 / (4.0 * df)) - ncp
    den = math.sqrt(1.0 + x * x / (2.0 * df))
    return norm_cdf(num / den)


@njit(cache=True)
def nct_cdf(x, df, ncp):
    """CDF of the noncentral t distribution.

    Poisson-weighted incomplete-beta series with symmetric handling of
    negative noncentrality; accuracy degrades gracefully to the normal
    asymptote for |ncp| > 37 or df > 1e7.
    """
    if df > _DF_SERIES_LIMIT or abs(ncp) > _NCP_SERIES_LIMIT:
        return _nct_cdf_normal_approx(x, df, ncp)
    negdel = False
    t = x
    d = ncp
    if x < 0.0:
        negdel = True
        t = -x
        d = -ncp
    x2 = t * t / (t * t + df)
    if x2 <= 0.0:
        tnc = 0.0
    else:
        lam = d * d
        p = 0.5 * math.exp(-0.5 * lam)
        q = _SQRT_2_OVER_PI * p * d
        s = -0.5 * math.expm1(-0.5 * lam)
        a = 0.5
        b = 0.5 * df
        rxb = math.exp(b * math.log1p(-x2))
        albeta = _log_beta(a, b)
        xodd = reg_inc_beta(a, b, x2)
        godd = 2.0 * rxb * math.exp(a * math.log(x2) - albeta)
        xeven = 1.0 - rxb
        geven = b * x2 * rxb
        tnc = p * xodd + q * xeven
        for it in range(1, _SERIES_MAXIT + 1):
            a += 1.0
            # the running tail integrals are nonnegative by construction;
            # clamp the subtraction recurrences against roundoff drift
            xodd -= godd
            if xodd < 0.0:
                xodd = 0.0
            xeven -= geven
            if xeven < 0.0:
                xeven = 0.0
            godd *= x2 * (a + b - 1.0) / a
            geven *= x2 * (a + b - 0.5) / (a + 0.5)
            p *= lam / (2.0 * it)
            q *= lam / (2.0 * it + 1.0)
            s -= p
            tnc += p * xodd + q * xeven
            errbd = 2.0 * s * (xodd - godd)
            if abs(errbd) < 1e-13:
                break
    tnc += norm_cdf(-d)
    if negdel:
        tnc = 1.0 - tnc
    if tnc < 0.0:
        tnc = 0.0
    if tnc > 1.0:
        tnc = 1.0
    return tnc


@njit(cache=True)
def t_two_sided_crit(df, alpha):
    """Critical value t* with P(|T_df| > t*) = alpha for the central t."""
    x = inv_reg_inc_beta(0.5 * df, 0.5, alpha)
    if x <= 0.0:
        return math.inf
    return math.sqrt(df * (1.0 - x) / x)


@njit(cache=True)
def positive_prob(n, delta, sigma, alpha, two_sided):
    """Probability of a significant result for total sample size n.

    Two groups of n/2 observations each; the noncentrality is
    delta * sqrt(n) / (2 * sigma).  With ``two_sided`` the complementary
    rejection tail is included (exactly alpha at delta = 0); otherwise only
    the rejection region on the side of the true effect counts, the
    convention of a-priori power calculations.
    """
    df = n - 2.0
    tcrit = t_two_sided_crit(df, alpha)
    ncp = delta * math.sqrt(n) / (2.0 * sigma)
    prob = 1.0 - nct_cdf(tcrit, df, ncp)
    if two_sided:
        prob += nct_cdf(-tcrit, df, ncp)
    return prob


_N_MAX = 1e8


@njit(cache=True)
def solve_sample_size(pwr, delta, sigma, alpha, n_floor, two_sided):
    """Continuous total sample size with positive_prob(n) = pwr.

    Returns ``n_floor`` when pwr is at or below the power attainable at the
    floor, and -1.0 when pwr is out of reach below n = 1e8 (the caller maps
    that to an error).  Monotonicity of power in n makes bisection safe.
    """
    p_floor = positive_prob(n_floor, delta, sigma, alpha, two_sided)
    if pwr <= p_floor:
        return n_floor
    lo = n_floor
    hi = 2.0 * n_floor
    while positive_prob(hi, delta, sigma, alpha, two_sided) < pwr:
        lo = hi
        hi *= 2.0
        if hi > _N_MAX:
            return -1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if positive_prob(mid, delta, sigma, alpha, two_sided) < pwr:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-11 * hi:
            break
    return 0.5 * (lo + hi)


@njit(cache=True)
def sample_size_table(pwr_values, delta, sigma, alpha, n_floor, two_sided):
    out = np.empty(pwr_values.size)
    for i in range(pwr_values.size):
        out[i] = solve_sample_size(
            pwr_values[i], delta, sigma, alpha, n_floor, two_sided
        )
    return out
