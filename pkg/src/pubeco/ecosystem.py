"""Ecosystem configuration, publication policies, and per-study category table.

A study falls into one of eight categories: truth (effect real or null) x
finding (positive or negative) x publication status.  ``category_probs``
returns the per-study probabilities of the eight categories for a strategy
(psp, pwr); they sum to one by construction.  The publication probability of
a positive result is A = (1 - psp)^m, optionally damped by a logistic power
screen (the sample-size requirement); negative results publish with the
constant probability B.

The operations accept scalar or numpy-array psp/pwr, so the grid layer reuses
the exact same formulas.
"""

import math
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from .errors import ConfigError
from .power import TestSpec

#: defaults shared by the config loader and the reference suite
DEFAULT_DELTA = 0.21
DEFAULT_SIGMA = 1.0
DEFAULT_T = 100_000.0
DEFAULT_C50 = 0.5
DEFAULT_C95 = 0.8
DEFAULT_DSCV_THRESHOLD = 0.05

_LOG19 = math.log(19.0)


@dataclass(frozen=True)
class EcosystemConfig:
    """One complete policy world."""

    alpha: float
    k: float
    m: float
    t: float = DEFAULT_T
    delta: float = DEFAULT_DELTA
    sigma: float = DEFAULT_SIGMA
    b_const: float = 0.0
    ssr: bool = False
    c50: float = DEFAULT_C50
    c95: float = DEFAULT_C95
    dscv_threshold: float = DEFAULT_DSCV_THRESHOLD

    def __post_init__(self):
        checks = [
            (0 < self.alpha < 1, "alpha", "must be in (0, 1)"),
            (self.k > 0, "k", "must be > 0"),
            (self.m >= 0, "m", "must be >= 0"),
            (self.t > 0, "t", "must be > 0"),
            (self.sigma > 0, "sigma", "must be > 0"),
            (self.delta >= 0, "delta", "must be >= 0"),
            (0 <= self.b_const <= 1, "b_const", "must be in [0, 1]"),
            (0 < self.c50 < self.c95 < 1, "c50/c95", "need 0 < c50 < c95 < 1"),
            (
                0 <= self.dscv_threshold < 1,
                "dscv_threshold",
                "must be in [0, 1)",
            ),
        ]
        for ok, field, msg in checks:
            value = getattr(self, field, None) if "/" not in field else None
            if not ok or (value is not None and not math.isfinite(value)):
                raise ConfigError(f"{field}: {msg}")

    @property
    def test(self) -> TestSpec:
        return TestSpec(delta=self.delta, sigma=self.sigma, alpha=self.alpha)

    def with_updates(self, **kwargs: Any) -> "EcosystemConfig":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class Strategy:
    """A point (psp, pwr) in the researcher's decision space.

    Fields may be floats or broadcastable numpy arrays.
    """

    psp: Any
    pwr: Any

    def __post_init__(self):
        if not (np.all(np.asarray(self.psp) >= 0) and np.all(np.asarray(self.psp) <= 1)):
            raise ConfigError("psp must lie in [0, 1]")
        if not (np.all(np.asarray(self.pwr) > 0) and np.all(np.asarray(self.pwr) < 1)):
            raise ConfigError("pwr must lie in (0, 1)")


@dataclass(frozen=True)
class CategoryProbs:
    """Per-study probabilities of the eight truth x finding x status cells.

    Field name q<a><b><c>: a = truth (1 effect, 0 null), b = finding
    (1 positive, 0 negative), c = P published / U unpublished.
    """

    q11P: Any
    q11U: Any
    q10P: Any
    q10U: Any
    q01P: Any
    q01U: Any
    q00P: Any
    q00U: Any

    @property
    def q_pp_pub(self):
        """q_{++P}: probability the study is published."""
        return self.q11P + self.q10P + self.q01P + self.q00P

    @property
    def q_p1_pub(self):
        """q_{+1P}: published with a positive finding."""
        return self.q11P + self.q01P

    @property
    def q_11_any(self):
        """q_{11+}: true positive, published or not."""
        return self.q11P + self.q11U

    def total(self):
        return (
            self.q11P + self.q11U + self.q10P + self.q10U
            + self.q01P + self.q01U + self.q00P + self.q00U
        )


def ssr_multiplier(pwr, c50: float, c95: float):
    """Logistic power screen: 0.5 at c50, 0.95 at c95, increasing in pwr."""
    return 1.0 / (1.0 + np.exp(-_LOG19 * (pwr - c50) / (c95 - c50)))


def pub_prob_positive(s: Strategy, cfg: EcosystemConfig):
    """Probability A that a positive result is published."""
    a = (1.0 - np.asarray(s.psp)) ** cfg.m
    if cfg.ssr:
        a = a * ssr_multiplier(np.asarray(s.pwr), cfg.c50, cfg.c95)
    if np.ndim(a) == 0:
        return float(a)
    return a


def pub_prob_negative(s: Strategy, cfg: EcosystemConfig):
    """Probability B that a negative result is published (a policy constant)."""
    return cfg.b_const


def _category_probs_from(psp, pwr, a, b, alpha) -> CategoryProbs:
    """Category table from explicit publication probabilities.

    Pr(TP) = pwr by construction of the strategy space and Pr(FP) = alpha
    exactly (the test size); the rest is arithmetic on the 2x2x2 split.
    """
    tp = psp * pwr
    fn = psp * (1.0 - pwr)
    fp = (1.0 - psp) * alpha
    tn = (1.0 - psp) * (1.0 - alpha)
    return CategoryProbs(
        q11P=a * tp,
        q11U=(1.0 - a) * tp,
        q10P=b * fn,
        q10U=(1.0 - b) * fn,
        q01P=a * fp,
        q01U=(1.0 - a) * fp,
        q00P=b * tn,
        q00U=(1.0 - b) * tn,
    )


def category_probs(s: Strategy, cfg: EcosystemConfig) -> CategoryProbs:
    """Eight per-study category probabilities for strategy s under cfg."""
    if not np.all(np.asarray(s.pwr) >= cfg.alpha):
        raise ConfigError("pwr must be at least alpha")
    a = pub_prob_positive(s, cfg)
    b = pub_prob_negative(s, cfg)
    return _category_probs_from(np.asarray(s.psp), np.asarray(s.pwr), a, b, cfg.alpha)
