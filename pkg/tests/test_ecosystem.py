"""Publication policies and the eight-category study table."""

import numpy as np
import pytest

from pubeco import (
    ConfigError,
    EcosystemConfig,
    Strategy,
    category_probs,
    pub_prob_negative,
    pub_prob_positive,
    ssr_multiplier,
)

BASE = EcosystemConfig(alpha=0.05, k=100, m=3)


def cfg_with(**kw):
    return BASE.with_updates(**kw)


class TestPubProbPositive:
    def test_novelty_only(self):
        assert pub_prob_positive(Strategy(psp=0.0, pwr=0.5), BASE) == 1.0
        s = Strategy(psp=0.3, pwr=0.5)
        assert pub_prob_positive(s, BASE) == pytest.approx(0.7**3, rel=1e-14)

    def test_screen_anchor_at_c95(self):
        cfg = cfg_with(ssr=True, c50=0.5, c95=0.8)
        got = pub_prob_positive(Strategy(psp=0.0, pwr=0.8), cfg)
        assert got == pytest.approx(0.95, abs=1e-12)

    def test_screen_anchor_at_c50(self):
        cfg = cfg_with(ssr=True, c50=0.5, c95=0.8)
        got = pub_prob_positive(Strategy(psp=0.0, pwr=0.5), cfg)
        assert got == pytest.approx(0.5, abs=1e-12)

    def test_screen_anchors_hold_for_any_midpoint(self):
        for c50 in (0.4, 0.6):
            assert ssr_multiplier(c50, c50, 0.8) == pytest.approx(0.5, abs=1e-12)
            assert ssr_multiplier(0.8, c50, 0.8) == pytest.approx(0.95, abs=1e-12)

    def test_screen_below_no_screen(self):
        """The screen strictly lowers A everywhere below pwr = 1."""
        cfg_on = cfg_with(ssr=True)
        rng = np.random.default_rng(2)
        for _ in range(200):
            s = Strategy(psp=rng.uniform(0, 1), pwr=rng.uniform(0.05, 0.999))
            assert pub_prob_positive(s, cfg_on) < pub_prob_positive(s, BASE) + 1e-15

    def test_no_screen_ignores_pwr(self):
        a1 = pub_prob_positive(Strategy(psp=0.4, pwr=0.1), BASE)
        a2 = pub_prob_positive(Strategy(psp=0.4, pwr=0.9), BASE)
        assert a1 == a2

    def test_monotone(self):
        cfg = cfg_with(ssr=True)
        psp = np.linspace(0, 1, 30)
        a = pub_prob_positive(Strategy(psp=psp, pwr=0.6), cfg)
        assert np.all(np.diff(a) <= 0)
        pwr = np.linspace(0.06, 0.99, 30)
        a = pub_prob_positive(Strategy(psp=0.2, pwr=pwr), cfg)
        assert np.all(np.diff(a) >= 0)


class TestPubProbNegative:
    @pytest.mark.parametrize("b", [0.0, 0.1, 1.0])
    def test_constant(self, b):
        cfg = cfg_with(b_const=b)
        assert pub_prob_negative(Strategy(psp=0.3, pwr=0.5), cfg) == b


class TestCategoryProbs:
    def test_all_true_publish_all_positives(self):
        cfg = cfg_with(m=0)  # A = 1 everywhere
        q = category_probs(Strategy(psp=1.0, pwr=0.8), cfg)
        assert q.q11P == pytest.approx(0.8)
        assert q.q10U == pytest.approx(0.2)
        for name in ("q11U", "q10P", "q01P", "q01U", "q00P", "q00U"):
            assert getattr(q, name) == 0.0

    def test_null_world(self):
        cfg = cfg_with(m=0)
        q = category_probs(Strategy(psp=0.0, pwr=0.5), cfg)
        assert q.q01P == pytest.approx(0.05, abs=1e-15)
        assert q.q00U == pytest.approx(0.95, abs=1e-15)

    def test_positive_share_and_reliability(self):
        """10% true effects at 55% power: 10% of studies land positive and
        55% of published positives are true."""
        cfg = cfg_with(m=0)
        q = category_probs(Strategy(psp=0.1, pwr=0.55), cfg)
        positives = q.q11P + q.q01P
        assert positives == pytest.approx(0.1, abs=1e-15)
        assert q.q11P / positives == pytest.approx(0.55, abs=1e-12)

    def test_sum_to_one_random(self):
        """The eight categories always sum to exactly one."""
        rng = np.random.default_rng(3)
        for _ in range(10_000):
            cfg = EcosystemConfig(
                alpha=rng.uniform(0.001, 0.3),
                k=rng.uniform(10, 2000),
                m=rng.uniform(0, 8),
                b_const=rng.uniform(0, 1),
                ssr=bool(rng.integers(2)),
            )
            s = Strategy(psp=rng.uniform(0, 1), pwr=rng.uniform(cfg.alpha, 0.999))
            q = category_probs(s, cfg)
            assert q.total() == pytest.approx(1.0, abs=1e-12)

    def test_no_negative_publication_when_b_zero(self):
        q = category_probs(Strategy(psp=0.4, pwr=0.5), BASE)
        assert q.q10P == 0.0
        assert q.q00P == 0.0

    def test_false_positive_branch_exact_size(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            s = Strategy(psp=rng.uniform(0, 0.99), pwr=rng.uniform(0.05, 0.99))
            q = category_probs(s, BASE)
            a = pub_prob_positive(s, BASE)
            assert q.q01P / (1 - s.psp) == pytest.approx(a * BASE.alpha, rel=1e-12)

    def test_true_positive_split(self):
        s = Strategy(psp=0.37, pwr=0.62)
        q = category_probs(s, BASE)
        assert q.q_11_any == pytest.approx(0.37 * 0.62, rel=1e-14)

    def test_pwr_below_alpha_rejected(self):
        with pytest.raises(ConfigError):
            category_probs(Strategy(psp=0.5, pwr=0.01), BASE)


class TestConfigValidation:
    def test_bad_alpha(self):
        with pytest.raises(ConfigError):
            EcosystemConfig(alpha=0.0, k=100, m=1)

    def test_bad_k(self):
        with pytest.raises(ConfigError):
            EcosystemConfig(alpha=0.05, k=0.0, m=1)

    def test_bad_screen_params(self):
        with pytest.raises(ConfigError):
            EcosystemConfig(alpha=0.05, k=100, m=1, c50=0.8, c95=0.5)

    def test_bad_b(self):
        with pytest.raises(ConfigError):
            EcosystemConfig(alpha=0.05, k=100, m=1, b_const=1.5)

    def test_m_zero_allowed(self):
        EcosystemConfig(alpha=0.05, k=100, m=0)
