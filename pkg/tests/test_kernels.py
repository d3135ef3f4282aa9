"""Kernel-level checks against independent oracles."""

import numpy as np
import pytest
from scipy import special, stats

from pubeco import kernels
from oracles import central_t_cdf_betainc, nct_cdf_quadrature

# quadrature value of the noncentral-t CDF at (x=1.5, df=10, ncp=1.2)
NCT_SPOT_VALUE = 0.5981449426714591


class TestRegIncBeta:
    def test_against_scipy(self):
        """Match scipy's betainc across a broad log-uniform parameter sweep."""
        rng = np.random.default_rng(7)
        for _ in range(2000):
            a = 10 ** rng.uniform(-1.0, 4.5)
            b = 10 ** rng.uniform(-1.0, 4.5)
            x = rng.uniform(0.0, 1.0)
            assert kernels.reg_inc_beta(a, b, x) == pytest.approx(
                special.betainc(a, b, x), abs=1e-11
            )

    def test_bounds(self):
        assert kernels.reg_inc_beta(2.0, 3.0, 0.0) == 0.0
        assert kernels.reg_inc_beta(2.0, 3.0, 1.0) == 1.0

    def test_inverse_round_trip(self):
        """inv then forward recovers p away from the representability edges."""
        rng = np.random.default_rng(8)
        for _ in range(2000):
            a = 10 ** rng.uniform(-0.5, 4.0)
            b = 10 ** rng.uniform(-0.5, 4.0)
            p = rng.uniform(1e-6, 1.0 - 1e-6)
            x = kernels.inv_reg_inc_beta(a, b, p)
            if 0.0 < x < 1.0:
                assert kernels.reg_inc_beta(a, b, x) == pytest.approx(p, abs=5e-10)

    def test_inverse_t_quantile_domain(self):
        """The b = 1/2 slice used for t critical values is high precision."""
        rng = np.random.default_rng(9)
        for _ in range(2000):
            a = 10 ** rng.uniform(-1.0, 6.0)
            p = 10 ** rng.uniform(-4.0, -0.01)
            x = kernels.inv_reg_inc_beta(a, 0.5, p)
            assert kernels.reg_inc_beta(a, 0.5, x) == pytest.approx(p, abs=1e-9)


class TestTCrit:
    @pytest.mark.parametrize("df", [0.5, 1.0, 2.0, 5.0, 30.0, 500.0, 1e5])
    @pytest.mark.parametrize("alpha", [0.001, 0.005, 0.05, 0.10, 0.5])
    def test_against_scipy(self, df, alpha):
        want = stats.t.ppf(1.0 - alpha / 2.0, df)
        assert kernels.t_two_sided_crit(df, alpha) == pytest.approx(want, rel=1e-9)


class TestNctCdf:
    def test_quadrature_oracle_100_probes(self):
        """Absolute agreement with the defining-integral oracle to 1e-8."""
        rng = np.random.default_rng(1234)
        for _ in range(100):
            df = 10 ** rng.uniform(-0.3, 4.0)
            ncp = rng.uniform(-6.0, 6.0)
            x = rng.uniform(-12.0, 12.0)
            want = nct_cdf_quadrature(x, df, ncp)
            assert kernels.nct_cdf(x, df, ncp) == pytest.approx(want, abs=1e-8)

    def test_spot_value(self):
        assert kernels.nct_cdf(1.5, 10.0, 1.2) == pytest.approx(
            NCT_SPOT_VALUE, abs=1e-8
        )

    def test_central_t_equality(self):
        """ncp = 0 coincides with an incomplete-beta central-t CDF to 1e-10."""
        rng = np.random.default_rng(5)
        for _ in range(500):
            df = 10 ** rng.uniform(-0.3, 4.0)
            x = rng.uniform(-20.0, 20.0)
            want = central_t_cdf_betainc(x, df)
            assert kernels.nct_cdf(x, df, 0.0) == pytest.approx(want, abs=1e-10)

    def test_symmetry_sum(self):
        """F(x, df, ncp) + F(-x, df, -ncp) = 1."""
        rng = np.random.default_rng(6)
        for _ in range(500):
            df = 10 ** rng.uniform(-0.3, 4.0)
            ncp = rng.uniform(-6.0, 6.0)
            x = rng.uniform(-12.0, 12.0)
            total = kernels.nct_cdf(x, df, ncp) + kernels.nct_cdf(-x, df, -ncp)
            assert total == pytest.approx(1.0, abs=1e-12)

    def test_center_of_central(self):
        assert kernels.nct_cdf(0.0, 5.0, 0.0) == pytest.approx(0.5, abs=1e-15)

    def test_monotone_in_x(self):
        """Nondecreasing in x on 10^4 random (df, ncp) probe pairs."""
        rng = np.random.default_rng(42)
        for _ in range(10_000):
            df = 10 ** rng.uniform(-0.3, 4.0)
            ncp = rng.uniform(-6.0, 6.0)
            x1, x2 = np.sort(rng.uniform(-15.0, 15.0, size=2))
            assert (
                kernels.nct_cdf(x1, df, ncp)
                <= kernels.nct_cdf(x2, df, ncp) + 1e-12
            )

    def test_values_in_unit_interval(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            v = kernels.nct_cdf(
                rng.uniform(-50, 50), 10 ** rng.uniform(-0.3, 6), rng.uniform(-10, 10)
            )
            assert 0.0 <= v <= 1.0
