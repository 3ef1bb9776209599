import math

import numpy as np
import pytest
from hypothesis import given

from antiflat.errors import DimMismatch, SupportMismatch, ValidationError, ZeroWeight
from antiflat.geometry import (
    BregmanGenerator,
    bregman,
    cov_unification,
    entropy_slope_capacity,
    escort_curvature_capacity,
    euclidean_spread_identity,
    geometry_report,
    kl_divergence,
)
from antiflat.quantifiers import capacity, linear_renyi_spread, log_antiflatness
from antiflat.spectra import Spectrum, escort, flat, new_spectrum, partition_function
from conftest import spectra


class TestDivergences:
    def test_kl_examples(self):
        s = new_spectrum([0.6, 0.3, 0.1])
        assert kl_divergence(s, s) == 0.0
        assert kl_divergence(new_spectrum([1, 0]), flat(2)) == pytest.approx(math.log(2))

    def test_kl_support(self):
        with pytest.raises(SupportMismatch):
            kl_divergence(flat(2), new_spectrum([1, 0]))
        with pytest.raises(DimMismatch):
            kl_divergence(flat(2), flat(3))

    @given(spectra())
    def test_kl_escort_nonnegative(self, s):
        for q in (0.3, 1.7, 4.0):
            assert kl_divergence(s, escort(s, q)) >= 0.0

    def test_bregman_second_moment(self):
        s = new_spectrum([0.6, 0.4])
        assert bregman(BregmanGenerator.SECOND_MOMENT, s, s) == pytest.approx(0.0, abs=1e-16)
        assert bregman(BregmanGenerator.SECOND_MOMENT, new_spectrum([1, 0]), flat(2)) == pytest.approx(0.5)

    def test_bregman_shannon_is_kl(self, rng):
        for _ in range(1000):
            d = int(rng.integers(2, 8))
            p, q = Spectrum(rng.dirichlet(np.ones(d))), Spectrum(rng.dirichlet(np.ones(d)))
            # spectra are sorted, so both live on the same index order
            got = bregman(BregmanGenerator.NEG_SHANNON_ENTROPY, p, q)
            assert got == pytest.approx(kl_divergence(p, q), abs=1e-12)


class TestEscortCurvature:
    def test_flat(self):
        assert escort_curvature_capacity(flat(3), 1e-2) == pytest.approx(0.0, abs=1e-12)

    def test_binary(self):
        s = new_spectrum([0.9, 0.1])
        assert escort_curvature_capacity(s, 1e-3) == pytest.approx(capacity(s), rel=1e-3)

    @given(spectra())
    def test_at_least_first_order(self, s):
        v = capacity(s)
        e1 = abs(escort_curvature_capacity(s, 1e-3) - v)
        e2 = abs(escort_curvature_capacity(s, 5e-4) - v)
        assert e2 <= 0.55 * e1 + 1e-8 * (1 + v)

    def test_first_order_ratio(self):
        s = new_spectrum([0.9, 0.1])
        v = capacity(s)
        errs = [escort_curvature_capacity(s, e) - v for e in (1e-2, 5e-3, 2.5e-3)]
        assert errs[0] / errs[1] == pytest.approx(2.0, rel=0.02)
        assert errs[1] / errs[2] == pytest.approx(2.0, rel=0.01)

    def test_guards(self):
        with pytest.raises(ZeroWeight):
            escort_curvature_capacity(flat(2, 3), 1e-3)
        with pytest.raises(ValidationError):
            escort_curvature_capacity(flat(2), 0.5)


class TestIdentities:
    @given(spectra())
    def test_euclidean(self, s):
        assert euclidean_spread_identity(s) == pytest.approx(linear_renyi_spread(s), abs=1e-12)

    @pytest.mark.parametrize("lam", [0.1, 0.3, 0.45])
    def test_euclidean_binary(self, lam):
        s = new_spectrum([lam, 1 - lam])
        assert euclidean_spread_identity(s) == pytest.approx((1 - 2 * lam) ** 2 * lam * (1 - lam), abs=1e-15)

    @given(spectra())
    def test_cov(self, s):
        assert cov_unification(s) == pytest.approx(log_antiflatness(s), abs=1e-12)
        x = linear_renyi_spread(s) / partition_function(s, 2) ** 2
        assert abs(cov_unification(s) - x) <= x * x / 2 + 1e-15

    def test_flat_zero(self):
        for f in (euclidean_spread_identity, cov_unification):
            assert f(flat(4)) == pytest.approx(0.0, abs=1e-15)
        assert cov_unification(new_spectrum([0.8, 0.2])) == pytest.approx(log_antiflatness(new_spectrum([0.8, 0.2])))

    @given(spectra())
    def test_entropy_slope(self, s):
        assert entropy_slope_capacity(s) == pytest.approx(capacity(s), abs=1e-6)

    def test_report(self):
        r = geometry_report(new_spectrum([0.7, 0.2, 0.1]))
        assert r["kl_curvature"] == pytest.approx(r["capacity_direct"], rel=1e-2)
        assert geometry_report(flat(2, 3))["kl_curvature"] is None
