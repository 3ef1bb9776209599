import math

import numpy as np
import pytest
from scipy.integrate import quad

from antiflat.ensembles import (
    EnsembleSpec,
    MCEstimate,
    RandomStream,
    bures_hall_chain,
    bures_hall_sample_binary,
    bures_hall_sample_general,
    bures_mean_F,
    clifford_f_theta,
    clifford_mean_F,
    clifford_mean_F_limit,
    haar_mean_cube,
    haar_mean_F,
    haar_mean_purity,
    haar_mean_sq_purity,
    haar_pure,
    haar_spectra_batch,
    haar_var_F,
    lloyd_pagels_density,
    mapped_pdf,
    mc_estimate,
    mc_estimate_many,
    pdf_F_bures_binary,
    pdf_F_haar_binary,
    pdf_logL_haar_binary,
    sample_spectra,
)
from antiflat.ensembles.bures import batch_means_stderr, bures_binary_batch, bures_log_density
from antiflat.ensembles.pdfs import (
    F_MAX,
    LOGL_MAX,
    F_preimages,
    bin_average,
    binary_dF,
    binary_F,
    bures_binary_lambda_density,
    haar_binary_lambda_density,
)
from antiflat.errors import BadDims, DerivativeZero, OutOfSupport, ValidationError
from antiflat.quantifiers import batch_F, moments
from antiflat.spectra import new_spectrum


class TestAnalytic:
    def test_two_qubit_mean(self):
        assert haar_mean_F(2, 2) == pytest.approx(3 / 70, rel=1e-15)

    @pytest.mark.parametrize("dA,dB", [(1, 1), (1, 5), (5, 1)])
    def test_trivial_factor(self, dA, dB):
        assert haar_mean_F(dA, dB) == 0.0 and haar_var_F(dA, dB) == 0.0

    @pytest.mark.parametrize("dA,dB", [(2, 2), (2, 3), (3, 5), (4, 4)])
    def test_mean_decomposition(self, dA, dB):
        want = haar_mean_cube(dA, dB) - haar_mean_sq_purity(dA, dB)
        assert haar_mean_F(dA, dB) == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("dA,dB", [(2, 3), (3, 4)])
    def test_symmetric(self, dA, dB):
        for f in (haar_mean_F, haar_var_F, haar_mean_purity, haar_mean_cube):
            assert f(dA, dB) == pytest.approx(f(dB, dA), rel=1e-13)

    def test_variance_scaling(self):
        scaled = [haar_var_F(r, r) * (r * r) ** 3 for r in (2, 4, 8, 16, 32)]
        assert all(0 < v < 11 for v in scaled)

    def test_bures_mean(self):
        assert bures_mean_F(4) == pytest.approx(1 / 32, rel=1e-15)
        with pytest.raises(ValidationError):
            bures_mean_F(8)

    @pytest.mark.parametrize("d", [4, 16, 64, 256, 1024])
    def test_clifford_algebra(self, d):
        assert clifford_mean_F(d, 0, 0.3) == pytest.approx(0.0, abs=1e-15)
        assert clifford_mean_F_limit(d) == pytest.approx(haar_mean_F(math.isqrt(d), math.isqrt(d)), abs=1e-15)
        assert clifford_mean_F(d, 4000, math.pi / 4) == pytest.approx(clifford_mean_F_limit(d), abs=1e-15)

    @pytest.mark.parametrize("theta", [math.pi / 2, 3 * math.pi / 2])
    def test_clifford_phase_gate_is_clifford(self, theta):
        assert clifford_f_theta(4, theta) == 1.0
        assert clifford_mean_F(16, 7, theta) == pytest.approx(0.0, abs=1e-15)

    def test_clifford_dims(self):
        with pytest.raises(ValidationError):
            clifford_mean_F(8, 1, 0.2)


class TestPdfs:
    def test_preimages(self):
        for f in (1e-4, 0.02, 0.0624):
            roots = F_preimages(f)
            assert roots.size == 4 and np.allclose(binary_F(roots), f, atol=1e-15)

    @pytest.mark.parametrize(
        "pdf,hi", [(pdf_F_haar_binary, F_MAX), (pdf_F_bures_binary, F_MAX), (pdf_logL_haar_binary, LOGL_MAX)]
    )
    def test_normalized(self, pdf, hi):
        total, _ = quad(pdf, 0, hi, limit=400)
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_haar_mean(self):
        m, _ = quad(lambda f: f * pdf_F_haar_binary(f), 0, F_MAX, limit=400)
        assert m == pytest.approx(3 / 70, abs=1e-6)

    def test_bures_mean(self):
        m, _ = quad(lambda f: f * pdf_F_bures_binary(f), 0, F_MAX, limit=400)
        assert m == pytest.approx(1 / 32, abs=1e-6)

    def test_bits_base(self):
        x = 0.08
        assert pdf_logL_haar_binary(x, base=2) == pytest.approx(pdf_logL_haar_binary(x * math.log(2)) * math.log(2))

    def test_support(self):
        for bad in (0.0, F_MAX, -1.0):
            with pytest.raises(OutOfSupport):
                pdf_F_haar_binary(bad)
        with pytest.raises(OutOfSupport):
            pdf_logL_haar_binary(LOGL_MAX)
        with pytest.raises(ValidationError):
            pdf_logL_haar_binary(0.01, base=10)

    def test_lambda_densities_normalized(self):
        for K in (2, 3, 6):
            assert quad(haar_binary_lambda_density, 0, 1, args=(K,))[0] == pytest.approx(1.0, abs=1e-10)
        assert quad(bures_binary_lambda_density, 0, 1)[0] == pytest.approx(1.0, abs=1e-8)

    def test_mapped_reproduces_haar(self):
        f = np.linspace(0.001, 0.0615, 60)
        md = mapped_pdf(haar_binary_lambda_density, lambda x: float(binary_F(x)), lambda x: float(binary_dF(x)), f)
        want = [pdf_F_haar_binary(v) for v in f]
        assert not md.excluded.any()
        assert np.allclose(md.density, want, rtol=1e-8, atol=0)
        assert md.critical_points.size == 3

    def test_mapped_reproduces_bures(self):
        f = np.linspace(0.002, 0.06, 30)
        md = mapped_pdf(bures_binary_lambda_density, lambda x: float(binary_F(x)), lambda x: float(binary_dF(x)), f)
        assert np.allclose(md.density, [pdf_F_bures_binary(v) for v in f], rtol=1e-8)

    def test_mapped_critical_level_excluded(self):
        md = mapped_pdf(haar_binary_lambda_density, lambda x: float(binary_F(x)), lambda x: float(binary_dF(x)), [F_MAX])
        assert md.excluded[0] and np.isnan(md.density[0])

    def test_mapped_flat_map(self):
        with pytest.raises(DerivativeZero):
            mapped_pdf(lambda x: 1.0, lambda x: 0.3, lambda x: 0.0, [0.3])

    def test_bin_average(self):
        edges = np.linspace(0, 1, 5)
        assert np.allclose(bin_average(lambda x: 2 * x, edges), [0.25, 0.75, 1.25, 1.75])


class TestHaar:
    def test_determinism(self):
        a = haar_pure(2, 3, RandomStream(5)).amplitudes
        assert np.array_equal(a, haar_pure(2, 3, RandomStream(5)).amplitudes)
        assert not np.array_equal(a, haar_pure(2, 3, RandomStream(6)).amplitudes)

    def test_scalar_subsystem(self):
        w = haar_spectra_batch(1, 4, 50, 0)
        assert np.allclose(batch_F(w), 0.0)

    def test_mean_purity(self):
        w = haar_spectra_batch(2, 3, 100_000, 1)
        p = moments(w, 2)
        se = p.std(ddof=1) / math.sqrt(p.size)
        assert abs(p.mean() - haar_mean_purity(2, 3)) < 3 * se

    def test_lloyd_pagels(self):
        assert lloyd_pagels_density(new_spectrum([0.5, 0.5]), 2, 2) == 0.0
        for K in (2, 3, 5):
            r = [lloyd_pagels_density(new_spectrum([x, 1 - x]), 2, K) for x in (0.6, 0.8)]
            want = [(2 * x - 1) ** 2 * (x * (1 - x)) ** (K - 2) for x in (0.6, 0.8)]
            assert r[0] / r[1] == pytest.approx(want[0] / want[1], rel=1e-12)
        with pytest.raises(BadDims):
            lloyd_pagels_density(new_spectrum([0.5, 0.5]), 3, 2)


class TestBures:
    def test_binary_mean(self):
        lam = bures_binary_batch(100_000, 3)
        f = binary_F(lam)
        assert abs(f.mean() - 1 / 32) < 3 * f.std(ddof=1) / math.sqrt(f.size)

    def test_binary_histogram(self):
        lam = bures_binary_batch(200_000, 4)
        edges = np.linspace(0.05, 0.95, 19)
        hist, _ = np.histogram(lam, edges)
        want = bin_average(bures_binary_lambda_density, edges) * np.diff(edges) * lam.size
        assert np.max(np.abs(hist - want) / np.sqrt(want)) < 5

    def test_scalar_sampler(self):
        x = bures_hall_sample_binary(9)
        assert 0 < x < 1 and x == bures_hall_sample_binary(9)

    def test_log_density_fixed_points(self):
        lam = np.array([0.5, 0.3, 0.2])
        pairs = [(0.5, 0.3), (0.5, 0.2), (0.3, 0.2)]
        a = 4 - 3 - 0.5
        want = sum(2 * math.log(x - y) - math.log(x + y) for x, y in pairs) + a * np.log(lam).sum()
        assert bures_log_density(lam, 3, 4) == pytest.approx(want, rel=1e-13)

    def test_chain_matches_binary(self):
        w, acc = bures_hall_chain(2, 2, 40_000, 5)
        assert 0.2 < acc < 0.9
        f = batch_F(w)
        se = batch_means_stderr(f)
        assert abs(f.mean() - 1 / 32) < 3 * se

    def test_general_sample(self):
        s = bures_hall_sample_general(3, 4, 2, burn_in=2000)
        assert s.dim == 3 and s.rank == 3
        with pytest.raises(BadDims):
            bures_hall_chain(3, 2, 10)


class TestMonteCarlo:
    def test_spec_validation(self):
        with pytest.raises(ValidationError):
            EnsembleSpec("gaussian")
        with pytest.raises(ValidationError):
            EnsembleSpec.clifford(2, theta=7.0)
        with pytest.raises(ValidationError):
            EnsembleSpec.bures(3, 2)
        with pytest.raises(ValidationError):
            mc_estimate(EnsembleSpec.haar(2, 2), "F", 10)
        with pytest.raises(ValidationError):
            mc_estimate(EnsembleSpec.haar(2, 2), "entropy", 1000)

    def test_spec_dims(self):
        assert EnsembleSpec.clifford(5).dims == (4, 8)
        assert EnsembleSpec.clifford(5, cut=3).dims == (8, 4)
        assert EnsembleSpec.clifford(4).to_json()["cut"] == 2

    def test_two_qubit_mean(self):
        est = mc_estimate(EnsembleSpec.haar(2, 2), "F", 100_000, seed=0)
        assert est.sigma_distance(3 / 70) < 3

    def test_qubit_qutrit_mean(self):
        est = mc_estimate(EnsembleSpec.haar(2, 3), "F", 100_000, seed=1)
        assert est.sigma_distance(haar_mean_F(2, 3)) < 3

    def test_clifford_k0_exact(self):
        est = mc_estimate(EnsembleSpec.clifford(2, 0), "F", 500, seed=0)
        assert abs(est.mean) < 1e-15 and est.stderr < 1e-15

    def test_shared_sample(self):
        spec = EnsembleSpec.haar(2, 2)
        many = mc_estimate_many(spec, ["purity", "E_lin"], 1000, seed=4)
        assert many["purity"].mean + many["E_lin"].mean == pytest.approx(1.0)

    def test_thread_invariance(self):
        spec = EnsembleSpec.haar(3, 3)
        a = sample_spectra(spec, 20_000, seed=2, threads=1)
        b = sample_spectra(spec, 20_000, seed=2, threads=4)
        assert np.array_equal(a, b)
        c = sample_spectra(EnsembleSpec.clifford(4, 1), 600, seed=2, threads=1)
        d = sample_spectra(EnsembleSpec.clifford(4, 1), 600, seed=2, threads=3)
        assert np.array_equal(c, d)

    def test_env_threads(self, monkeypatch):
        from antiflat.ensembles.montecarlo import resolve_threads

        monkeypatch.setenv("ANTIFLAT_THREADS", "3")
        assert resolve_threads(None) == 3
        with pytest.raises(ValidationError):
            resolve_threads(0)

    def test_sigma_distance(self):
        assert MCEstimate(1.0, 0.0, 10, 0).sigma_distance(1.0) == 0.0
        assert MCEstimate(1.0, 0.0, 10, 0).sigma_distance(2.0) == math.inf
        assert MCEstimate(1.0, 0.5, 10, 0).sigma_distance(2.0) == 2.0
