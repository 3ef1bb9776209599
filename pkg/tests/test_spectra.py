import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from antiflat.errors import AlphaOne, BadIndexOrder, NotAProbabilityVector, ValidationError
from antiflat.spectra import (
    DEFAULT_GRID,
    Alpha,
    RenyiGrid,
    Spectrum,
    escort,
    flat,
    g_profile,
    is_flat,
    new_spectrum,
    partition_function,
    renyi_entropy,
    renyi_spread,
    shannon_entropy,
    spectrum_from_csv,
    spectrum_from_json,
    spectrum_tensor,
    spectrum_to_csv,
    tsallis_entropy,
)
from antiflat.quantifiers import capacity
from conftest import spectra

STATE_A = (0.4, 0.3, 0.2, 0.1)
STATE_C = (0.36, 0.34, 0.29, 0.01)


class TestConstruction:
    def test_flat(self):
        s = new_spectrum([0.25] * 4)
        assert s.dim == 4 and s.rank == 4 and is_flat(s)

    def test_sorted_descending(self):
        s = new_spectrum([0.1, 0.4, 0.2, 0.3])
        assert list(s.weights) == [0.4, 0.3, 0.2, 0.1]

    def test_bad_sum(self):
        with pytest.raises(NotAProbabilityVector):
            new_spectrum([0.5, 0.6])

    def test_negative_weight(self):
        with pytest.raises(NotAProbabilityVector):
            new_spectrum([1.1, -0.1])

    def test_negative_dust_clamped(self):
        s = new_spectrum([1.0 + 1e-12, -1e-12])
        assert s.weights[-1] == 0.0 and s.rank == 1

    def test_empty(self):
        with pytest.raises(NotAProbabilityVector):
            new_spectrum([])

    def test_weights_read_only(self):
        s = flat(2)
        with pytest.raises(ValueError):
            s.weights[0] = 1.0

    def test_json_roundtrip(self):
        s = new_spectrum(STATE_A)
        t = spectrum_from_json(s.to_json())
        assert np.array_equal(s.weights, t.weights)
        assert np.array_equal(spectrum_from_json("[0.5, 0.5]").weights, [0.5, 0.5])

    def test_csv_roundtrip(self):
        s = new_spectrum(STATE_A)
        assert np.array_equal(spectrum_from_csv(spectrum_to_csv(s)).weights, s.weights)

    def test_padding(self):
        s = flat(2).padded(4)
        assert s.dim == 4 and s.rank == 2
        with pytest.raises(ValidationError):
            flat(3).padded(2)


class TestEntropies:
    @pytest.mark.parametrize("alpha", [Alpha.ZERO, 0.3, Alpha.ONE, 2.0, 7.5, Alpha.INF])
    def test_flat_all_equal(self, alpha):
        assert renyi_entropy(flat(4), alpha) == pytest.approx(math.log(4), abs=1e-14)

    @pytest.mark.parametrize("alpha", [Alpha.ZERO, 0.5, 1.0, 3.0, Alpha.INF])
    def test_pure_zero(self, alpha):
        assert renyi_entropy(new_spectrum([1, 0]), alpha) == pytest.approx(0.0, abs=1e-15)

    def test_collision_entropy(self):
        s = new_spectrum([0.51, 0.49])
        assert renyi_entropy(s, 2) == pytest.approx(-math.log(0.51**2 + 0.49**2), rel=1e-14)

    def test_float_one_is_shannon(self):
        s = new_spectrum(STATE_A)
        assert renyi_entropy(s, 1.0) == renyi_entropy(s, Alpha.ONE)

    def test_zero_uses_rank(self):
        assert renyi_entropy(flat(3, 5), Alpha.ZERO) == pytest.approx(math.log(3))

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
    def test_invalid_index(self, bad):
        with pytest.raises(ValidationError):
            renyi_entropy(flat(2), bad)

    def test_tsallis(self):
        assert tsallis_entropy(flat(2), 2) == pytest.approx(0.5)
        assert tsallis_entropy(new_spectrum([1, 0, 0]), 3) == pytest.approx(0.0)
        with pytest.raises(AlphaOne):
            tsallis_entropy(flat(2), 1)

    @given(spectra())
    def test_tsallis_collision_identity(self, s):
        assert tsallis_entropy(s, 2) == pytest.approx(1 - math.exp(-renyi_entropy(s, 2)), abs=1e-12)

    @given(spectra(), st.floats(0.05, 20), st.floats(0.05, 20))
    def test_monotone_in_alpha(self, s, a, b):
        a, b = sorted((a, b))
        assert renyi_entropy(s, a) >= renyi_entropy(s, b) - 1e-10

    @pytest.mark.parametrize("eps", [1e-16, 1e-12, 1e-8])
    def test_continuous_through_alpha_one(self, eps):
        s = Spectrum(np.array([0.5, 0.5]))
        for a in (1 - eps, 1 + eps):
            assert renyi_entropy(s, a) == pytest.approx(math.log(2), abs=1e-12)
        s = Spectrum(np.array([0.7, 0.2, 0.1]))
        h = shannon_entropy(s)
        assert renyi_entropy(s, 1 - eps) == pytest.approx(h, abs=1e-7)
        assert tsallis_entropy(s, max(1 + eps, math.nextafter(1.0, 2.0))) == pytest.approx(h, abs=1e-7)

    @given(spectra(), st.sampled_from([0.5, 2.0, 3.0, 5.0]))
    def test_partition_identity(self, s, q):
        lhs = math.exp((1 - q) * renyi_entropy(s, q))
        assert lhs == pytest.approx(partition_function(s, q), abs=1e-12)


class TestSpreads:
    def test_flat_zero(self):
        assert renyi_spread(flat(5), 0.5, Alpha.INF) == pytest.approx(0.0, abs=1e-14)

    def test_states_A_C_cross(self):
        a, c = new_spectrum(STATE_A), new_spectrum(STATE_C)
        assert renyi_spread(a, 1, 2) > renyi_spread(c, 1, 2)
        assert renyi_spread(c, 0.5, 1) > renyi_spread(a, 0.5, 1)

    def test_binary_2_3_is_half_logL(self):
        s = new_spectrum([0.8, 0.2])
        z2, z3 = 0.68, 0.8**3 + 0.2**3
        assert renyi_spread(s, 2, 3) == pytest.approx(0.5 * math.log(z3 / z2**2), rel=1e-13)

    def test_order_enforced(self):
        with pytest.raises(BadIndexOrder):
            renyi_spread(flat(2), 2, 1)
        with pytest.raises(BadIndexOrder):
            renyi_spread(flat(2), Alpha.INF, 3)

    @given(spectra())
    def test_flat_iff_spreads_vanish(self, s):
        keys = list(DEFAULT_GRID)
        spreads = [renyi_spread(s, a, b) for a, b in zip(keys, keys[1:])]
        assert is_flat(s) == all(x <= 1e-9 for x in spreads)

    @given(spectra())
    def test_local_expansion(self, s):
        v = capacity(s)
        errs = []
        for h in (1e-2, 1e-3):
            errs.append(abs(renyi_spread(s, 1 - h / 2, 1 + h / 2) - h / 2 * v))
        # second order: the error shrinks about 100x when h shrinks 10x
        assert errs[1] <= errs[0] / 50 + 1e-12


class TestPartitionAndEscort:
    def test_partition(self):
        s = new_spectrum([0.8, 0.2])
        assert partition_function(s, 1) == pytest.approx(1.0)
        assert partition_function(s, 2) == pytest.approx(0.68)
        assert partition_function(flat(3, 4), 0) == 3
        assert partition_function(flat(4), 2.5) == pytest.approx(4 ** (1 - 2.5))

    def test_escort_examples(self):
        s = new_spectrum([0.8, 0.2])
        assert np.allclose(escort(s, 1).weights, s.weights, atol=1e-15)
        assert np.allclose(escort(s, 2).weights, [16 / 17, 1 / 17], atol=1e-15)
        assert np.allclose(escort(flat(4), 3.7).weights, 0.25)

    def test_escort_zero_is_uniform_on_support(self):
        e = escort(new_spectrum([0.7, 0.3, 0.0]), 0)
        assert np.allclose(e.weights, [0.5, 0.5, 0.0])

    def test_escort_large_q(self):
        e = escort(new_spectrum([0.6, 0.4]), 5000)
        assert e.weights[0] == pytest.approx(1.0)

    @given(spectra(), st.floats(0.2, 4), st.floats(0.2, 4))
    def test_escort_composition(self, s, q1, q2):
        a = escort(escort(s, q1), q2).weights
        b = escort(s, q1 * q2).weights
        assert np.allclose(a, b, atol=1e-12, rtol=0)


class TestFlatness:
    def test_examples(self):
        assert is_flat(new_spectrum([1 / 3, 1 / 3, 1 / 3, 0]))
        assert not is_flat(new_spectrum(STATE_A))
        eps = 1e-11
        assert is_flat(new_spectrum([0.5 + eps, 0.5 - eps]))

    def test_tensor_of_flat_is_flat(self):
        t = spectrum_tensor(flat(2), flat(3))
        assert t.dim == 6 and is_flat(t)


class TestGProfile:
    def test_table(self):
        grid = RenyiGrid((0.5, 1, 2, 4, 8, Alpha.INF))
        g = g_profile(new_spectrum([0.71, 0.29]), new_spectrum([0.51, 0.49]), grid)
        want = [-0.0472, -0.0908, -0.1621, -0.2448, -0.3002, -0.3309]
        assert np.array_equal(np.round(g.values, 4), want)

    def test_identical(self):
        s = new_spectrum(STATE_A)
        assert np.allclose(g_profile(s, s).values, 0.0)

    def test_same_purity_anchor(self):
        rho = new_spectrum([0.5, 0.5, 0, 0])
        r77 = math.sqrt(77)
        sigma = new_spectrum([22 / 40, (9 + r77) / 40, (9 - r77) / 40, 0])
        g = g_profile(sigma, rho, RenyiGrid((0.5, 2.0, 3.0)))
        assert g.values[1] == pytest.approx(0.0, abs=1e-12)

    def test_grid_validation(self):
        with pytest.raises(ValidationError):
            RenyiGrid((1.0,))
        with pytest.raises(ValidationError):
            RenyiGrid((2.0, 1.0))
        with pytest.raises(ValidationError):
            RenyiGrid((Alpha.ONE, 1.0))

    def test_grid_json(self):
        g = RenyiGrid.from_json(["0+", 0.5, "1", 2, "inf"])
        assert g.alphas == (Alpha.ZERO, 0.5, Alpha.ONE, 2.0, Alpha.INF)
        assert RenyiGrid.from_json(g.to_json()) == g
