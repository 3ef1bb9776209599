import math

import numpy as np
import pytest

from antiflat.errors import DimMismatch, NonOrthonormalBasis, ValidationError
from antiflat.reproduce import entangled_pair_basis, hadamard_first_qubit_basis
from antiflat.spectra import is_flat, spectrum_tensor
from antiflat.states import (
    BipartitePureState,
    DensityMatrix,
    OrthonormalBasis,
    basis_state,
    bell_state,
    density_from_pure,
    dephase,
    dephase_B,
    diagonal_density,
    eigen_spectrum,
    partial_trace_A,
    partial_trace_B,
    pure_density,
    reduced_density,
    schmidt_coefficients,
    tensor,
)


def random_state(dims, rng):
    d = dims[0] * dims[1]
    return BipartitePureState.normalized(rng.standard_normal(d) + 1j * rng.standard_normal(d), dims)


def random_density(d, rng):
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    r = m @ m.conj().T
    return DensityMatrix(r / np.trace(r).real)


class TestValidation:
    def test_unnormalized_state(self):
        with pytest.raises(ValidationError):
            BipartitePureState(np.array([1.0, 1.0, 0, 0]), (2, 2))

    def test_dims_mismatch(self):
        with pytest.raises(DimMismatch):
            BipartitePureState(basis_state(0, 4), (2, 3))

    def test_non_hermitian(self):
        with pytest.raises(ValidationError):
            DensityMatrix(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_bad_trace(self):
        with pytest.raises(ValidationError):
            DensityMatrix(np.eye(2))

    def test_non_orthonormal(self):
        with pytest.raises(NonOrthonormalBasis):
            OrthonormalBasis(np.array([[1, 1], [0, 1]]))

    def test_json_roundtrip(self, rng):
        psi = random_state((2, 3), rng)
        back = BipartitePureState.from_json(psi.to_json())
        assert np.allclose(back.amplitudes, psi.amplitudes) and back.dims == (2, 3)
        rho = random_density(3, rng)
        assert np.allclose(DensityMatrix.from_json(rho.to_json()).entries, rho.entries)


class TestPureToReduced:
    def test_product_zero(self):
        rho = density_from_pure(BipartitePureState(basis_state(0, 4), (2, 2)))
        assert np.allclose(rho.entries, np.diag([1, 0, 0, 0]))

    def test_bell(self):
        rho = density_from_pure(bell_state())
        assert np.count_nonzero(np.isclose(rho.entries, 0.5)) == 4
        assert np.allclose(partial_trace_B(rho, (2, 2)).entries, np.eye(2) / 2)

    def test_pure_purity(self, rng):
        rho = density_from_pure(random_state((3, 4), rng)).entries
        assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-10)

    def test_partial_traces_of_product(self, rng):
        a, b = random_density(2, rng), random_density(3, rng)
        ab = tensor(a, b)
        assert np.allclose(partial_trace_B(ab, (2, 3)).entries, a.entries, atol=1e-14)
        assert np.allclose(partial_trace_A(ab, (2, 3)).entries, b.entries, atol=1e-14)

    def test_reduced_matches_partial_trace(self, rng):
        psi = random_state((3, 5), rng)
        a = reduced_density(psi).entries
        b = partial_trace_B(density_from_pure(psi), (3, 5)).entries
        assert np.allclose(a, b, atol=1e-14)

    def test_partial_trace_dims(self):
        with pytest.raises(DimMismatch):
            partial_trace_B(diagonal_density([0.5, 0.5, 0, 0]), (3, 2))


class TestSpectra:
    def test_maximally_mixed(self):
        s = eigen_spectrum(DensityMatrix(np.eye(5) / 5))
        assert s.rank == 5 and is_flat(s)

    def test_diagonal(self):
        s = eigen_spectrum(diagonal_density([0.7, 0.2, 0.08, 0.02]))
        assert np.allclose(s.weights, [0.7, 0.2, 0.08, 0.02], atol=1e-14)

    def test_reduced_bell(self):
        s = eigen_spectrum(reduced_density(bell_state()))
        assert np.allclose(s.weights, [0.5, 0.5])

    def test_schmidt_binary(self):
        lam = 0.3
        psi = BipartitePureState(np.array([math.sqrt(lam), 0, 0, math.sqrt(1 - lam)]), (2, 2))
        assert np.allclose(schmidt_coefficients(psi).weights, [0.7, 0.3])

    def test_schmidt_product(self):
        psi = BipartitePureState(np.kron(basis_state(1, 3), basis_state(2, 4)), (3, 4))
        s = schmidt_coefficients(psi)
        assert s.weights[0] == pytest.approx(1.0) and s.rank == 1 and s.dim == 3

    def test_two_epr_pairs(self):
        # qubits ordered A1 A2 B1 B2 with pairs (A1,B1) and (A2,B2)
        psi = np.zeros(16)
        for a1 in (0, 1):
            for a2 in (0, 1):
                psi[(a1 << 3) | (a2 << 2) | (a1 << 1) | a2] = 0.5
        s = schmidt_coefficients(BipartitePureState(psi, (4, 4)))
        assert s.rank == 4 and is_flat(s)

    def test_schmidt_agrees_with_eigen(self, rng):
        psi = random_state((3, 4), rng)
        a = schmidt_coefficients(psi).weights
        b = eigen_spectrum(reduced_density(psi)).weights
        assert np.allclose(a, b, atol=1e-12)

    def test_tensor_spectrum(self, rng):
        a, b = random_density(2, rng), random_density(3, rng)
        direct = eigen_spectrum(tensor(a, b)).weights
        outer = spectrum_tensor(eigen_spectrum(a), eigen_spectrum(b)).weights
        assert np.allclose(direct, outer, atol=1e-12)

    def test_tensor_examples(self):
        half = DensityMatrix(np.eye(2) / 2)
        assert np.allclose(tensor(half, half).entries, np.eye(4) / 4)
        p = tensor(pure_density([1, 1]), pure_density([1, 0]))
        assert np.trace(p.entries @ p.entries).real == pytest.approx(1.0)


class TestDephasing:
    def test_qubit_pair_basis(self):
        rho = diagonal_density([1, 0, 0, 0])
        s = eigen_spectrum(dephase(rho, entangled_pair_basis()))
        assert np.allclose(s.weights, [2 / 3, 1 / 3, 0, 0], atol=1e-10)

    def test_eigenbasis_noop(self, rng):
        rho = random_density(4, rng)
        _, v = np.linalg.eigh(rho.entries)
        out = dephase(rho, OrthonormalBasis(v))
        assert np.allclose(out.entries, rho.entries, atol=1e-12)

    def test_stabilizer_projector(self):
        w = np.zeros(16)
        w[:10] = 0.1
        s = eigen_spectrum(dephase(diagonal_density(w), hadamard_first_qubit_basis(4)))
        want = np.array([0.1] * 4 + [0.05] * 12)
        assert np.allclose(s.weights, want, atol=1e-10)

    def test_dephase_B_leaves_A(self, rng):
        rho = density_from_pure(random_state((2, 3), rng))
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        out = dephase_B(rho, (2, 3), OrthonormalBasis(q))
        a0 = partial_trace_B(rho, (2, 3)).entries
        assert np.allclose(partial_trace_B(out, (2, 3)).entries, a0, atol=1e-10)

    def test_dephase_idempotent(self, rng):
        rho = random_density(3, rng)
        b = OrthonormalBasis.computational(3)
        once = dephase(rho, b)
        assert np.allclose(dephase(once, b).entries, once.entries)
        assert np.allclose(once.entries, np.diag(np.diag(rho.entries)))
