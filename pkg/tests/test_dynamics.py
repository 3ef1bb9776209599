import math

import numpy as np
import pytest

from antiflat.dynamics import (
    MAX_F_CONSTANT,
    LOOSE_CONSTANT,
    Hamiltonian,
    commutator_rate,
    energy,
    evolve,
    fd_step,
    hamiltonian_variance,
    linear_entanglement,
    random_hamiltonian,
    rate_bound_report,
    rate_bound_rhs,
    state_F,
    xx_hamiltonian,
)
from antiflat.errors import DimMismatch, ValidationError
from antiflat.states import BipartitePureState, basis_state, bell_state

ZERO = BipartitePureState(basis_state(0, 4), (2, 2))


def random_state(dims, rng):
    d = dims[0] * dims[1]
    return BipartitePureState.normalized(rng.standard_normal(d) + 1j * rng.standard_normal(d), dims)


class TestHamiltonian:
    def test_hermitian_check(self):
        with pytest.raises(ValidationError):
            Hamiltonian(np.array([[0, 1], [0, 0]]), (1, 2))
        with pytest.raises(DimMismatch):
            Hamiltonian(np.eye(4), (2, 3))

    def test_json_roundtrip(self, rng):
        h = random_hamiltonian((2, 3), rng)
        back = Hamiltonian.from_json(h.to_json())
        assert back.dims == (2, 3) and np.allclose(back.entries, h.entries)

    def test_dims_checked_against_state(self):
        with pytest.raises(DimMismatch):
            energy(Hamiltonian(np.eye(6), (3, 2)), random_state((2, 3), np.random.default_rng(0)))


class TestEvolution:
    def test_identity_at_zero(self, rng):
        psi = random_state((2, 2), rng)
        assert np.allclose(evolve(random_hamiltonian((2, 2), rng), psi, 0.0).amplitudes, psi.amplitudes)

    @pytest.mark.parametrize("t", [0.1, 0.7, 2.3])
    def test_xx_closed_form(self, t):
        out = evolve(xx_hamiltonian(), ZERO, t).amplitudes
        assert np.allclose(out, [math.cos(t), 0, 0, -1j * math.sin(t)], atol=1e-14)

    def test_energy_and_variance_conserved(self, rng):
        h = random_hamiltonian((2, 3), rng)
        psi = random_state((2, 3), rng)
        for t in (0.3, 1.9):
            later = evolve(h, psi, t)
            assert energy(h, later) == pytest.approx(energy(h, psi), abs=1e-12)
            assert hamiltonian_variance(h, later) == pytest.approx(hamiltonian_variance(h, psi), abs=1e-12)


class TestFunctionals:
    def test_linear_entanglement(self):
        assert linear_entanglement(ZERO) == pytest.approx(0.0, abs=1e-15)
        assert linear_entanglement(bell_state()) == pytest.approx(0.5)
        for t in (0.2, 1.1):
            assert linear_entanglement(evolve(xx_hamiltonian(), ZERO, t)) == pytest.approx(math.sin(2 * t) ** 2 / 2)

    def test_variance(self):
        assert hamiltonian_variance(xx_hamiltonian(), ZERO) == pytest.approx(1.0)
        eig = BipartitePureState.normalized([1, 0, 0, 1], (2, 2))
        assert hamiltonian_variance(xx_hamiltonian(), eig) == pytest.approx(0.0, abs=1e-15)

    def test_state_F(self):
        for t in (0.2, 0.9):
            psi = evolve(xx_hamiltonian(), ZERO, t)
            assert state_F(psi) == pytest.approx(math.sin(4 * t) ** 2 / 16, abs=1e-15)

    def test_commutator_rate_matches_difference(self, rng):
        h = random_hamiltonian((2, 3), rng)
        psi = random_state((2, 3), rng)
        e = 1e-5
        fd = (linear_entanglement(evolve(h, psi, e)) - linear_entanglement(evolve(h, psi, -e))) / (2 * e)
        assert commutator_rate(h, psi) == pytest.approx(fd, abs=1e-8)


class TestRateBound:
    def test_xx_saturation(self):
        times = np.linspace(0, math.pi, 200)
        for t in times:
            psi = evolve(xx_hamiltonian(), ZERO, t)
            assert abs(abs(commutator_rate(xx_hamiltonian(), psi)) - abs(math.sin(4 * t))) < 1e-9
            assert abs(rate_bound_rhs(xx_hamiltonian(), psi) - abs(math.sin(4 * t))) < 1e-9

    def test_flat_start_is_tight(self):
        rec = rate_bound_report(xx_hamiltonian(), ZERO, [0.0])[0]
        assert rec.rhs == pytest.approx(0.0, abs=1e-15)
        assert abs(rec.dEdt_numeric) <= rec.slack + 1e-12 and rec.satisfied

    @pytest.mark.parametrize("dims", [(2, 2), (2, 4)])
    def test_random_sweep(self, dims, rng):
        times = np.linspace(0, math.pi, 100)
        for _ in range(10):
            recs = rate_bound_report(random_hamiltonian(dims, rng), random_state(dims, rng), times)
            assert all(r.satisfied for r in recs)
            assert all(abs(r.dEdt_commutator) <= r.rhs + 1e-10 for r in recs)

    def test_constants(self):
        assert MAX_F_CONSTANT == pytest.approx(4 * math.sqrt(27 / 256))
        assert LOOSE_CONSTANT == pytest.approx(MAX_F_CONSTANT / 2)

    def test_loose_bound_can_fail(self):
        # the xx trajectory peaks at rate 1 while the loose constant is about 0.65
        recs = rate_bound_report(xx_hamiltonian(), ZERO, np.linspace(0, math.pi / 4, 50))
        assert any(not r.loose_satisfied for r in recs)
        assert all(abs(r.dEdt_numeric) <= MAX_F_CONSTANT * 1.0 + r.slack for r in recs)

    def test_time_validation(self):
        with pytest.raises(ValidationError):
            rate_bound_report(xx_hamiltonian(), ZERO, [1.0, 0.5])
        with pytest.raises(ValidationError):
            rate_bound_report(xx_hamiltonian(), ZERO, [])

    def test_fd_step(self):
        assert fd_step([0.0, 1.0]) == pytest.approx(0.1)
        assert fd_step([0.0, 1e-7]) == 1e-5
