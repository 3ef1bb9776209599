"""Unitary evolution of bipartite pure states and the linear-entanglement rate bound.

The bound checked here is |dE_lin/dt| <= 4 sqrt(F_A) sqrt(Var H), with
Var H = <H^2> - <H>^2 and F_A = Tr rho_A^3 - (Tr rho_A^2)^2.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DimMismatch, EigenFailure, ValidationError
from .states import BipartitePureState

HERMITIAN_TOL = 1e-10
NORM_TOL = 1e-9
LOOSE_CONSTANT = 3.0 * math.sqrt(3.0) / 8.0
MAX_F_CONSTANT = 3.0 * math.sqrt(3.0) / 4.0  # 4 sqrt(27/256)


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    entries: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        h = np.asarray(self.entries, dtype=complex)
        dA, dB = (int(x) for x in self.dims)
        if h.shape != (dA * dB, dA * dB):
            raise DimMismatch(f"matrix of shape {h.shape} for dims ({dA},{dB})")
        if np.max(np.abs(h - h.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise ValidationError("Hamiltonian is not Hermitian")
        h = 0.5 * (h + h.conj().T)
        h.setflags(write=False)
        object.__setattr__(self, "entries", h)
        object.__setattr__(self, "dims", (dA, dB))

    @cached_property
    def eig(self) -> tuple[np.ndarray, np.ndarray]:
        try:
            w, v = np.linalg.eigh(self.entries)
        except np.linalg.LinAlgError as exc:
            raise EigenFailure(str(exc)) from exc
        return w, v

    def to_json(self) -> str:
        h = self.entries
        return json.dumps({"dims": list(self.dims), "re": h.real.tolist(), "im": h.imag.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "Hamiltonian":
        obj = json.loads(text)
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        return cls(re + 1j * im, tuple(obj["dims"]))


PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def xx_hamiltonian() -> Hamiltonian:
    return Hamiltonian(np.kron(PAULI["X"], PAULI["X"]), (2, 2))


def random_hamiltonian(dims: tuple[int, int], rng: np.random.Generator) -> Hamiltonian:
    """Complex Gaussian entries, Hermitian part."""
    d = dims[0] * dims[1]
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return Hamiltonian(0.5 * (m + m.conj().T), dims)


def _check(h: Hamiltonian, psi: BipartitePureState) -> None:
    if tuple(h.dims) != tuple(psi.dims):
        raise DimMismatch(f"Hamiltonian dims {h.dims} vs state dims {psi.dims}")


def evolve(h: Hamiltonian, psi0: BipartitePureState, t: float) -> BipartitePureState:
    """exp(-i H t) psi0 through the eigendecomposition of H."""
    _check(h, psi0)
    w, v = h.eig
    c = v.conj().T @ psi0.amplitudes
    out = v @ (np.exp(-1j * w * t) * c)
    norm = np.linalg.norm(out)
    if abs(norm - 1.0) > NORM_TOL:
        raise EigenFailure(f"evolution lost norm: |psi| = {norm}")
    return BipartitePureState(out / norm, psi0.dims)


def _rho_A(psi: BipartitePureState) -> np.ndarray:
    m = psi.matrix
    return m @ m.conj().T


def linear_entanglement(psi: BipartitePureState) -> float:
    """1 - Tr rho_A^2."""
    r = _rho_A(psi)
    return float(1.0 - np.sum(np.abs(r) ** 2))


def state_F(psi: BipartitePureState) -> float:
    r = _rho_A(psi)
    r2 = r @ r
    z2 = np.trace(r2).real
    z3 = np.sum(r2 * r.T).real
    return float(max(z3 - z2 * z2, 0.0))


def hamiltonian_variance(h: Hamiltonian, psi: BipartitePureState) -> float:
    """<H^2> - <H>^2 (not its square root)."""
    _check(h, psi)
    hpsi = h.entries @ psi.amplitudes
    mean = np.vdot(psi.amplitudes, hpsi).real
    return float(max(np.vdot(hpsi, hpsi).real - mean * mean, 0.0))


def energy(h: Hamiltonian, psi: BipartitePureState) -> float:
    _check(h, psi)
    return float(np.vdot(psi.amplitudes, h.entries @ psi.amplitudes).real)


def commutator_rate(h: Hamiltonian, psi: BipartitePureState) -> float:
    """dE_lin/dt = 2i <psi| [rho_A x I, H] |psi>."""
    _check(h, psi)
    dB = psi.dims[1]
    r = np.kron(_rho_A(psi), np.eye(dB))
    a = psi.amplitudes
    comm = r @ h.entries - h.entries @ r
    return float((2j * np.vdot(a, comm @ a)).real)


def rate_bound_rhs(h: Hamiltonian, psi: BipartitePureState) -> float:
    return 4.0 * math.sqrt(state_F(psi)) * math.sqrt(hamiltonian_variance(h, psi))


@dataclass(frozen=True)
class RateRecord:
    t: float
    E_lin: float
    dEdt_numeric: float
    dEdt_commutator: float
    rhs: float
    loose_rhs: float
    slack: float
    satisfied: bool
    loose_satisfied: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def fd_step(times: Sequence[float]) -> float:
    t = np.asarray(times, dtype=float)
    gap = float(np.min(np.diff(t))) if t.size > 1 else 1.0
    return max(gap / 10.0, 1e-5)


def rate_bound_report(
    h: Hamiltonian, psi0: BipartitePureState, times: Sequence[float], h_step: float | None = None
) -> list[RateRecord]:
    """Per-time comparison of the entanglement rate against both bounds.

    The numeric rate is a central difference with step min(gap)/10 (floor 1e-5);
    ``slack`` = 10 h^2 max|E''| over the grid absorbs its truncation error.
    """
    _check(h, psi0)
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValidationError("times must be a non-empty 1-D sequence")
    if np.any(np.diff(t) < 0):
        raise ValidationError("times must be sorted")
    step = fd_step(t) if h_step is None else h_step
    w, v = h.eig
    c0 = v.conj().T @ psi0.amplitudes
    sqrt_var = math.sqrt(hamiltonian_variance(h, psi0))

    def state(tt: float) -> BipartitePureState:
        amp = v @ (np.exp(-1j * w * tt) * c0)
        return BipartitePureState(amp / np.linalg.norm(amp), psi0.dims)

    rows = []
    curv = 0.0
    for tt in t:
        s0, sp, sm = state(tt), state(tt + step), state(tt - step)
        e0, ep, em = (linear_entanglement(x) for x in (s0, sp, sm))
        curv = max(curv, abs(ep - 2 * e0 + em) / step**2)
        rows.append((tt, s0, e0, (ep - em) / (2 * step)))
    slack = 10.0 * step**2 * curv
    out = []
    for tt, s0, e0, rate in rows:
        rhs = 4.0 * math.sqrt(state_F(s0)) * sqrt_var
        loose = LOOSE_CONSTANT * sqrt_var
        out.append(
            RateRecord(
                t=float(tt),
                E_lin=e0,
                dEdt_numeric=float(rate),
                dEdt_commutator=commutator_rate(h, s0),
                rhs=rhs,
                loose_rhs=loose,
                slack=slack,
                satisfied=bool(abs(rate) <= rhs + slack),
                loose_satisfied=bool(abs(rate) <= loose + slack),
            )
        )
    return out
