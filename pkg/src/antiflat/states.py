"""Dense bipartite pure states, density matrices and local channels.

Computational-basis index of a bipartite amplitude vector is i_A * d_B + i_B.
For qubit registers, qubit 0 is the most significant bit of the index.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, EigenFailure, NonOrthonormalBasis, SVDFailure, ValidationError
from .spectra import Spectrum

STATE_TOL = 1e-10
DUST = 1e-9  # negative eigenvalue dust we are willing to clamp
ZERO_CUT = 1e-13  # magnitudes below this are treated as exact zeros


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class BipartitePureState:
    amplitudes: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        dA, dB = (int(x) for x in self.dims)
        if dA < 1 or dB < 1:
            raise ValidationError("dimensions must be positive")
        psi = np.asarray(self.amplitudes, dtype=complex).ravel()
        if psi.size != dA * dB:
            raise DimMismatch(f"{psi.size} amplitudes for dims ({dA},{dB})")
        norm = np.vdot(psi, psi).real
        if abs(norm - 1.0) > STATE_TOL:
            raise ValidationError(f"state norm^2 = {norm!r}, expected 1")
        object.__setattr__(self, "amplitudes", _frozen(psi))
        object.__setattr__(self, "dims", (dA, dB))

    @classmethod
    def normalized(cls, amplitudes, dims) -> "BipartitePureState":
        psi = np.asarray(amplitudes, dtype=complex).ravel()
        return cls(psi / np.linalg.norm(psi), dims)

    @property
    def matrix(self) -> np.ndarray:
        """Amplitudes reshaped to d_A x d_B."""
        return self.amplitudes.reshape(self.dims)

    def to_json(self) -> str:
        return json.dumps(
            {
                "dims": list(self.dims),
                "re": self.amplitudes.real.tolist(),
                "im": self.amplitudes.imag.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "BipartitePureState":
        obj = json.loads(text)
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        return cls(re + 1j * im, tuple(obj["dims"]))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimMismatch("density matrix must be square")
        if not np.allclose(m, m.conj().T, atol=STATE_TOL, rtol=0):
            raise ValidationError("density matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > STATE_TOL:
            raise ValidationError(f"trace {tr!r} != 1")
        m = 0.5 * (m + m.conj().T)
        if np.linalg.eigvalsh(m).min() < -DUST:
            raise ValidationError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "entries", _frozen(m))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def to_json(self) -> str:
        return json.dumps(
            {"dim": self.dim, "re": self.entries.real.ravel().tolist(), "im": self.entries.imag.ravel().tolist()}
        )

    @classmethod
    def from_json(cls, text: str) -> "DensityMatrix":
        obj = json.loads(text)
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        d = int(obj.get("dim", round(np.sqrt(re.size))))
        return cls((re + 1j * im).reshape(d, d))


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    """Basis vectors stored as the columns of a unitary matrix."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=complex)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise NonOrthonormalBasis("need d column vectors of length d")
        gram = v.conj().T @ v
        if not np.allclose(gram, np.eye(v.shape[0]), atol=STATE_TOL, rtol=0):
            raise NonOrthonormalBasis("basis vectors are not orthonormal")
        object.__setattr__(self, "vectors", _frozen(v))

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    @classmethod
    def computational(cls, d: int) -> "OrthonormalBasis":
        return cls(np.eye(d))


def density_from_pure(psi: BipartitePureState) -> DensityMatrix:
    v = psi.amplitudes
    return DensityMatrix(np.outer(v, v.conj()))


def partial_trace_B(rho: DensityMatrix, dims: tuple[int, int]) -> DensityMatrix:
    dA, dB = dims
    if rho.dim != dA * dB:
        raise DimMismatch(f"dimension {rho.dim} does not factor as {dA}x{dB}")
    r = rho.entries.reshape(dA, dB, dA, dB)
    return DensityMatrix(np.einsum("ijkj->ik", r))


def partial_trace_A(rho: DensityMatrix, dims: tuple[int, int]) -> DensityMatrix:
    dA, dB = dims
    if rho.dim != dA * dB:
        raise DimMismatch(f"dimension {rho.dim} does not factor as {dA}x{dB}")
    r = rho.entries.reshape(dA, dB, dA, dB)
    return DensityMatrix(np.einsum("ijil->jl", r))


def reduced_density(psi: BipartitePureState) -> DensityMatrix:
    """rho_A = M M^dagger for the amplitude matrix M; cheaper than the full trace."""
    m = psi.matrix
    return DensityMatrix(m @ m.conj().T)


def _repair(vals: np.ndarray, tol: float) -> Spectrum:
    vals = np.where(np.abs(vals) < ZERO_CUT, 0.0, vals)
    if vals.min() < -DUST:
        raise EigenFailure(f"eigenvalue {vals.min():.3e} below -{DUST}")
    vals = np.clip(vals, 0.0, None)
    total = vals.sum()
    if abs(total - 1.0) <= DUST:
        vals = vals / total
    return Spectrum(vals, tol)


def eigen_spectrum(rho: DensityMatrix, tol: float = STATE_TOL) -> Spectrum:
    m = rho.entries
    vals, vecs = np.linalg.eigh(m)
    resid = np.linalg.norm(m @ vecs - vecs * vals, axis=0).max()
    if resid > 1e-8:
        raise EigenFailure(f"eigen-residual {resid:.3e}")
    return _repair(vals[::-1], tol)


def schmidt_coefficients(psi: BipartitePureState, tol: float = STATE_TOL) -> Spectrum:
    """Squared singular values of the amplitude matrix, padded to min(d_A, d_B)."""
    try:
        sv = np.linalg.svd(psi.matrix, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise SVDFailure(str(exc)) from exc
    return _repair(sv**2, tol)


def dephase(rho: DensityMatrix, basis: OrthonormalBasis) -> DensityMatrix:
    """sum_k |k><k| rho |k><k| for the basis vectors |k>."""
    if rho.dim != basis.dim:
        raise DimMismatch(f"state dim {rho.dim} vs basis dim {basis.dim}")
    v = basis.vectors
    diag = np.einsum("ik,ij,jk->k", v.conj(), rho.entries, v).real
    return DensityMatrix((v * diag) @ v.conj().T)


def dephase_B(rho: DensityMatrix, dims: tuple[int, int], basis: OrthonormalBasis) -> DensityMatrix:
    """Dephase subsystem B only: sum_k (I x w_k) rho (I x w_k)."""
    dA, dB = dims
    if rho.dim != dA * dB or basis.dim != dB:
        raise DimMismatch("dims do not match state and basis")
    v = basis.vectors
    r = rho.entries.reshape(dA, dB, dA, dB)
    # rotate B into the basis, keep the B-diagonal, rotate back
    rb = np.einsum("bk,ibjc,cl->ikjl", v.conj(), r, v)
    k = np.arange(dB)
    mask = (k[:, None] == k[None, :]).astype(float)
    rb = rb * mask[None, :, None, :]
    out = np.einsum("bk,ikjl,cl->ibjc", v, rb, v.conj())
    return DensityMatrix(out.reshape(dA * dB, dA * dB))


def tensor(rho: DensityMatrix, sigma: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(np.kron(rho.entries, sigma.entries))


def pure_density(vec) -> DensityMatrix:
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return DensityMatrix(np.outer(v, v.conj()))


def diagonal_density(weights) -> DensityMatrix:
    return DensityMatrix(np.diag(np.asarray(weights, dtype=complex)))


def basis_state(index: int, dim: int) -> np.ndarray:
    e = np.zeros(dim, dtype=complex)
    e[index] = 1.0
    return e


def bell_state() -> BipartitePureState:
    return BipartitePureState.normalized([1, 0, 0, 1], (2, 2))
