"""Uniform random Clifford unitaries and k-doped Clifford states.

Sampling uses the coset chain Sp(2n) > Sp(2n-2) > ...: for each qubit i a
uniformly random anticommuting Pauli pair (a, b) on qubits i..n-1 is swept to
(X_i, Z_i) by H/S/CNOT/SWAP gates; the inverse sweep maps (X_i, Z_i) to (a, b).
Composing the inverse sweeps and a uniformly random Pauli gives a uniformly
distributed Clifford (up to global phase).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import ValidationError
from ..states import BipartitePureState
from .rng import RngLike, as_generator

H, S, SDG, X, Y, Z, CX, CZ, SWAP, PHASE = (kernels.OPCODES[k] for k in
                                           ("H", "S", "SDG", "X", "Y", "Z", "CX", "CZ", "SWAP", "PHASE"))
MAX_QUBITS = 12


def _emit(gates, op, q1, q2, vecs):
    gates.append((op, q1, q2))
    for x, z in vecs:
        if op == H:
            x[q1], z[q1] = z[q1], x[q1]
        elif op == S or op == SDG:
            z[q1] ^= x[q1]
        elif op == CX:
            x[q2] ^= x[q1]
            z[q1] ^= z[q2]
        elif op == SWAP:
            x[q1], x[q2] = x[q2], x[q1]
            z[q1], z[q2] = z[q2], z[q1]


def _gather_x(gates, vecs, target, lo, n, keep_target):
    """Turn vecs[0] into X on one qubit, then move it to ``target``."""
    x, z = vecs[0]
    for j in range(lo, n):
        if z[j]:
            _emit(gates, S if x[j] else H, j, j, vecs)
    support = [j for j in range(lo, n) if x[j]]
    while len(support) > 1:
        for k in range(0, len(support) - 1, 2):
            _emit(gates, CX, support[k], support[k + 1], vecs)
        support = support[::2]
    if support[0] != target:
        if keep_target:
            raise AssertionError("sweep lost the pivot qubit")
        _emit(gates, SWAP, target, support[0], vecs)


def _sweep(ax, az, bx, bz, i, n):
    """Gates G with G a G^dag = X_i and G b G^dag = Z_i (up to signs)."""
    gates = []
    a, b = (ax, az), (bx, bz)
    _gather_x(gates, [a, b], i, i, n, keep_target=False)
    is_z_i = bz[i] == 1 and bx[i] == 0 and not any(bx[i + 1 :]) and not any(bz[i + 1 :])
    if not is_z_i:
        _emit(gates, H, i, i, [a, b])
        _gather_x(gates, [b, a], i, i, n, keep_target=True)
        _emit(gates, H, i, i, [a, b])
    return gates


def _inverse(gates):
    inv = {S: SDG, SDG: S}
    return [(inv.get(op, op), q1, q2) for op, q1, q2 in reversed(gates)]


def _unpack(word: int, m: int, n: int) -> tuple[list[int], list[int]]:
    # low m bits -> x on qubits n-m..n-1, next m bits -> z
    pad = [0] * (n - m)
    return pad + [(word >> j) & 1 for j in range(m)], pad + [(word >> (m + j)) & 1 for j in range(m)]


def _anticommute(u: int, v: int, m: int) -> bool:
    mask = (1 << m) - 1
    return bin(((u & mask) & (v >> m)) ^ ((u >> m) & (v & mask))).count("1") & 1 == 1


def random_clifford_circuit(n: int, rng: RngLike = None) -> np.ndarray:
    """Gate list (op, q1, q2) for a uniformly random n-qubit Clifford."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValidationError(f"n must lie in [1, {MAX_QUBITS}], got {n}")
    g = as_generator(rng)
    stages = []
    for i in range(n):
        m = n - i
        a = int(g.integers(1, 1 << (2 * m)))  # uniform nonzero Pauli on qubits i..n-1
        while True:
            b = int(g.integers(0, 1 << (2 * m)))
            if _anticommute(a, b, m):
                break
        ax, az = _unpack(a, m, n)
        bx, bz = _unpack(b, m, n)
        stages.append(_inverse(_sweep(ax, az, bx, bz, i, n)))
    pauli = int(g.integers(0, 1 << (2 * n)))
    ops = [(X, q, q) for q in range(n) if (pauli >> q) & 1] + [(Z, q, q) for q in range(n) if (pauli >> (n + q)) & 1]
    for st in reversed(stages):
        ops.extend(st)
    return np.array(ops, dtype=np.int64).reshape(-1, 3)


def _tableau_from_circuit(n: int, ops: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Images of X_0..X_{n-1}, Z_0..Z_{n-1} as rows [x | z] with sign bits."""
    t = np.eye(2 * n, dtype=np.uint8)
    r = np.zeros(2 * n, dtype=np.uint8)
    xs, zs = t[:, :n], t[:, n:]

    def h(q):
        r[:] ^= xs[:, q] & zs[:, q]
        tmp = xs[:, q].copy()
        xs[:, q] = zs[:, q]
        zs[:, q] = tmp

    def s(q):
        r[:] ^= xs[:, q] & zs[:, q]
        zs[:, q] ^= xs[:, q]

    def cx(c, q):
        r[:] ^= xs[:, c] & zs[:, q] & (xs[:, q] ^ zs[:, c] ^ 1)
        xs[:, q] ^= xs[:, c]
        zs[:, c] ^= zs[:, q]

    for op, a, b in ops:
        if op == H:
            h(a)
        elif op == S:
            s(a)
        elif op == SDG:
            s(a), s(a), s(a)
        elif op == X:
            r[:] ^= zs[:, a]
        elif op == Z:
            r[:] ^= xs[:, a]
        elif op == Y:
            r[:] ^= xs[:, a] ^ zs[:, a]
        elif op == CX:
            cx(a, b)
        elif op == CZ:
            h(b), cx(a, b), h(b)
        elif op == SWAP:
            cx(a, b), cx(b, a), cx(a, b)
        else:
            raise ValidationError(f"opcode {op} is not a Clifford gate")
    return t, r


@dataclass(frozen=True, eq=False)
class CliffordTableau:
    """Clifford unitary: symplectic matrix, sign bits, and a realizing circuit.

    Row i of ``matrix`` is the image of X_i (i < n) or Z_{i-n} as [x | z];
    ``phases[i]`` is its sign bit. Y is the Hermitian X Z product with factor i.
    """

    n: int
    matrix: np.ndarray
    phases: np.ndarray
    circuit: np.ndarray

    @classmethod
    def from_circuit(cls, n: int, ops: np.ndarray) -> "CliffordTableau":
        t, r = _tableau_from_circuit(n, ops)
        return cls(n, t, r, np.ascontiguousarray(ops, dtype=np.int64).reshape(-1, 3))

    def is_symplectic(self) -> bool:
        n = self.n
        omega = np.zeros((2 * n, 2 * n), dtype=np.int64)
        omega[:n, n:] = np.eye(n, dtype=np.int64)
        omega[n:, :n] = np.eye(n, dtype=np.int64)
        m = self.matrix.astype(np.int64)
        return bool(np.array_equal((m @ omega @ m.T) % 2, omega))

    def apply(self, psi: np.ndarray) -> np.ndarray:
        out = np.array(psi, dtype=complex)
        kernels.apply_circuit(out, self.n, self.circuit, np.zeros(len(self.circuit)))
        return out


def random_clifford(n: int, rng: RngLike = None) -> CliffordTableau:
    return CliffordTableau.from_circuit(n, random_clifford_circuit(n, rng))


def doped_circuit(n: int, k: int, theta: float, rng: RngLike = None) -> tuple[np.ndarray, np.ndarray]:
    """Gates for C_k K C_{k-1} ... K C_0, one phase gate per doping on a uniform qubit."""
    if k < 0:
        raise ValidationError("k must be >= 0")
    g = as_generator(rng)
    parts = [random_clifford_circuit(n, g)]
    for _ in range(k):
        q = int(g.integers(n))
        parts.append(np.array([[PHASE, q, q]], dtype=np.int64))
        parts.append(random_clifford_circuit(n, g))
    ops = np.ascontiguousarray(np.concatenate(parts))
    thetas = np.where(ops[:, 0] == PHASE, float(theta), 0.0)
    return ops, np.ascontiguousarray(thetas)


def doped_statevector(n: int, k: int, theta: float, rng: RngLike = None) -> np.ndarray:
    ops, thetas = doped_circuit(n, k, theta, rng)
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1.0
    kernels.apply_circuit(psi, n, ops, thetas)
    return psi


def doped_state(n: int, k: int, theta: float, rng: RngLike = None, cut: int | None = None) -> BipartitePureState:
    """k-doped Clifford state on n qubits, split after the first ``cut`` qubits (default n // 2)."""
    cut = n // 2 if cut is None else cut
    if not 1 <= cut < n:
        raise ValidationError(f"cut must satisfy 1 <= cut < n, got {cut}")
    psi = doped_statevector(n, k, theta, rng)
    psi /= np.linalg.norm(psi)
    return BipartitePureState(psi, (2**cut, 2 ** (n - cut)))


def stabilizer_state(n: int, rng: RngLike = None) -> np.ndarray:
    """Uniformly random Clifford applied to |0...0>."""
    return doped_statevector(n, 0, 0.0, rng)


__all__ = [
    "CliffordTableau",
    "MAX_QUBITS",
    "doped_circuit",
    "doped_state",
    "doped_statevector",
    "random_clifford",
    "random_clifford_circuit",
    "stabilizer_state",
]
