"""Reference (pure numpy/Python) implementations of the hot kernels.

The compiled twins in ``_ckernels.pyx`` follow these line by line; tests
run both on identical inputs.
"""
import math

import numpy as np

H, S, SDG, X, Y, Z, CX, CZ, SWAP, PHASE = range(10)
_R = 1.0 / math.sqrt(2.0)
_FPMIN = 1e-300


def _at(q, v):
    return (slice(None),) * q + (v,)


def apply_circuit(psi, n, ops, thetas):
    """Apply a gate list to a statevector in place (qubit 0 = most significant bit)."""
    t = psi.reshape((2,) * n)
    for k in range(ops.shape[0]):
        op, a, b = int(ops[k, 0]), int(ops[k, 1]), int(ops[k, 2])
        if op == H:
            x0 = t[_at(a, 0)].copy()
            x1 = t[_at(a, 1)].copy()
            t[_at(a, 0)] = (x0 + x1) * _R
            t[_at(a, 1)] = (x0 - x1) * _R
        elif op == S:
            t[_at(a, 1)] *= 1j
        elif op == SDG:
            t[_at(a, 1)] *= -1j
        elif op == Z:
            t[_at(a, 1)] *= -1.0
        elif op == PHASE:
            t[_at(a, 1)] *= complex(math.cos(thetas[k]), math.sin(thetas[k]))
        elif op == X or op == Y:
            x0 = t[_at(a, 0)].copy()
            x1 = t[_at(a, 1)].copy()
            if op == X:
                t[_at(a, 0)], t[_at(a, 1)] = x1, x0
            else:
                t[_at(a, 0)], t[_at(a, 1)] = -1j * x1, 1j * x0
        elif op == CX:
            sub = t[_at(a, 1)]
            tb = b - 1 if b > a else b
            y0 = sub[_at(tb, 0)].copy()
            sub[_at(tb, 0)] = sub[_at(tb, 1)]
            sub[_at(tb, 1)] = y0
        elif op == CZ:
            sub = t[_at(a, 1)]
            tb = b - 1 if b > a else b
            sub[_at(tb, 1)] *= -1.0
        elif op == SWAP:
            t[...] = np.swapaxes(t, a, b).copy()
        else:
            raise ValueError(f"unknown opcode {op}")
    return psi


def bh_log_density(x, alpha):
    """log of prod_{i<j} (x_i-x_j)^2/(x_i+x_j) * prod x_i^alpha; -inf off the open simplex."""
    d = x.shape[0]
    acc = 0.0
    for i in range(d):
        if x[i] <= 0.0:
            return -math.inf
        acc += alpha * math.log(x[i])
    for i in range(d):
        for j in range(i + 1, d):
            diff = abs(x[i] - x[j])
            if diff == 0.0:
                return -math.inf
            acc += 2.0 * math.log(diff) - math.log(x[i] + x[j])
    return acc


def metropolis_block(x, alpha, step, perturb, logu, thin, phase, out):
    """Run len(logu) Metropolis steps from x (updated in place).

    After step t the state is recorded into the next row of ``out`` whenever
    (phase + t + 1) % thin == 0. Returns (rows written, proposals accepted).
    """
    d = x.shape[0]
    lp = bh_log_density(x, alpha)
    y = np.empty(d)
    rows = 0
    acc = 0
    for t in range(logu.shape[0]):
        for i in range(d):
            y[i] = x[i] + step * perturb[t, i]
        ly = bh_log_density(y, alpha)
        if logu[t] < ly - lp:
            x[:] = y
            lp = ly
            acc += 1
        if (phase + t + 1) % thin == 0 and rows < out.shape[0]:
            out[rows, :] = x
            rows += 1
    return rows, acc


def betacf(a, b, x, eps=1e-15, max_iter=10000):
    """Lentz continued fraction for the incomplete beta; returns (value, iterations)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h, m
    return h, max_iter + 1
