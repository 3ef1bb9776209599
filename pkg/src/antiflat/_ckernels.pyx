# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; see _pykernels.py for the reference versions."""
import numpy as np
cimport numpy as cnp
from libc.math cimport log, cos, sin, fabs, sqrt, INFINITY

cnp.import_array()

cdef enum:
    H = 0
    S = 1
    SDG = 2
    X = 3
    Y = 4
    Z = 5
    CX = 6
    CZ = 7
    SWAP = 8
    PHASE = 9

cdef double FPMIN = 1e-300


def apply_circuit(double complex[::1] psi, int n, long[:, ::1] ops, double[::1] thetas):
    cdef Py_ssize_t dim = psi.shape[0]
    cdef Py_ssize_t i, j, k
    cdef long op, ma, mb
    cdef double complex u, v, ph
    cdef double r = 1.0 / sqrt(2.0)
    for k in range(ops.shape[0]):
        op = ops[k, 0]
        ma = 1 << (n - 1 - ops[k, 1])
        mb = 1 << (n - 1 - ops[k, 2])
        if op == H:
            for i in range(dim):
                if not (i & ma):
                    j = i | ma
                    u = psi[i]
                    v = psi[j]
                    psi[i] = (u + v) * r
                    psi[j] = (u - v) * r
        elif op == S:
            for i in range(dim):
                if i & ma:
                    psi[i] = psi[i] * 1j
        elif op == SDG:
            for i in range(dim):
                if i & ma:
                    psi[i] = psi[i] * (-1j)
        elif op == Z:
            for i in range(dim):
                if i & ma:
                    psi[i] = -psi[i]
        elif op == PHASE:
            ph = cos(thetas[k]) + 1j * sin(thetas[k])
            for i in range(dim):
                if i & ma:
                    psi[i] = psi[i] * ph
        elif op == X:
            for i in range(dim):
                if not (i & ma):
                    j = i | ma
                    u = psi[i]
                    psi[i] = psi[j]
                    psi[j] = u
        elif op == Y:
            for i in range(dim):
                if not (i & ma):
                    j = i | ma
                    u = psi[i]
                    psi[i] = -1j * psi[j]
                    psi[j] = 1j * u
        elif op == CX:
            for i in range(dim):
                if (i & ma) and not (i & mb):
                    j = i | mb
                    u = psi[i]
                    psi[i] = psi[j]
                    psi[j] = u
        elif op == CZ:
            for i in range(dim):
                if (i & ma) and (i & mb):
                    psi[i] = -psi[i]
        elif op == SWAP:
            for i in range(dim):
                if (i & ma) and not (i & mb):
                    j = (i ^ ma) | mb
                    u = psi[i]
                    psi[i] = psi[j]
                    psi[j] = u
        else:
            raise ValueError(f"unknown opcode {op}")
    return np.asarray(psi)


cdef double _bh_log_density(double[::1] x, double alpha) nogil:
    cdef Py_ssize_t d = x.shape[0]
    cdef Py_ssize_t i, j
    cdef double acc = 0.0, diff
    for i in range(d):
        if x[i] <= 0.0:
            return -INFINITY
        acc += alpha * log(x[i])
    for i in range(d):
        for j in range(i + 1, d):
            diff = fabs(x[i] - x[j])
            if diff == 0.0:
                return -INFINITY
            acc += 2.0 * log(diff) - log(x[i] + x[j])
    return acc


def bh_log_density(double[::1] x, double alpha):
    return _bh_log_density(x, alpha)


def metropolis_block(double[::1] x, double alpha, double step, double[:, ::1] perturb,
                     double[::1] logu, long thin, long phase, double[:, ::1] out):
    cdef Py_ssize_t d = x.shape[0]
    cdef Py_ssize_t t, i
    cdef Py_ssize_t rows = 0, acc = 0
    cdef double lp, ly
    cdef double[::1] y = np.empty(d)
    lp = _bh_log_density(x, alpha)
    with nogil:
        for t in range(logu.shape[0]):
            for i in range(d):
                y[i] = x[i] + step * perturb[t, i]
            ly = _bh_log_density(y, alpha)
            if logu[t] < ly - lp:
                for i in range(d):
                    x[i] = y[i]
                lp = ly
                acc += 1
            if (phase + t + 1) % thin == 0 and rows < out.shape[0]:
                for i in range(d):
                    out[rows, i] = x[i]
                rows += 1
    return rows, acc


def betacf(double a, double b, double x, double eps=1e-15, long max_iter=10000):
    cdef double qab = a + b, qap = a + 1.0, qam = a - 1.0
    cdef double c = 1.0, d, h, aa, delta
    cdef long m, m2
    d = 1.0 - qab * x / qap
    if fabs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if fabs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if fabs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if fabs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if fabs(delta - 1.0) < eps:
            return h, m
    return h, max_iter + 1
