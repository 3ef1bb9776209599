"""Bures-Hall eigenvalue sampling: exact for two qubits, Metropolis in general."""
from __future__ import annotations

import math

import numpy as np

from .. import kernels
from ..errors import BadDims, ChainNotConverged
from ..quantifiers import batch_F
from ..spectra import Spectrum
from .rng import RngLike, as_generator

BURN_IN = 10_000
THIN = 10
_BLOCK = 1 << 15


def bures_binary_density(lam):
    """2 (1-2l)^2 / (pi sqrt(l (1-l))) on (0, 1)."""
    lam = np.asarray(lam, dtype=float)
    return 2.0 * (1.0 - 2.0 * lam) ** 2 / (np.pi * np.sqrt(lam * (1.0 - lam)))


def bures_binary_batch(n: int, rng: RngLike = None) -> np.ndarray:
    """n draws of l from the two-qubit Bures-Hall law.

    Proposal: arcsine law l = sin^2(pi u / 2); accept with probability (1-2l)^2,
    which is exactly the density ratio (envelope constant 2).
    """
    g = as_generator(rng)
    out = np.empty(0)
    while out.size < n:
        m = max(2 * (n - out.size) + 64, 256)
        lam = np.sin(0.5 * np.pi * g.random(m)) ** 2
        keep = g.random(m) < (1.0 - 2.0 * lam) ** 2
        out = np.concatenate([out, lam[keep]])
    return out[:n]


def bures_hall_sample_binary(rng: RngLike = None) -> float:
    return float(bures_binary_batch(1, rng)[0])


def bures_alpha(dA: int, dB: int) -> float:
    return dB - dA - 0.5


def bures_log_density(lam: np.ndarray, dA: int, dB: int) -> float:
    """log prod_{i<j} (l_i-l_j)^2/(l_i+l_j) prod l_i^(dB-dA-1/2), unnormalized."""
    return float(kernels.bh_log_density(np.ascontiguousarray(lam, dtype=float), bures_alpha(dA, dB)))


def default_step(d: int) -> float:
    return 0.6 / math.sqrt(d)


def bures_hall_chain(
    dA: int,
    dB: int,
    n: int,
    rng: RngLike = None,
    burn_in: int = BURN_IN,
    thin: int = THIN,
    step: float | None = None,
) -> tuple[np.ndarray, float]:
    """Metropolis chain on the simplex; returns (n x dA descending samples, acceptance rate).

    Proposal y = x + step (D1 - D2) with D1, D2 iid flat Dirichlet: zero-sum and
    symmetric, so the plain Metropolis ratio applies.
    """
    if dA > dB or dA < 1:
        raise BadDims(f"need 1 <= d_A <= d_B, got ({dA}, {dB})")
    if dA == 1:
        return np.ones((n, 1)), 1.0
    g = as_generator(rng)
    alpha = bures_alpha(dA, dB)
    step = default_step(dA) if step is None else step
    x = g.dirichlet(np.ones(dA))
    out = np.empty((n, dA))
    accepted = total = 0

    def run(nsteps: int, record: np.ndarray, phase: int) -> int:
        nonlocal accepted, total
        ones = np.ones(dA)
        perturb = np.ascontiguousarray(g.dirichlet(ones, nsteps) - g.dirichlet(ones, nsteps))
        logu = np.log(g.random(nsteps))
        rows, acc = kernels.metropolis_block(x, alpha, step, perturb, logu, thin, phase, record)
        accepted += acc
        total += nsteps
        return rows

    empty = np.empty((0, dA))
    left = burn_in
    while left > 0:
        m = min(left, _BLOCK)
        run(m, empty, 0)
        left -= m
    filled = 0
    while filled < n:
        m = min((n - filled) * thin, _BLOCK - _BLOCK % thin)
        filled += run(m, out[filled:], 0)
    out = np.sort(out / out.sum(axis=1, keepdims=True), axis=1)[:, ::-1]
    return np.ascontiguousarray(out), accepted / max(total, 1)


def batch_means_stderr(values: np.ndarray, n_batches: int = 50) -> float:
    """Standard error of the mean from non-overlapping batch means."""
    v = np.asarray(values, dtype=float)
    b = max(2, min(n_batches, v.size // 2))
    size = v.size // b
    means = v[: b * size].reshape(b, size).mean(axis=1)
    return float(means.std(ddof=1) / math.sqrt(b))


def bures_hall_general_batch(
    dA: int,
    dB: int,
    n: int,
    rng: RngLike = None,
    burn_in: int = BURN_IN,
    thin: int = THIN,
    step: float | None = None,
    z_max: float = 5.0,
) -> np.ndarray:
    """Two independent chains of n/2 samples each; ChainNotConverged if their mean F disagree."""
    g = as_generator(rng)
    seeds = g.integers(0, 2**63 - 1, size=2)
    half = max(n // 2, 2)
    a, _ = bures_hall_chain(dA, dB, half, np.random.default_rng(seeds[0]), burn_in, thin, step)
    b, _ = bures_hall_chain(dA, dB, n - half, np.random.default_rng(seeds[1]), burn_in, thin, step)
    if dA > 1 and min(len(a), len(b)) >= 20:
        fa, fb = batch_F(a), batch_F(b)
        se = math.hypot(batch_means_stderr(fa), batch_means_stderr(fb))
        z = abs(fa.mean() - fb.mean()) / se if se > 0 else 0.0
        if z > z_max:
            raise ChainNotConverged(f"independent chains disagree on mean F by {z:.1f} standard errors")
    return np.concatenate([a, b])


def bures_hall_sample_general(
    dA: int, dB: int, rng: RngLike = None, burn_in: int = BURN_IN, thin: int = THIN
) -> Spectrum:
    """A single Bures-Hall spectrum drawn after burn-in."""
    w, _ = bures_hall_chain(dA, dB, 1, rng, burn_in, thin)
    return Spectrum(w[0])
