"""Haar-random bipartite pure states and the induced eigenvalue law."""
from __future__ import annotations

import numpy as np

from ..errors import BadDims, ValidationError
from ..spectra import Spectrum
from ..states import BipartitePureState
from .rng import RngLike, as_generator


def _check_dims(dA: int, dB: int) -> None:
    if dA < 1 or dB < 1:
        raise ValidationError(f"dimensions must be >= 1, got ({dA}, {dB})")


def haar_pure(dA: int, dB: int, rng: RngLike = None) -> BipartitePureState:
    """Normalized vector of i.i.d. complex Gaussians (unitarily invariant)."""
    _check_dims(dA, dB)
    g = as_generator(rng)
    v = g.standard_normal(dA * dB) + 1j * g.standard_normal(dA * dB)
    return BipartitePureState(v / np.linalg.norm(v), (dA, dB))


def haar_reduced_batch(dA: int, dB: int, n: int, rng: RngLike = None) -> np.ndarray:
    """n reduced states rho_A = M M^dagger / tr, shape (n, dA, dA)."""
    _check_dims(dA, dB)
    g = as_generator(rng)
    m = g.standard_normal((n, dA, dB)) + 1j * g.standard_normal((n, dA, dB))
    rho = m @ np.conj(np.swapaxes(m, 1, 2))
    tr = np.einsum("nii->n", rho).real
    return rho / tr[:, None, None]


def haar_spectra_batch(dA: int, dB: int, n: int, rng: RngLike = None) -> np.ndarray:
    """Descending eigenvalues of n Haar reduced states, shape (n, dA)."""
    w = np.linalg.eigvalsh(haar_reduced_batch(dA, dB, n, rng))[:, ::-1]
    return np.clip(w, 0.0, None)


def lloyd_pagels_density(lam: Spectrum, dA: int, dB: int) -> float:
    """Unnormalized prod_{i<j}(l_j - l_i)^2 prod l_i^(dB - dA)."""
    if dA > dB:
        raise BadDims(f"need d_A <= d_B, got ({dA}, {dB})")
    w = lam.weights
    if w.size != dA:
        raise BadDims(f"spectrum length {w.size} != d_A = {dA}")
    diff = w[:, None] - w[None, :]
    vdm = np.prod(diff[np.triu_indices(dA, 1)] ** 2)
    return float(vdm * np.prod(w ** (dB - dA)))
