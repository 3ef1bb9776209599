"""Densities of spectral functionals for one qubit against a K-dimensional partner.

The qubit spectrum is (l, 1-l). F(l) = l (1-l) (1-2l)^2 rises from 0 to 1/16 and
back twice on (0, 1), so every f in (0, 1/16) has four preimages.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import beta as beta_fn

from ..errors import DerivativeZero, OutOfSupport, ValidationError

F_MAX = 1.0 / 16.0
LOGL_MAX = math.log(9.0 / 8.0)


def binary_F(lam):
    lam = np.asarray(lam, dtype=float)
    return lam * (1.0 - lam) * (1.0 - 2.0 * lam) ** 2


def binary_dF(lam):
    """d/dl of l(1-l)(1-2l)^2 = (1-2l)(1 - 8 l (1-l))."""
    lam = np.asarray(lam, dtype=float)
    return (1.0 - 2.0 * lam) * (1.0 - 8.0 * lam * (1.0 - lam))


def binary_logL(lam):
    """log(Tr rho^3 / (Tr rho^2)^2) for spectrum (l, 1-l)."""
    lam = np.asarray(lam, dtype=float)
    z2 = lam**2 + (1.0 - lam) ** 2
    z3 = lam**3 + (1.0 - lam) ** 3
    return np.log(z3 / z2**2)


def F_preimages(f: float) -> np.ndarray:
    """The four l in (0, 1) with F(l) = f, ascending."""
    if not 0.0 < f < F_MAX:
        raise OutOfSupport(f"f must lie in (0, 1/16), got {f}")
    s = math.sqrt(1.0 - 16.0 * f)
    roots = [0.5 * (1 + sg * math.sqrt(1 + sh * s) / math.sqrt(2)) for sg in (-1, 1) for sh in (1, -1)]
    return np.array(sorted(roots))


def haar_binary_lambda_density(lam, K: int = 2):
    """Density of one eigenvalue l of rho_A for (2, K) Haar states, on (0, 1)."""
    if K < 2:
        raise ValidationError(f"K must be >= 2, got {K}")
    lam = np.asarray(lam, dtype=float)
    norm = beta_fn(K - 1, K - 1) - 4.0 * beta_fn(K, K)
    return (1.0 - 2.0 * lam) ** 2 * (lam * (1.0 - lam)) ** (K - 2) / norm


def bures_binary_lambda_density(lam):
    lam = np.asarray(lam, dtype=float)
    return 2.0 * (1.0 - 2.0 * lam) ** 2 / (np.pi * np.sqrt(lam * (1.0 - lam)))


def _check_f(f: float) -> None:
    if not 0.0 < f < F_MAX:
        raise OutOfSupport(f"f must lie in (0, 1/16), got {f}")


def pdf_F_haar_binary(f: float) -> float:
    """Density of F for Haar-random two-qubit states."""
    _check_f(f)
    s = math.sqrt(1.0 - 16.0 * f)
    a = math.sqrt((s - 1.0) * (16.0 * f - 1.0)) / (1.0 - 16.0 * f)
    b = math.sqrt(1.0 / s + 1.0 / (1.0 - 16.0 * f))
    return 3.0 * math.sqrt(2.0) * (a + b)


def pdf_F_bures_binary(f: float) -> float:
    """Density of F for two-qubit Bures-Hall states."""
    _check_f(f)
    return 4.0 / (math.pi * math.sqrt(f * (1.0 - 16.0 * f)))


def _logL_bits_density(x: float) -> float:
    # closed form in base-2 logarithms; inner roots may be imaginary, only moduli enter
    p1, p2, p3 = 2.0 ** (x + 1), 2.0 ** (x + 2), 2.0 ** (x + 3)
    s = math.sqrt(9.0 - p3)
    A = s - p1 + 3.0
    B = s + p1 - 3.0
    if 18.0 - 17.0 * p1 + 4.0 ** (x + 2) == 0.0 or B == 0.0:
        return math.inf  # rounding onto the endpoint, where the density diverges
    t1 = 2.0 * A * abs(cmath.sqrt(A) * (p2 * s - 3.0 * s + p3 - 9.0) / (18.0 - 17.0 * p1 + 4.0 ** (x + 2)))
    t2 = 2.0 * B * abs((s - 3.0) * (3.0 * s + p2 - 9.0) / (cmath.sqrt(B) * (3.0 * s + p3 - 9.0)))
    return (t1 - t2) * 2.0 ** (0.5 * (-3.0 * x - 7.0)) * math.log(8.0)


def pdf_logL_haar_binary(x: float, base: str = "e") -> float:
    """Density of logL for Haar-random two-qubit states.

    ``base="e"`` (default) takes logL in nats; ``base=2`` in bits.
    """
    if base in ("e", "nats"):
        if not 0.0 < x < LOGL_MAX:
            raise OutOfSupport(f"x must lie in (0, log(9/8)), got {x}")
        return _logL_bits_density(x / math.log(2.0)) / math.log(2.0)
    if base in (2, "2", "bits"):
        if not 0.0 < x < math.log2(9.0 / 8.0):
            raise OutOfSupport(f"x must lie in (0, log2(9/8)), got {x}")
        return _logL_bits_density(x)
    raise ValidationError(f"unknown base {base!r}")


@dataclass(frozen=True)
class MappedDensity:
    """Tabulated density of g(l); ``excluded`` marks values at critical levels of g."""

    values: np.ndarray
    density: np.ndarray
    excluded: np.ndarray
    critical_points: np.ndarray


def _critical_points(deriv: Callable, lo: float, hi: float, scan: int) -> np.ndarray:
    xs = np.linspace(lo, hi, scan + 1)
    ds = np.array([deriv(x) for x in xs], dtype=float)
    scale = float(np.max(np.abs(ds)))
    if scale == 0.0 or not np.isfinite(scale):
        raise DerivativeZero("map is flat on its domain; the image law is a point mass")
    crit = []
    for i in range(scan):
        a, b = ds[i], ds[i + 1]
        if a == 0.0 and 0 < i:
            crit.append(xs[i])
        elif a * b < 0:
            crit.append(brentq(deriv, xs[i], xs[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
    return np.array(crit)


def mapped_pdf(
    base_density: Callable[[float], float],
    measure_map: Callable[[float], float],
    derivative: Callable[[float], float],
    values,
    domain: tuple[float, float] = (0.0, 1.0),
    scan: int = 2048,
    zero_tol: float = 1e-12,
) -> MappedDensity:
    """Change of variables P(v) = sum over preimages l of p(l) / |g'(l)|.

    ``measure_map`` must be piecewise monotone on ``domain``; pieces are split at
    the sign changes of ``derivative``. Values equal to a critical level are
    marked excluded (density NaN) rather than reported as infinite.
    """
    lo, hi = domain
    crit = _critical_points(derivative, lo, hi, scan)
    knots = np.concatenate([[lo], crit, [hi]])
    levels = np.array([measure_map(k) for k in knots])
    deriv_scale = max(abs(derivative(x)) for x in np.linspace(lo, hi, 65))
    vals = np.atleast_1d(np.asarray(values, dtype=float))
    dens = np.zeros(vals.size)
    excluded = np.zeros(vals.size, dtype=bool)
    crit_levels = levels[1:-1]
    for j, v in enumerate(vals):
        if crit_levels.size and np.any(np.isclose(v, crit_levels, rtol=0, atol=zero_tol)):
            excluded[j] = True
            dens[j] = np.nan
            continue
        total = 0.0
        for a, b, ga, gb in zip(knots[:-1], knots[1:], levels[:-1], levels[1:]):
            if not min(ga, gb) <= v <= max(ga, gb) or ga == gb:
                continue
            lam = brentq(lambda t: measure_map(t) - v, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)
            slope = abs(derivative(lam))
            if slope <= zero_tol * deriv_scale:
                excluded[j] = True
                break
            total += base_density(lam) / slope
        dens[j] = np.nan if excluded[j] else total
    return MappedDensity(vals, dens, excluded, crit)


def bin_average(pdf: Callable[[float], float], edges: np.ndarray) -> np.ndarray:
    """Mean of ``pdf`` over each bin, by adaptive quadrature."""
    out = np.empty(len(edges) - 1)
    for i, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
        val, _ = quad(pdf, a, b, limit=200)
        out[i] = val / (b - a)
    return out
