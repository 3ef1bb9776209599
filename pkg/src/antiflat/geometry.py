"""KL and Bregman divergences, and the identities tying them to the quantifiers."""
from __future__ import annotations

import enum
import math

import numpy as np

from .errors import DimMismatch, SupportMismatch, ValidationError, ZeroWeight
from .quantifiers import capacity, linear_renyi_spread, log_antiflatness
from .spectra import Spectrum, escort, renyi_entropy


class BregmanGenerator(enum.Enum):
    NEG_SHANNON_ENTROPY = "NegShannonEntropy"  # sum p log p
    SECOND_MOMENT = "SecondMoment"  # sum p^2

    def evaluate(self, p: np.ndarray) -> float:
        if self is BregmanGenerator.SECOND_MOMENT:
            return float(np.dot(p, p))
        nz = p > 0
        return float(np.sum(p[nz] * np.log(p[nz])))

    def gradient(self, p: np.ndarray) -> np.ndarray:
        if self is BregmanGenerator.SECOND_MOMENT:
            return 2.0 * p
        with np.errstate(divide="ignore"):
            return np.log(p) + 1.0


def _aligned(p: Spectrum, q: Spectrum) -> tuple[np.ndarray, np.ndarray]:
    if p.dim != q.dim:
        raise DimMismatch(f"dims {p.dim} and {q.dim} differ")
    return p.weights, q.weights


def kl_divergence(p: Spectrum, q: Spectrum) -> float:
    """sum p log(p/q) over the support of p; spectra are compared index by index."""
    a, b = _aligned(p, q)
    nz = a > 0
    if np.any(b[nz] == 0):
        raise SupportMismatch("support of p is not contained in support of q")
    return float(max(np.sum(a[nz] * (np.log(a[nz]) - np.log(b[nz]))), 0.0))


def bregman(gen: BregmanGenerator, p: Spectrum, q: Spectrum) -> float:
    a, b = _aligned(p, q)
    if gen is BregmanGenerator.NEG_SHANNON_ENTROPY:
        # restrict to the support of q; p must live there too
        if np.any(a[b == 0] > 0):
            raise SupportMismatch("support of p is not contained in support of q")
        keep = b > 0
        a, b = a[keep], b[keep]
    val = gen.evaluate(a) - gen.evaluate(b) - float(np.dot(gen.gradient(b), a - b))
    return max(val, 0.0)


def escort_curvature_capacity(s: Spectrum, eps: float) -> float:
    """2/eps^2 * KL(p || escort(p, 1 + eps)); tends to the capacity as eps -> 0."""
    if not 0.0 < eps <= 0.1:
        raise ValidationError(f"eps must lie in (0, 0.1], got {eps}")
    if s.rank != s.dim:
        raise ZeroWeight("escort curvature needs a full-support spectrum")
    return 2.0 / eps**2 * kl_divergence(s, escort(s, 1.0 + eps))


def euclidean_spread_identity(s: Spectrum) -> float:
    """sum p (p - Z_2)^2, the variance of the spectrum under itself."""
    p = s.weights
    z2 = float(np.dot(p, p))
    return float(np.dot(p, (p - z2) ** 2))


def cov_unification(s: Spectrum) -> float:
    """log(1 + F/Z_2^2): squared coefficient of variation form of logL."""
    p = s.weights
    z2 = float(np.dot(p, p))
    return math.log1p(euclidean_spread_identity(s) / z2**2)


def entropy_slope_capacity(s: Spectrum, h: float = 1e-4) -> float:
    """-2 dS_alpha/d alpha at alpha = 1 by central difference."""
    return -(renyi_entropy(s, 1 + h) - renyi_entropy(s, 1 - h)) / h


def geometry_report(s: Spectrum, eps: float = 1e-3) -> dict:
    out = {"capacity_direct": capacity(s)}
    out["kl_curvature"] = escort_curvature_capacity(s, eps) if s.rank == s.dim else None
    out["euclid_identity"] = euclidean_spread_identity(s)
    out["F"] = linear_renyi_spread(s)
    out["cov_identity"] = cov_unification(s)
    out["logL"] = log_antiflatness(s)
    return out
