"""Antiflatness quantifiers, gap measures, jump-spectrum extremals and Pareto scans."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import BadShape, DimMismatch, DimTooSmall, NoConvergence, ValidationError
from .spectra import DEFAULT_GRID, Alpha, RenyiGrid, Spectrum, renyi_entropy

# --- batched kernels on raw weight arrays (last axis = spectrum) -----------


def moments(w: np.ndarray, q: float) -> np.ndarray:
    """Z_q along the last axis, with 0^q = 0."""
    w = np.asarray(w, dtype=float)
    return np.sum(np.where(w > 0, w, 0.0) ** q, axis=-1)


def batch_F(w: np.ndarray) -> np.ndarray:
    return moments(w, 3) - moments(w, 2) ** 2


def batch_logL(w: np.ndarray) -> np.ndarray:
    return np.log(moments(w, 3) / moments(w, 2) ** 2)


def batch_V(w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        lw = np.where(w > 0, np.log(np.where(w > 0, w, 1.0)), 0.0)
    m1 = np.sum(w * lw, axis=-1)
    m2 = np.sum(w * lw * lw, axis=-1)
    return np.maximum(m2 - m1 * m1, 0.0)


# --- single-spectrum quantifiers -------------------------------------------


def capacity(s: Spectrum) -> float:
    """Variance of the surprisal -log p under p (nats^2)."""
    return float(batch_V(s.weights))


def linear_renyi_spread(s: Spectrum) -> float:
    """F = Z_3 - Z_2^2."""
    p = s.support
    z2 = np.sum(p * p)
    return float(max(np.sum(p**3) - z2 * z2, 0.0))


def log_antiflatness(s: Spectrum) -> float:
    """log(Z_3 / Z_2^2) = 2 (S_2 - S_3)."""
    p = s.support
    return float(max(math.log(np.sum(p**3) / np.sum(p * p) ** 2), 0.0))


def gap_measure(s: Spectrum) -> float:
    d = s.dim
    if d < 2:
        raise DimTooSmall("gap measure needs d >= 2")
    return float(np.sum(np.diff(s.weights) ** 2) / (d - 1))


def weighted_gap_measure(s: Spectrum, p: Spectrum) -> float:
    """sum_{i<j} p_i p_j (l_i - l_j)^2, i.e. the variance of l under p."""
    if s.dim != p.dim:
        raise DimMismatch(f"dims {s.dim} and {p.dim} differ")
    lam, pw = s.weights, p.weights
    mean = np.dot(pw, lam)
    return float(np.dot(pw, (lam - mean) ** 2))


MEASURES: dict[str, Callable[[Spectrum], float]] = {
    "F": linear_renyi_spread,
    "logL": log_antiflatness,
    "V": capacity,
    "gamma": gap_measure,
}


# --- jump spectra and maxima -----------------------------------------------


@dataclass(frozen=True)
class JumpSpectrum:
    r: float
    m: int
    n: int
    d: int

    def weights(self) -> np.ndarray:
        w = np.zeros(self.d)
        w[: self.m] = (1.0 - self.r) / self.m
        w[self.m : self.m + self.n] = self.r / self.n
        return w


def jump_spectrum(r: float, m: int, n: int, d: int) -> Spectrum:
    """(1-r)/m repeated m times, then r/n repeated n times, zero padded to d."""
    if not 0.0 <= r <= 1.0:
        raise BadShape(f"r={r} outside [0,1]")
    if m < 1 or n < 1 or m + n > d:
        raise BadShape(f"need m,n >= 1 and m+n <= d, got m={m}, n={n}, d={d}")
    return Spectrum(JumpSpectrum(r, m, n, d).weights())


def _jump_Z(r: float, d: int, q: int) -> float:
    return (1.0 - r) ** q + (d - 1) * (r / (d - 1)) ** q


def _jump_dZ(r: float, d: int, q: int) -> float:
    return -q * (1.0 - r) ** (q - 1) + q * (r / (d - 1)) ** (q - 1)


def jump_F(r: float, d: int) -> float:
    return _jump_Z(r, d, 3) - _jump_Z(r, d, 2) ** 2


def jump_logL(r: float, d: int) -> float:
    return math.log(_jump_Z(r, d, 3) / _jump_Z(r, d, 2) ** 2)


def jump_V(r: float, d: int) -> float:
    return capacity(Spectrum(JumpSpectrum(r, 1, d - 1, d).weights()))


def jump_dF(r: float, d: int) -> float:
    return _jump_dZ(r, d, 3) - 2.0 * _jump_Z(r, d, 2) * _jump_dZ(r, d, 2)


def jump_dlogL(r: float, d: int) -> float:
    return _jump_dZ(r, d, 3) / _jump_Z(r, d, 3) - 2.0 * _jump_dZ(r, d, 2) / _jump_Z(r, d, 2)


def jump_dV(r: float, d: int) -> float:
    # V = A - B^2 with A = sum p log^2 p, B = sum p log p
    a, b = 1.0 - r, r / (d - 1)
    la = math.log(a) if a > 0 else 0.0
    lb = math.log(b) if b > 0 else 0.0
    B = a * la + r * lb
    dA = -(la * la + 2 * la) + (lb * lb + 2 * lb)
    dB = -(la + 1) + (lb + 1)
    return dA - 2 * B * dB


INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12, max_iter: int = 500
) -> tuple[float, float]:
    """Bracketed golden-section search for the maximum of a unimodal f on [lo, hi]."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    e = a + INV_PHI * (b - a)
    fc, fe = f(c), f(e)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fe:
            b, e, fe = e, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, e, fe
            e = a + INV_PHI * (b - a)
            fe = f(e)
    else:
        raise NoConvergence(f"golden-section did not reach tol {tol} in {max_iter} steps")
    x = 0.5 * (a + b)
    # the bracket never drops an endpoint maximum, but report it exactly
    best = max([(f(x), x), (f(lo), lo), (f(hi), hi)])
    return best[1], best[0]


def refine_argmax(df: Callable[[float], float], x: float, lo: float, hi: float, width: float = 1e-4) -> float:
    """Polish an interior maximizer by root-finding on the derivative."""
    a, b = max(lo, x - width), min(hi, x + width)
    fa, fb = df(a), df(b)
    if fa > 0 and fb < 0:
        return brentq(df, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return x


def r_max_F(d: int) -> float:
    return (5 * d - 2 - math.sqrt(4 - 4 * d + 9 * d * d)) / (8 * d)


def N_F(d: int) -> float:
    s = math.sqrt(d * (9 * d - 4) + 4)
    return (5 * d - s - 2) * (3 * d + s - 6) ** 2 * (3 * d + s + 2) / (4096 * (d - 1) ** 2 * d**2)


def max_linear_spread(d: int) -> tuple[float, float]:
    if d < 2:
        raise DimTooSmall("d >= 2 required")
    return r_max_F(d), N_F(d)


def r_max_logL(d: int) -> float:
    if d < 2:
        raise DimTooSmall("d >= 2 required")
    if d == 2:
        return (3 - math.sqrt(3)) / 6
    if d == 3:
        t = math.atan(1 / (2 * math.sqrt(2))) / 3
        return 2 - math.sqrt(6) * math.sin(t) - math.sqrt(2) * math.cos(t)
    if d == 4:
        return 1.5 - 1.5 * math.sin(math.pi / 18) - math.sqrt(3) / 2 * math.cos(math.pi / 18)
    if d == 5:
        t = math.atan(3 / 4) / 3
        return 4 / 3 - 2 / math.sqrt(3) * math.sin(t) - 2 / 3 * math.cos(t)
    if d == 6:
        t = math.atan(2 / math.sqrt(5)) / 3
        return 1.25 - math.sqrt(15) / 4 * math.sin(t) - math.sqrt(5) / 4 * math.cos(t)
    return 0.5


def max_log_antiflatness(d: int) -> tuple[float, float]:
    r = r_max_logL(d)
    return r, jump_logL(r, d)


def max_capacity(d: int, tol: float = 1e-12) -> tuple[float, float]:
    """Golden-section maximum of V over the jump family (m=1, n=d-1), r in [0, 1/2]."""
    if d < 2:
        raise DimTooSmall("d >= 2 required")
    f = lambda r: jump_V(r, d)
    # endpoints are pure (r=0) or, for d=2, flat (r=1/2): V vanishes or is small there
    r, _ = golden_section_max(f, 0.0, 0.5, tol=tol)
    r = refine_argmax(lambda x: jump_dV(x, d), r, 0.0, 0.5)
    return r, f(r)


def capacity_bound(d: int) -> float:
    """(1/4) log2(d-1)^2 + 1/ln(2)^2, in bits^2."""
    return 0.25 * math.log2(d - 1) ** 2 + 1.0 / math.log(2) ** 2 if d > 1 else 1.0 / math.log(2) ** 2


def bound_chain(s: Spectrum) -> tuple[float, float, float]:
    """(logL, d^2 F, (exp(Delta_{0,inf})/2)^2) with S_0 = log rank."""
    d = s.dim
    delta = renyi_entropy(s, Alpha.ZERO) - renyi_entropy(s, Alpha.INF)
    return log_antiflatness(s), d * d * linear_renyi_spread(s), (math.exp(delta) / 2) ** 2


# --- Pareto scan --------------------------------------------------------------


@dataclass(frozen=True)
class ParetoPoint:
    r: float
    F: float
    logL: float
    V: float
    dominated: bool = False


def pareto_scan(
    d: int, r_grid: Sequence[float], renyi_grid: RenyiGrid = DEFAULT_GRID, strict_tol: float = 1e-9
) -> list[ParetoPoint]:
    """Quantifiers along the jump family with grid-dominance flags."""
    from .ordering import af_dominates_strictly

    r_max = (d - 1) / d
    rs = [float(r) for r in r_grid]
    if any(r < -1e-15 or r > r_max + 1e-15 for r in rs):
        raise ValidationError(f"r_grid must lie within [0, {r_max}]")
    specs = [jump_spectrum(min(max(r, 0.0), r_max), 1, d - 1, d) for r in rs]
    out = []
    for i, s in enumerate(specs):
        dominated = any(
            af_dominates_strictly(t, s, renyi_grid, strict_tol) for j, t in enumerate(specs) if j != i
        )
        out.append(ParetoPoint(rs[i], linear_renyi_spread(s), log_antiflatness(s), capacity(s), dominated))
    return out
