"""Closed-form ensemble moments of the linear Renyi spread F = Tr rho^3 - (Tr rho^2)^2."""
from __future__ import annotations

import math

from ..errors import ValidationError


def _dims(dA: int, dB: int) -> None:
    if dA < 1 or dB < 1:
        raise ValidationError(f"dimensions must be >= 1, got ({dA}, {dB})")


def haar_mean_purity(dA: int, dB: int) -> float:
    _dims(dA, dB)
    return (dA + dB) / (dA * dB + 1)


def haar_mean_cube(dA: int, dB: int) -> float:
    """E[Tr rho_A^3]."""
    _dims(dA, dB)
    d = dA * dB
    return (dA**2 + dB**2 + 3 * dA * dB + 1) / ((d + 1) * (d + 2))


def haar_mean_sq_purity(dA: int, dB: int) -> float:
    """E[(Tr rho_A^2)^2]."""
    _dims(dA, dB)
    d = dA * dB
    num = dA**3 * dB + 2 * dA**2 * (dB**2 + 2) + dA * dB * (dB**2 + 10) + 4 * dB**2 + 2
    return num / ((d + 1) * (d + 2) * (d + 3))


def haar_mean_F(dA: int, dB: int) -> float:
    _dims(dA, dB)
    d = dA * dB
    return (dA**2 - 1) * (dB**2 - 1) / ((d + 1) * (d + 2) * (d + 3))


def haar_var_F(dA: int, dB: int) -> float:
    """Variance of F over Haar-random pure states; Theta(d^-3) for d_A = d_B."""
    _dims(dA, dB)
    a, b = float(dA), float(dB)
    d = a * b
    poly = (
        2 * a**6 * b**4
        + 7 * a**5 * b**3 * (b**2 - 2)
        + a**4 * b**2 * (2 * b**4 - 5 * b**2 - 62)
        - 7 * a**3 * b * (2 * b**4 + 11 * b**2 - 26)
        + a**2 * (-62 * b**4 + 413 * b**2 + 588)
        + 2 * a * b * (91 * b**2 + 683)
        + 84 * (7 * b**2 + 2)
    )
    den = (d + 1) ** 2 * (d + 2) ** 2 * (d + 3) ** 2 * (d + 4) * (d + 5) * (d + 6) * (d + 7)
    return (a**2 - 1) * (b**2 - 1) * poly / den


def bures_mean_F(d: int) -> float:
    """Bures-Hall mean of F for d_A = d_B = sqrt(d)."""
    r = math.isqrt(d) if d >= 0 else 0
    if d < 4 or r * r != d:
        raise ValidationError(f"d must be a perfect square >= 4, got {d}")
    return (d - 1) * (7 * d - 8) / (4 * (d + 2) * (d + 4) * (d + 6))


def clifford_f_theta(d: int, theta: float) -> float:
    """Per-doping contraction factor; exactly 1 at theta = +-pi/2 (mod 2 pi)."""
    if math.isclose(math.cos(theta), 0.0, abs_tol=1e-15) and math.sin(theta) != 0:
        return 1.0
    return (7 * d**2 - 3 * d + d * (d + 3) * math.cos(4 * theta) - 8) / (8 * (d**2 - 1))


def _check_clifford_dim(d: int) -> None:
    n = d.bit_length() - 1
    if d < 4 or d != 1 << n or n % 2:
        raise ValidationError(f"d must be 2^n with even n >= 2, got {d}")


def clifford_mean_F(d: int, k: int, theta: float) -> float:
    """Mean F of |0..0> under k-doped Clifford circuits, even cut d_A = d_B = sqrt(d)."""
    _check_clifford_dim(d)
    if k < 0:
        raise ValidationError("k must be >= 0")
    f = clifford_f_theta(d, theta)
    head = (5 * d + 1) / ((d + 1) * (d + 2))
    tail = (2 * (2 * d**2 + 9 * d + 1) + (d**2 - 2 * d + 1) * f**k) / ((d + 1) * (d + 2) * (d + 3))
    return head - tail


def clifford_mean_F_limit(d: int) -> float:
    """k -> infinity value of clifford_mean_F for |f| < 1."""
    _check_clifford_dim(d)
    return (5 * d + 1) / ((d + 1) * (d + 2)) - 2 * (2 * d**2 + 9 * d + 1) / ((d + 1) * (d + 2) * (d + 3))
