"""Probability spectra, Renyi/Tsallis entropies, spreads and escort maps.

All entropies are in nats. Zero weights are dropped from every logarithm
(0 log 0 = 0), so a spectrum that is flat on its support behaves exactly
like a flat spectrum of smaller dimension.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import AlphaOne, BadIndexOrder, NotAProbabilityVector, ValidationError

VALIDITY_TOL = 1e-10
FLAT_TOL = 1e-9


class Alpha(enum.Enum):
    """Limit points of the Renyi family."""

    ZERO = "0+"  # log rank (support convention)
    ONE = "1"  # Shannon
    INF = "inf"  # min-entropy

    def __float__(self) -> float:
        return {"0+": 0.0, "1": 1.0, "inf": math.inf}[self.value]

    def __str__(self) -> str:
        return self.value


Index = Union[float, int, Alpha]


def alpha_key(a: Index) -> float:
    """Numeric position of an index on the real line (for ordering)."""
    return float(a)


def check_index(a: Index) -> Index:
    if isinstance(a, Alpha):
        return a
    a = float(a)
    if not math.isfinite(a) or a <= 0.0:
        raise ValidationError(
            f"Renyi index must be a finite positive float or an Alpha marker, got {a!r}"
        )
    return Alpha.ONE if a == 1.0 else a


def index_to_json(a: Index):
    if isinstance(a, Alpha):
        return a.value
    return float(a)


def index_from_json(v) -> Index:
    if isinstance(v, str):
        v = v.strip().lower()
        for m in Alpha:
            if v == m.value or v == m.name.lower():
                return m
        if v in ("infinity", "+inf"):
            return Alpha.INF
        return check_index(float(v))
    return check_index(v)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Validated probability vector, stored in non-increasing order."""

    weights: np.ndarray
    tol: float = VALIDITY_TOL

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        if w.size == 0:
            raise NotAProbabilityVector("empty weight vector")
        if not np.all(np.isfinite(w)):
            raise NotAProbabilityVector("non-finite weight")
        if w.min() < -self.tol:
            raise NotAProbabilityVector(f"weight {w.min():.3e} below -tol")
        total = w.sum()
        if abs(total - 1.0) > self.tol:
            raise NotAProbabilityVector(f"weights sum to {float(total)!r}, not 1")
        w = np.sort(np.clip(w, 0.0, None))[::-1].copy()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return self.weights.size

    @property
    def support(self) -> np.ndarray:
        return self.weights[self.weights > 0]

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.weights))

    def padded(self, d: int) -> "Spectrum":
        if d < self.dim:
            raise ValidationError(f"cannot pad dimension {self.dim} down to {d}")
        return Spectrum(np.concatenate([self.weights, np.zeros(d - self.dim)]), self.tol)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"Spectrum({np.array2string(self.weights, precision=6)})"

    def to_json(self) -> str:
        return json.dumps({"weights": self.weights.tolist(), "tol": self.tol})


def new_spectrum(raw: Sequence[float], tol: float = VALIDITY_TOL) -> Spectrum:
    return Spectrum(np.asarray(raw, dtype=float), tol)


def spectrum_from_json(text: str) -> Spectrum:
    obj = json.loads(text)
    if isinstance(obj, list):
        return new_spectrum(obj)
    return new_spectrum(obj["weights"], obj.get("tol", VALIDITY_TOL))


def spectrum_from_csv(text: str, tol: float = VALIDITY_TOL) -> Spectrum:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if len(rows) != 1:
        raise ValidationError("spectrum CSV must hold exactly one row")
    return new_spectrum([float(x) for x in rows[0]], tol)


def spectrum_to_csv(s: Spectrum) -> str:
    buf = io.StringIO()
    csv.writer(buf).writerow([repr(float(x)) for x in s.weights])
    return buf.getvalue()


def flat(rank: int, dim: int | None = None) -> Spectrum:
    dim = rank if dim is None else dim
    w = np.zeros(dim)
    w[:rank] = 1.0 / rank
    return Spectrum(w)


def _pos(s: Spectrum) -> np.ndarray:
    return s.support


def partition_function(s: Spectrum, q: float) -> float:
    """Z_q = sum p^q over the support; Z_0 is the rank."""
    if q < 0:
        raise ValidationError("partition_function needs q >= 0")
    if q == 0:
        return float(s.rank)
    return float(np.sum(_pos(s) ** q))


def shannon_entropy(s: Spectrum) -> float:
    p = _pos(s)
    return float(-np.sum(p * np.log(p)))


def _zm1(s: Spectrum, alpha: float) -> float:
    """Z_alpha - 1 without cancellation near alpha = 1."""
    p = _pos(s)
    return float(np.sum(p * np.expm1((alpha - 1.0) * np.log(p))))


def renyi_entropy(s: Spectrum, alpha: Index) -> float:
    alpha = check_index(alpha)
    if alpha is Alpha.ZERO:
        return math.log(s.rank)
    if alpha is Alpha.ONE:
        return shannon_entropy(s)
    if alpha is Alpha.INF:
        return -math.log(s.weights[0])
    if abs(alpha - 1.0) < 0.5:
        return float(math.log1p(_zm1(s, alpha)) / (1.0 - alpha))
    p = _pos(s)
    return float(np.log(np.sum(p**alpha)) / (1.0 - alpha))


def renyi_entropies(s: Spectrum, alphas: Iterable[Index]) -> np.ndarray:
    return np.array([renyi_entropy(s, a) for a in alphas])


def tsallis_entropy(s: Spectrum, alpha: Index) -> float:
    alpha = check_index(alpha)
    if alpha is Alpha.ONE:
        raise AlphaOne("Tsallis entropy is singular at alpha = 1; use shannon_entropy")
    if alpha is Alpha.ZERO:
        return float(s.rank - 1)
    if alpha is Alpha.INF:
        return 0.0
    if abs(alpha - 1.0) < 0.5:
        return _zm1(s, alpha) / (1.0 - alpha)
    return (partition_function(s, alpha) - 1.0) / (1.0 - alpha)


def renyi_spread(s: Spectrum, alpha: Index, beta: Index) -> float:
    """Delta_{alpha,beta} = S_alpha - S_beta, defined for alpha < beta."""
    alpha, beta = check_index(alpha), check_index(beta)
    if not alpha_key(alpha) < alpha_key(beta):
        raise BadIndexOrder(f"need alpha < beta, got ({alpha}, {beta})")
    return renyi_entropy(s, alpha) - renyi_entropy(s, beta)


def escort(s: Spectrum, q: float) -> Spectrum:
    """Escort distribution p^q / Z_q; q = 0 gives the uniform law on the support."""
    if q < 0:
        raise ValidationError("escort needs q >= 0")
    w = np.zeros(s.dim)
    nz = s.weights > 0
    if q == 0:
        w[nz] = 1.0 / np.count_nonzero(nz)
    else:
        # scale by the max weight before powering to avoid underflow at large q
        r = (s.weights[nz] / s.weights[0]) ** q
        w[nz] = r / r.sum()
    return Spectrum(w, s.tol)


def is_flat(s: Spectrum, tol: float = FLAT_TOL) -> bool:
    p = _pos(s)
    return bool(p.max() - p.min() <= tol)


def spectrum_tensor(s: Spectrum, t: Spectrum) -> Spectrum:
    """Spectrum of a product state: sorted outer product."""
    return Spectrum(np.outer(s.weights, t.weights).ravel(), max(s.tol, t.tol))


@dataclass(frozen=True)
class RenyiGrid:
    alphas: tuple

    def __post_init__(self):
        a = tuple(check_index(x) for x in self.alphas)
        if len(a) < 2:
            raise ValidationError("a Renyi grid needs at least two indices")
        keys = [alpha_key(x) for x in a]
        if any(k1 >= k2 for k1, k2 in zip(keys, keys[1:])):
            raise ValidationError("Renyi grid must be strictly increasing")
        object.__setattr__(self, "alphas", a)

    def __len__(self) -> int:
        return len(self.alphas)

    def __iter__(self):
        return iter(self.alphas)

    def to_json(self) -> list:
        return [index_to_json(a) for a in self.alphas]

    @classmethod
    def from_json(cls, values) -> "RenyiGrid":
        return cls(tuple(index_from_json(v) for v in values))


DEFAULT_GRID = RenyiGrid(
    (Alpha.ZERO, 0.25, 0.5, 0.75, Alpha.ONE, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0, Alpha.INF)
)


@dataclass(frozen=True, eq=False)
class GProfile:
    grid: RenyiGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (len(self.grid),):
            raise ValidationError("profile length must match the grid")
        object.__setattr__(self, "values", v)


def g_profile(sigma: Spectrum, rho: Spectrum, grid: RenyiGrid = DEFAULT_GRID) -> GProfile:
    """G_{sigma|rho}(alpha) = S_alpha(sigma) - S_alpha(rho) over the grid."""
    values = renyi_entropies(sigma, grid) - renyi_entropies(rho, grid)
    return GProfile(grid, values)
