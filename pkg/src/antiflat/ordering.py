"""Standard and antiflat majorization, iso-purity sampling, and binary accessibility."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from . import kernels
from .errors import BadInterval, InfeasiblePurity, NoConvergence, PreconditionUnmet, ValidationError
from .spectra import (
    DEFAULT_GRID,
    FLAT_TOL,
    Alpha,
    Index,
    RenyiGrid,
    Spectrum,
    g_profile,
    partition_function,
    renyi_entropies,
    renyi_spread,
)

VERDICT_TOL = 1e-9
MAJORIZATION_TOL = 1e-10


class Relation(enum.Enum):
    FIRST_DOMINATES = "FirstDominates"
    SECOND_DOMINATES = "SecondDominates"
    EQUIVALENT = "Equivalent"
    INCOMPARABLE = "Incomparable"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OrderVerdict:
    """Outcome of a comparison.

    ``witness`` (only for Incomparable) is the lexicographically first pair
    showing that the first argument is *not* below the second;
    ``counter_witness`` shows the reverse failure.
    """

    relation: Relation
    witness: Optional[tuple] = None
    counter_witness: Optional[tuple] = None
    detail: Optional[dict] = None

    def __post_init__(self):
        if (self.witness is not None) != (self.relation is Relation.INCOMPARABLE):
            raise ValidationError("witness must be present exactly for Incomparable verdicts")


def _relation(below: bool, above: bool) -> Relation:
    # below: first <= second ; above: second <= first
    if below and above:
        return Relation.EQUIVALENT
    if below:
        return Relation.SECOND_DOMINATES
    if above:
        return Relation.FIRST_DOMINATES
    return Relation.INCOMPARABLE


# --- standard majorization ---------------------------------------------------


def _pad_pair(a: Spectrum, b: Spectrum) -> tuple[np.ndarray, np.ndarray]:
    d = max(a.dim, b.dim)
    return a.padded(d).weights, b.padded(d).weights


def standard_majorizes(a: Spectrum, b: Spectrum, tol: float = MAJORIZATION_TOL) -> OrderVerdict:
    """Compare partial sums of the sorted spectra.

    FirstDominates means b is majorized by a (a is the less mixed one).
    Witness indices k are 1-based partial-sum lengths.
    """
    wa, wb = _pad_pair(a, b)
    ca, cb = np.cumsum(wa), np.cumsum(wb)
    a_above = bool(np.all(ca >= cb - tol))
    b_above = bool(np.all(cb >= ca - tol))
    rel = _relation(b_above, a_above)
    if rel is not Relation.INCOMPARABLE:
        return OrderVerdict(rel)
    ka = int(np.argmax(cb > ca + tol)) + 1  # a fails to dominate here
    kb = int(np.argmax(ca > cb + tol)) + 1  # b fails to dominate here
    detail = {
        "k": kb,
        "partial_sums": (float(ca[kb - 1]), float(cb[kb - 1])),
        "k_reverse": ka,
        "partial_sums_reverse": (float(ca[ka - 1]), float(cb[ka - 1])),
    }
    return OrderVerdict(rel, witness=(ka, kb), counter_witness=(kb, ka), detail=detail)


# --- antiflat majorization -------------------------------------------------


def _first_rise(g: np.ndarray, tol: float) -> Optional[tuple[int, int]]:
    """Smallest (i, j), i < j, with g[j] > g[i] + tol, via a suffix maximum."""
    n = g.size
    suffix = np.maximum.accumulate(g[::-1])[::-1]
    for i in range(n - 1):
        if suffix[i + 1] > g[i] + tol:
            j = i + 1 + int(np.argmax(g[i + 1 :] > g[i] + tol))
            return i, j
    return None


def _monotone_nonincreasing(g: np.ndarray, tol: float) -> bool:
    """g[j] <= min(g[:j]) + tol for all j: the pairwise condition in one pass."""
    running = np.minimum.accumulate(g)
    return bool(np.all(g[1:] <= running[:-1] + tol))


def _grid_pair(grid: RenyiGrid, ij: tuple[int, int]) -> tuple[Index, Index]:
    return grid.alphas[ij[0]], grid.alphas[ij[1]]


def af_compare(
    rho: Spectrum, sigma: Spectrum, grid: RenyiGrid = DEFAULT_GRID, tol: float = VERDICT_TOL
) -> OrderVerdict:
    """Grid test of the antiflat order through the profile G_{sigma|rho}.

    SecondDominates: rho is antiflat-majorized by sigma (G non-increasing).
    """
    g = g_profile(sigma, rho, grid).values
    below = _monotone_nonincreasing(g, tol)
    above = _monotone_nonincreasing(-g, tol)
    rel = _relation(below, above)
    if rel is not Relation.INCOMPARABLE:
        return OrderVerdict(rel, detail={"G": g})
    w = _first_rise(g, tol)
    cw = _first_rise(-g, tol)
    return OrderVerdict(rel, _grid_pair(grid, w), _grid_pair(grid, cw), {"G": g})


def af_compare_pairwise(
    rho: Spectrum, sigma: Spectrum, grid: RenyiGrid = DEFAULT_GRID, tol: float = VERDICT_TOL
) -> OrderVerdict:
    """O(N^2) oracle: compare every Renyi spread on the grid directly."""
    below_fail = above_fail = None
    for i, j in combinations(range(len(grid)), 2):
        a, b = grid.alphas[i], grid.alphas[j]
        dr, ds = renyi_spread(rho, a, b), renyi_spread(sigma, a, b)
        if below_fail is None and dr > ds + tol:
            below_fail = (i, j)
        if above_fail is None and ds > dr + tol:
            above_fail = (i, j)
    rel = _relation(below_fail is None, above_fail is None)
    if rel is not Relation.INCOMPARABLE:
        return OrderVerdict(rel)
    return OrderVerdict(rel, _grid_pair(grid, below_fail), _grid_pair(grid, above_fail))


def af_dominates_strictly(
    sigma: Spectrum, rho: Spectrum, grid: RenyiGrid = DEFAULT_GRID, strict_tol: float = VERDICT_TOL
) -> bool:
    """rho below sigma on the grid with at least one spread strictly larger by > strict_tol."""
    v = af_compare(rho, sigma, grid)
    if v.relation is not Relation.SECOND_DOMINATES:
        return False
    g = v.detail["G"]
    # some spread of sigma exceeds that of rho by more than strict_tol
    return bool(np.max(np.maximum.accumulate(g)[:-1] - g[1:]) > strict_tol)


# --- iso-purity constructions ----------------------------------------------


def purity(s: Spectrum) -> float:
    return partition_function(s, 2)


def iso_purity_sample(
    d: int, P: float, rng: np.random.Generator, rank: Optional[int] = None, max_tries: int = 100000
) -> Spectrum:
    """Random spectrum of dimension d with sum(l^2) = P.

    A Dirichlet point on a random face (of size ``rank`` if given) is pushed
    along the ray from the face centre until the purity equals P; points that
    leave the simplex are rejected.
    """
    if d < 1 or not (1.0 / d - 1e-15 <= P <= 1.0 + 1e-15):
        raise InfeasiblePurity(f"purity {P} not in [1/{d}, 1]")
    if rank is not None and not (1 <= rank <= d and 1.0 / rank <= P + 1e-15):
        raise InfeasiblePurity(f"purity {P} unreachable at rank {rank}")
    if P >= 1.0 - 1e-15 or rank == 1:
        if rank not in (None, 1) or P < 1.0 - 1e-12:
            raise InfeasiblePurity("only pure spectra reach purity 1")
        w = np.zeros(d)
        w[0] = 1.0
        return Spectrum(w)
    feasible = [k for k in range(2, d + 1) if 1.0 / k <= P + 1e-15] if rank is None else [rank]
    for _ in range(max_tries):
        k = feasible[rng.integers(len(feasible))]
        u = np.full(k, 1.0 / k)
        if abs(P - 1.0 / k) < 1e-15:
            lam = u
        else:
            direction = rng.dirichlet(np.ones(k)) - u
            nrm2 = float(direction @ direction)
            if nrm2 == 0.0:
                continue
            t = math.sqrt((P - 1.0 / k) / nrm2)
            lam = u + t * direction
            if lam.min() <= 0.0:
                continue
        w = np.zeros(d)
        w[:k] = lam
        return Spectrum(w / w.sum())
    raise InfeasiblePurity(f"no admissible sample after {max_tries} tries")


def rank_obstruction_check(
    rho: Spectrum,
    sigma: Spectrum,
    grid: RenyiGrid = DEFAULT_GRID,
    tol: float = 1e-6,
    purity_tol: float = 1e-9,
) -> bool:
    """True iff (same purity, same rank, AF-comparable) implies equal spectra."""
    same_purity = abs(purity(rho) - purity(sigma)) <= purity_tol
    same_rank = rho.rank == sigma.rank
    comparable = af_compare(rho, sigma, grid).relation is not Relation.INCOMPARABLE
    if not (same_purity and same_rank and comparable):
        return True
    wr, ws = _pad_pair(rho, sigma)
    return bool(np.max(np.abs(wr - ws)) <= tol)


def anchored_crossing_check(
    rho: Spectrum, sigma: Spectrum, grid: RenyiGrid = DEFAULT_GRID, tol: float = VERDICT_TOL
) -> bool:
    """Renyi curves of an iso-purity AF pair cross at alpha = 2 in the ordered way."""
    if abs(purity(rho) - purity(sigma)) > 1e-9:
        raise PreconditionUnmet("spectra must share the same purity")
    rel = af_compare(rho, sigma, grid, tol).relation
    if rel not in (Relation.SECOND_DOMINATES, Relation.EQUIVALENT):
        raise PreconditionUnmet(f"need rho below sigma in the antiflat order, got {rel}")
    keys = np.array([float(a) for a in grid])
    diff = renyi_entropies(sigma, grid) - renyi_entropies(rho, grid)
    return bool(np.all(diff[keys < 2] >= -tol) and np.all(diff[keys > 2] <= tol))


# --- binary accessible sets --------------------------------------------------


def _binary(x: float) -> Spectrum:
    return Spectrum(np.array([x, 1.0 - x]))


def af_accessible_membership_binary(x: float, r: float, grid: RenyiGrid = DEFAULT_GRID) -> bool:
    """Is (x, 1-x) in the antiflat-accessible set of the target (r, 1-r)?"""
    for v, name in ((x, "x"), (r, "r")):
        if not 0.5 - 1e-15 <= v <= 1.0 + 1e-15:
            raise ValidationError(f"{name}={v} outside [1/2, 1]")
    rel = af_compare(_binary(r), _binary(x), grid).relation
    return rel in (Relation.SECOND_DOMINATES, Relation.EQUIVALENT)


def regularized_incomplete_beta(z: float, a: float, b: float) -> float:
    """I_z(a, b) by continued fraction with the usual symmetry split."""
    if not (0.0 <= z <= 1.0) or a <= 0 or b <= 0:
        raise ValidationError(f"need z in [0,1], a,b > 0; got z={z}, a={a}, b={b}")
    if z == 0.0 or z == 1.0:
        return z
    lbt = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(z) + b * math.log1p(-z)
    bt = math.exp(lbt)
    if z < (a + 1.0) / (a + b + 2.0):
        cf, it = kernels.betacf(a, b, z)
        val = bt * cf / a
    else:
        cf, it = kernels.betacf(b, a, 1.0 - z)
        val = 1.0 - bt * cf / b
    if it > 10000:
        raise NoConvergence(f"continued fraction for I_{z}({a},{b}) did not converge")
    return min(max(val, 0.0), 1.0)


def binary_haar_density(x: float, K: int) -> float:
    """Density of the largest eigenvalue x in [1/2, 1] for d_A = 2, d_B = K."""
    logc = math.log(2 * (2 * K - 1)) - (2 * math.lgamma(K - 1) - math.lgamma(2 * K - 2))
    return math.exp(logc) * (2 * x - 1) ** 2 * (x * (1 - x)) ** (K - 2)


def accessible_interval_probability(lo: float, hi: float, K: int) -> float:
    """P(largest eigenvalue in [lo, hi]) for Haar states with d_A = 2, d_B = K."""
    if not (0.5 <= lo <= hi <= 1.0):
        raise BadInterval(f"need 1/2 <= lo <= hi <= 1, got [{lo}, {hi}]")
    if int(K) != K or K < 2:
        raise BadInterval(f"K must be an integer >= 2, got {K}")
    tail = lambda x: regularized_incomplete_beta(min(4 * x * (1 - x), 1.0), K - 1, 1.5)
    return min(max(tail(lo) - tail(hi), 0.0), 1.0)


def af_target_probability_binary(r: float, K: int, tol: float = FLAT_TOL) -> float:
    """Probability that a Haar state (d_A = 2) reaches the target (r, 1-r) in the antiflat order."""
    if not 0.5 - 1e-15 <= r <= 1.0 + 1e-15:
        raise ValidationError(f"r={r} outside [1/2, 1]")
    if K < 2:
        raise ValidationError("K >= 2 required")
    return 1.0 if (abs(r - 0.5) <= tol or abs(r - 1.0) <= tol) else 0.0


__all__ = [
    "Alpha",
    "OrderVerdict",
    "Relation",
    "accessible_interval_probability",
    "af_accessible_membership_binary",
    "af_compare",
    "af_compare_pairwise",
    "af_dominates_strictly",
    "af_target_probability_binary",
    "anchored_crossing_check",
    "binary_haar_density",
    "iso_purity_sample",
    "purity",
    "rank_obstruction_check",
    "regularized_incomplete_beta",
    "standard_majorizes",
]
