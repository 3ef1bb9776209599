"""Reproduction targets: each returns measured quantities plus a pass flag.

Targets are deterministic in ``seed`` and independent of the thread count. They
never record wall-clock times, so their JSON output is byte-stable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np
from scipy import stats

from . import dynamics as dyn
from .ensembles import analytic as an
from .ensembles.bures import batch_means_stderr, bures_hall_general_batch
from .ensembles.montecarlo import EnsembleSpec, mc_estimate, mc_estimate_many, sample_spectra
from .ensembles.pdfs import F_MAX, bin_average, pdf_F_bures_binary, pdf_F_haar_binary
from .ensembles.rng import RandomStream
from .geometry import (
    cov_unification,
    entropy_slope_capacity,
    escort_curvature_capacity,
    euclidean_spread_identity,
)
from .ordering import (
    Relation,
    accessible_interval_probability,
    af_compare,
    af_compare_pairwise,
    af_target_probability_binary,
    iso_purity_sample,
    rank_obstruction_check,
    standard_majorizes,
)
from .quantifiers import (
    N_F,
    batch_F,
    capacity,
    golden_section_max,
    jump_dF,
    jump_dlogL,
    jump_F,
    jump_logL,
    linear_renyi_spread,
    log_antiflatness,
    max_capacity,
    r_max_F,
    r_max_logL,
    refine_argmax,
)
from .spectra import Alpha, RenyiGrid, Spectrum, g_profile, partition_function, renyi_entropy
from .states import (
    BipartitePureState,
    OrthonormalBasis,
    dephase,
    dephase_B,
    density_from_pure,
    diagonal_density,
    eigen_spectrum,
    partial_trace_B,
)

SIGMA_MAX = 3.0


@dataclass
class Result:
    target: str
    passed: bool
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"target": self.target, "passed": self.passed, **self.data}


def _mc_check(est, target: float) -> dict:
    return {
        "mean": est.mean,
        "stderr": est.stderr,
        "analytic": target,
        "sigma_distance": est.sigma_distance(target),
        "n": est.n_samples,
    }


# --- Haar ------------------------------------------------------------------


def haar_2x2_mean(seed: int = 0, threads: int | None = None, n: int = 100_000) -> Result:
    est = mc_estimate(EnsembleSpec.haar(2, 2), "F", n, seed, threads)
    data = _mc_check(est, 3 / 70)
    return Result("haar-2x2-mean", data["sigma_distance"] < SIGMA_MAX, data)


HAAR_DIMS = ((2, 2), (2, 3), (3, 3), (2, 8))


def haar_general_mean(seed: int = 0, threads: int | None = None, n: int = 100_000) -> Result:
    rows = []
    for dA, dB in HAAR_DIMS:
        est = mc_estimate(EnsembleSpec.haar(dA, dB), "F", n, seed, threads)
        rows.append({"dims": [dA, dB], **_mc_check(est, an.haar_mean_F(dA, dB))})
    ok = all(r["sigma_distance"] < SIGMA_MAX for r in rows)
    return Result("haar-general-mean", ok, {"cases": rows})


def histogram_check(values: np.ndarray, pdf: Callable[[float], float], bins: int = 200) -> dict:
    """Binned density vs bin-averaged analytic density on (0, 1/16).

    ``max_rel_dev`` excludes the outermost bin on each side. The chi-square
    statistic uses all bins and expected counts from the analytic law.
    """
    edges = np.linspace(0.0, F_MAX, bins + 1)
    ref = bin_average(pdf, edges)
    counts, _ = np.histogram(values, edges)
    width = edges[1] - edges[0]
    emp = counts / (values.size * width)
    rel = np.abs(emp / ref - 1.0)[1:-1]
    expected = ref * width * values.size
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    # per-bin relative standard error, to put max_rel_dev on a noise scale
    se = np.sqrt((1 - ref * width) / (ref * width * values.size))[1:-1]
    return {
        "bins": bins,
        "max_rel_dev": float(rel.max()),
        "argmax_bin": int(np.argmax(rel)) + 1,
        "bins_over_5pct": int(np.sum(rel >= 0.05)),
        "max_z": float(np.max(rel / se)),
        "median_rel_se": float(np.median(se)),
        # chance that an exact sampler keeps every interior bin under 5%
        "pass_probability_5pct": float(np.prod(1.0 - 2.0 * stats.norm.sf(0.05 / se))),
        "chi2": chi2,
        "chi2_dof": bins - 1,
        "chi2_p_value": float(stats.chi2.sf(chi2, bins - 1)),
    }


def _quad(f, a, b) -> float:
    """Tanh-sinh integral over an open interval with integrable endpoint singularities."""

    def g(x):
        xf = float(x)
        # nodes within float round-off of an endpoint carry negligible weight
        return f(xf) if a < xf < b else 0.0

    return float(mpmath.quad(g, [a, b]))


def haar_2x2_pdf(seed: int = 0, threads: int | None = None, n: int = 1_000_000) -> Result:
    f = batch_F(sample_spectra(EnsembleSpec.haar(2, 2), n, seed, threads))
    hist = histogram_check(f, pdf_F_haar_binary)
    norm = _quad(pdf_F_haar_binary, 0, F_MAX)
    mean = _quad(lambda x: x * pdf_F_haar_binary(x), 0, F_MAX)
    data = {"n": n, **hist, "integral": norm, "mean_from_pdf": mean}
    ok = hist["max_rel_dev"] < 0.05 and abs(norm - 1) < 1e-6 and abs(mean - 3 / 70) < 1e-6
    return Result("haar-2x2-pdf", ok, data)


# --- Bures-Hall --------------------------------------------------------------


def bures(seed: int = 0, threads: int | None = None, n: int = 100_000, n_hist: int = 1_000_000) -> Result:
    spec = EnsembleSpec.bures(2, 2)
    est = mc_estimate(spec, "F", n, seed, threads)
    mean = _mc_check(est, an.bures_mean_F(4))
    f = batch_F(sample_spectra(spec, n_hist, seed + 1, threads))
    hist = histogram_check(f, pdf_F_bures_binary)
    norm = _quad(pdf_F_bures_binary, 0, F_MAX)
    chain = bures_hall_general_batch(2, 2, n, RandomStream(seed, (4,)).generator())
    fc = batch_F(chain)
    se_c = batch_means_stderr(fc)
    z = abs(fc.mean() - est.mean) / math.hypot(se_c, est.stderr)
    data = {
        "binary_mean": mean,
        "histogram": {"n": n_hist, **hist, "integral": norm},
        "metropolis": {"mean": float(fc.mean()), "stderr": se_c, "n": int(fc.size), "sigma_vs_binary": z},
    }
    ok = mean["sigma_distance"] < SIGMA_MAX and hist["max_rel_dev"] < 0.05 and z < SIGMA_MAX
    return Result("bures", ok, data)


# --- Clifford ----------------------------------------------------------------


def clifford(seed: int = 0, threads: int | None = None, n: int = 100_000, n_flat: int = 2000) -> Result:
    flat = {}
    for nq in (2, 4):
        w = sample_spectra(EnsembleSpec.clifford(nq, 0), n_flat, seed, threads)
        flat[str(nq)] = float(batch_F(w).max())
    theta = math.pi / 4
    doped = []
    for k in (1, 2, 3):
        est = mc_estimate(EnsembleSpec.clifford(2, k, theta), "F", n, seed + k, threads)
        doped.append({"k": k, **_mc_check(est, an.clifford_mean_F(4, k, theta))})
    dims = [4**j for j in range(1, 6)]
    k0 = max(abs(an.clifford_mean_F(d, 0, theta)) for d in dims)
    lim = max(abs(an.clifford_mean_F(d, 10**6, theta) - an.haar_mean_F(math.isqrt(d), math.isqrt(d))) for d in dims)
    half_pi = max(abs(an.clifford_mean_F(d, k, math.pi / 2) - an.clifford_mean_F(d, 0, math.pi / 2))
                  for d in dims for k in (1, 5, 50))
    data = {
        "max_F_k0": flat,
        "doped": doped,
        "algebraic": {"max_abs_k0": k0, "max_abs_limit_minus_haar": lim, "max_abs_half_pi_k_dependence": half_pi},
    }
    ok = (
        all(v <= 1e-12 for v in flat.values())
        and all(r["sigma_distance"] < SIGMA_MAX for r in doped)
        and k0 <= 1e-12
        and lim <= 1e-12
        and half_pi <= 1e-12
    )
    return Result("clifford", ok, data)


# --- maxima --------------------------------------------------------------------


def maxima(seed: int = 0, threads: int | None = None) -> Result:
    rows = []
    for d in range(2, 11):
        hi = (d - 1) / d
        r, _ = golden_section_max(lambda x: jump_F(x, d), 0.0, hi)
        r = refine_argmax(lambda x: jump_dF(x, d), r, 0.0, hi)
        rl, _ = golden_section_max(lambda x: jump_logL(x, d), 0.0, 0.5)
        rl = refine_argmax(lambda x: jump_dlogL(x, d), rl, 0.0, 0.5)
        rows.append(
            {
                "d": d,
                "r_F_numeric": r,
                "r_F_closed": r_max_F(d),
                "N_F_numeric": jump_F(r, d),
                "N_F_closed": N_F(d),
                "r_logL_numeric": rl,
                "r_logL_closed": r_max_logL(d),
                "N_logL": jump_logL(r_max_logL(d), d),
            }
        )
    err_r = max(abs(x["r_F_numeric"] - x["r_F_closed"]) for x in rows)
    err_n = max(abs(x["N_F_numeric"] - x["N_F_closed"]) for x in rows)
    err_l = max(abs(x["r_logL_numeric"] - x["r_logL_closed"]) for x in rows)
    nf = [x["N_F_closed"] for x in rows]
    r_cap, v_cap = max_capacity(2)
    data = {
        "rows": rows,
        "max_err_r_F": err_r,
        "max_err_N_F": err_n,
        "max_err_r_logL": err_l,
        "N_F_below_27_256": all(v < 27 / 256 for v in nf),
        "N_F_increasing": all(a < b for a, b in zip(nf, nf[1:])),
        "N_logL_below_ln2": all(x["N_logL"] < math.log(2) for x in rows),
        "capacity_d2": {"r": r_cap, "V": v_cap, "target_r": 0.0832217},
    }
    ok = (
        err_r <= 1e-10
        and err_n <= 1e-10
        and err_l <= 1e-9
        and data["N_F_below_27_256"]
        and data["N_F_increasing"]
        and data["N_logL_below_ln2"]
        and abs(rows[0]["r_logL_closed"] - (3 - math.sqrt(3)) / 6) <= 1e-15
        and all(x["r_logL_closed"] == 0.5 for x in rows if x["d"] >= 7)
        and abs(r_cap - 0.0832217) <= 1e-5
    )
    return Result("maxima", ok, data)


# --- identities ------------------------------------------------------------------


def random_full_support(rng: np.random.Generator, d_lo: int = 2, d_hi: int = 10) -> Spectrum:
    d = int(rng.integers(d_lo, d_hi + 1))
    w = rng.dirichlet(np.ones(d))
    return Spectrum(np.maximum(w, 1e-12) / np.maximum(w, 1e-12).sum())


EPS_LADDER = (1e-2, 5e-3, 2.5e-3)


def identities(seed: int = 0, threads: int | None = None, n: int = 1000) -> Result:
    rng = RandomStream(seed, (7,)).generator()
    slope_err = euclid_err = cov_err = z_err = 0.0
    orders = []
    kl_err_small = 0.0
    for _ in range(n):
        s = random_full_support(rng)
        v = capacity(s)
        slope_err = max(slope_err, abs(entropy_slope_capacity(s, 1e-4) - v))
        errs = [abs(escort_curvature_capacity(s, e) - v) for e in EPS_LADDER]
        kl_err_small = max(kl_err_small, errs[-1])
        if errs[-1] > 1e-9:
            orders.append(math.log(errs[0] / errs[-1]) / math.log(EPS_LADDER[0] / EPS_LADDER[-1]))
        euclid_err = max(euclid_err, abs(euclidean_spread_identity(s) - linear_renyi_spread(s)))
        cov_err = max(cov_err, abs(cov_unification(s) - log_antiflatness(s)))
        for a in (0.5, 1.5, 2.0, 3.0):
            z_err = max(z_err, abs(math.exp((1 - a) * renyi_entropy(s, a)) - partition_function(s, a)))
    orders_arr = np.array(orders)
    data = {
        "n_spectra": n,
        "max_err_entropy_slope": slope_err,
        "escort_kl": {
            "eps": list(EPS_LADDER),
            "max_err_at_smallest_eps": kl_err_small,
            "median_order": float(np.median(orders_arr)),
            "min_order": float(orders_arr.min()),
        },
        "max_err_euclid_F": euclid_err,
        "max_err_cov_logL": cov_err,
        "max_err_partition": z_err,
    }
    ok = (
        slope_err <= 1e-6
        and abs(data["escort_kl"]["median_order"] - 1.0) < 0.1
        and data["escort_kl"]["min_order"] > 0.9
        and euclid_err <= 1e-12
        and cov_err <= 1e-12
        and z_err <= 1e-12
    )
    return Result("identities", ok, data)


# --- ordering ------------------------------------------------------------------

G_TABLE_GRID = RenyiGrid((0.5, 1.0, 2.0, 4.0, 8.0, Alpha.INF))
G_TABLE_SIGMA = (0.71, 0.29)
G_TABLE_RHO = (0.51, 0.49)
G_TABLE_EXPECTED = ("-0.0472", "-0.0908", "-0.1621", "-0.2448", "-0.3002", "-0.3309")


def g_table(seed: int = 0, threads: int | None = None) -> Result:
    g = g_profile(Spectrum(np.array(G_TABLE_SIGMA)), Spectrum(np.array(G_TABLE_RHO)), G_TABLE_GRID).values
    shown = [f"{x:.4f}" for x in g]
    verdict = af_compare(Spectrum(np.array(G_TABLE_RHO)), Spectrum(np.array(G_TABLE_SIGMA)), G_TABLE_GRID)
    data = {"grid": G_TABLE_GRID.to_json(), "G": [float(x) for x in g], "G_4dp": shown, "relation": str(verdict.relation)}
    ok = tuple(shown) == G_TABLE_EXPECTED and verdict.relation is Relation.SECOND_DOMINATES
    return Result("appG-table", ok, data)


def k2_incomparable_pair() -> tuple[Spectrum, Spectrum]:
    r77 = math.sqrt(77)
    rho = Spectrum(np.array([0.5, 0.5, 0.0, 0.0]))
    sigma = Spectrum(np.array([22 / 40, (9 + r77) / 40, (9 - r77) / 40, 0.0]))
    return rho, sigma


def _random_spectrum(rng: np.random.Generator) -> Spectrum:
    d = int(rng.integers(2, 7))
    rank = int(rng.integers(1, d + 1))
    w = np.zeros(d)
    w[:rank] = rng.dirichlet(np.full(rank, float(rng.choice([0.3, 1.0, 3.0]))))
    w = np.where(w < 1e-12, 0.0, w)
    return Spectrum(w / w.sum())


def ordering(seed: int = 0, threads: int | None = None, n: int = 10_000) -> Result:
    gt = g_table(seed)
    rho, sigma = k2_incomparable_pair()
    af = af_compare(rho, sigma)
    sm = standard_majorizes(rho, sigma)
    k2 = list(sm.detail["partial_sums"]) if sm.detail and sm.detail["k"] == 2 else None
    pair_info = {
        "af_relation": str(af.relation),
        "majorization_relation": str(sm.relation),
        "majorization_witness": list(sm.witness) if sm.witness else None,
        "k2_partial_sums": k2,
    }
    k2_ok = (
        af.relation is Relation.SECOND_DOMINATES
        and sm.relation is Relation.INCOMPARABLE
        and k2 is not None
        and f"{k2[0]:.4f}" == "1.0000"
        and f"{k2[1]:.4f}" == "0.9944"
    )

    rng = RandomStream(seed, (8, 0)).generator()
    mismatches = 0
    for _ in range(n):
        a, b = _random_spectrum(rng), _random_spectrum(rng)
        v1, v2 = af_compare(a, b), af_compare_pairwise(a, b)
        if (v1.relation, v1.witness, v1.counter_witness) != (v2.relation, v2.witness, v2.counter_witness):
            mismatches += 1

    rng = RandomStream(seed, (8, 1)).generator()
    freeze_bad = rank_bad = 0
    for _ in range(n):
        d = int(rng.integers(2, 7))
        P = float(rng.uniform(1.0 / d, 1.0))
        a = iso_purity_sample(d, P, rng)
        b = iso_purity_sample(d, P, rng)
        rel = standard_majorizes(a, b).relation
        same = np.max(np.abs(a.weights - b.weights)) <= 1e-6
        if rel in (Relation.FIRST_DOMINATES, Relation.SECOND_DOMINATES) and not same:
            freeze_bad += 1
        if not rank_obstruction_check(a, b):
            rank_bad += 1
    data = {
        "g_table": gt.to_json(),
        "k2_pair": pair_info,
        "grid_vs_pairwise": {"pairs": n, "mismatches": mismatches},
        "freezing": {"trials": n, "counterexamples": freeze_bad},
        "rank_obstruction": {"trials": n, "counterexamples": rank_bad},
    }
    ok = gt.passed and k2_ok and mismatches == 0 and freeze_bad == 0 and rank_bad == 0
    return Result("ordering", ok, data)


# --- accessible volume -------------------------------------------------------------


def accessible_volume(seed: int = 0, threads: int | None = None, n: int = 100_000) -> Result:
    targets = [0.5, 0.6, 0.75, 0.9, 0.999, 1.0]
    probs = {f"{r}": {str(K): af_target_probability_binary(r, K) for K in (2, 3, 5)} for r in targets}
    exact = all(
        p == (1.0 if r in (0.5, 1.0) else 0.0) for r in targets for p in probs[f"{r}"].values()
    )
    los = np.linspace(0.5, 1.0, 51)
    law_err = max(abs(accessible_interval_probability(lo, 1.0, 2) - (1 - (2 * lo - 1) ** 3)) for lo in los)
    w = sample_spectra(EnsembleSpec.haar(2, 2), n, seed, threads)
    hit = (w[:, 0] >= 0.75).astype(float)
    p_mc = float(hit.mean())
    se = float(hit.std(ddof=1) / math.sqrt(n))
    p_an = accessible_interval_probability(0.75, 1.0, 2)
    z = abs(p_mc - p_an) / se
    data = {
        "target_probabilities": probs,
        "interval_law_max_err": law_err,
        "interval_0.75_1": {"analytic": p_an, "mc": p_mc, "stderr": se, "sigma_distance": z, "n": n},
    }
    return Result("accessible-volume", exact and law_err <= 1e-10 and z < SIGMA_MAX, data)


# --- rate bound ----------------------------------------------------------------


def _random_state(dims: tuple[int, int], rng: np.random.Generator) -> BipartitePureState:
    d = dims[0] * dims[1]
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return BipartitePureState(v / np.linalg.norm(v), dims)


def rate_bound(seed: int = 0, threads: int | None = None, n_h: int = 100, n_t: int = 100) -> Result:
    h = dyn.xx_hamiltonian()
    psi0 = BipartitePureState(np.array([1, 0, 0, 0], dtype=complex), (2, 2))
    times = np.linspace(0.0, math.pi, 200)
    recs = dyn.rate_bound_report(h, psi0, times)
    sat = max(abs(abs(r.dEdt_commutator) - r.rhs) for r in recs)
    closed = max(abs(abs(r.dEdt_commutator) - abs(math.sin(4 * r.t))) for r in recs)
    fd_ok = all(r.satisfied for r in recs)
    loose_viol_xx = sum(not r.loose_satisfied for r in recs)

    rng = RandomStream(seed, (10,)).generator()
    sweep = {}
    for dims in ((2, 2), (2, 4)):
        viol = loose = 0
        worst = 0.0
        t = np.linspace(0.0, math.pi, n_t)
        for _ in range(n_h):
            H = dyn.random_hamiltonian(dims, rng)
            p0 = _random_state(dims, rng)
            for r in dyn.rate_bound_report(H, p0, t):
                viol += not r.satisfied
                loose += not r.loose_satisfied
                if r.rhs > 0:
                    worst = max(worst, abs(r.dEdt_commutator) / r.rhs)
        sweep[f"{dims[0]}x{dims[1]}"] = {"hamiltonians": n_h, "times": n_t, "violations": viol,
                                         "loose_violations": loose, "max_rate_over_rhs": worst}
    data = {
        "saturation": {"times": len(times), "max_abs_rate_minus_rhs": sat, "max_abs_rate_minus_sin4t": closed,
                       "finite_difference_within_slack": fd_ok},
        "random_sweeps": sweep,
        "loose_bound": {
            "loose_constant": dyn.LOOSE_CONSTANT,
            "max_F_constant": dyn.MAX_F_CONSTANT,
            "violations_xx": loose_viol_xx,
            "max_rate_xx": max(abs(r.dEdt_commutator) for r in recs),
            "loose_constant_holds": loose_viol_xx == 0 and all(v["loose_violations"] == 0 for v in sweep.values()),
        },
    }
    ok = sat <= 1e-9 and closed <= 1e-9 and fd_ok and all(v["violations"] == 0 for v in sweep.values())
    return Result("rate-bound", ok, data)


# --- typicality ------------------------------------------------------------------


def typicality(seed: int = 0, threads: int | None = None, n: int = 100_000) -> Result:
    ratios = []
    for d in (2, 3, 4, 5):
        est = mc_estimate_many(EnsembleSpec.haar(d, d), ["F", "E_lin"], n, seed, threads)
        ratios.append({"dA": d, "E_F": est["F"].mean, "E_Elin": est["E_lin"].mean,
                       "ratio": est["F"].mean / est["E_lin"].mean})
    scaled = [{"d": d, "var_F": an.haar_var_F(r, r), "var_F_d3": an.haar_var_F(r, r) * d**3}
              for d, r in ((4, 2), (16, 4), (64, 8))]
    dec = all(a["ratio"] > b["ratio"] for a, b in zip(ratios, ratios[1:]))
    bounded = all(s["var_F_d3"] < 11.0 for s in scaled)
    return Result("typicality", dec and bounded, {"ratios": ratios, "variance_scaling": scaled,
                                                   "strictly_decreasing": dec, "bounded_by_11": bounded})


# --- dephasing -------------------------------------------------------------------


def entangled_pair_basis() -> OrthonormalBasis:
    r2, r3 = math.sqrt(2), math.sqrt(3)
    k1 = np.array([1, r2, 0, 0]) / r3
    k2 = np.array([2 - r2, 1 - r2, 0, 0]) / math.sqrt(9 - 6 * r2)
    k3 = np.array([0, 0, 1, r2]) / r3
    k4 = np.array([0, 0, r2, -1]) / r3
    return OrthonormalBasis(np.stack([k1, k2, k3, k4], axis=1))


def hadamard_first_qubit_basis(n: int = 4) -> OrthonormalBasis:
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    return OrthonormalBasis(np.kron(h, np.eye(2 ** (n - 1))))


def dephasing(seed: int = 0, threads: int | None = None, n: int = 200) -> Result:
    s1 = eigen_spectrum(dephase(diagonal_density([1, 0, 0, 0]), entangled_pair_basis()))
    err1 = float(np.max(np.abs(s1.weights - np.array([2 / 3, 1 / 3, 0, 0]))))
    rho10 = diagonal_density([0.1] * 10 + [0.0] * 6)
    s2 = eigen_spectrum(dephase(rho10, hadamard_first_qubit_basis()))
    err2 = float(np.max(np.abs(s2.weights - np.array([0.1] * 4 + [0.05] * 12))))
    rng = RandomStream(seed, (12,)).generator()
    err3 = 0.0
    for _ in range(n):
        dA, dB = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        psi = _random_state((dA, dB), rng)
        q, _ = np.linalg.qr(rng.standard_normal((dB, dB)) + 1j * rng.standard_normal((dB, dB)))
        rho = density_from_pure(psi)
        before = partial_trace_B(rho, (dA, dB)).entries
        after = partial_trace_B(dephase_B(rho, (dA, dB), OrthonormalBasis(q)), (dA, dB)).entries
        err3 = max(err3, float(np.max(np.abs(before - after))))
    data = {
        "qubit_pair": {"spectrum": [float(x) for x in s1.weights], "max_err": err1},
        "stabilizer_rank10": {"spectrum": [float(x) for x in s2.weights], "max_err": err2},
        "dephase_B_invariance": {"states": n, "max_err": err3},
    }
    return Result("dephasing", err1 <= 1e-10 and err2 <= 1e-10 and err3 <= 1e-10, data)


TARGETS: dict[str, Callable[..., Result]] = {
    "haar-2x2-mean": haar_2x2_mean,
    "haar-general-mean": haar_general_mean,
    "haar-2x2-pdf": haar_2x2_pdf,
    "bures": bures,
    "clifford": clifford,
    "maxima": maxima,
    "identities": identities,
    "ordering": ordering,
    "appG-table": g_table,
    "accessible-volume": accessible_volume,
    "rate-bound": rate_bound,
    "typicality": typicality,
    "dephasing": dephasing,
}


def _mc_line(d: dict) -> str:
    return f"MC {d['mean']:.6f} +- {d['stderr']:.1e} vs {d['analytic']:.6f} ({d['sigma_distance']:.2f} SE)"


def _hist_line(h: dict) -> str:
    return (
        f"max binned rel. dev {100 * h['max_rel_dev']:.2f}% (limit 5%), chi2 p = {h['chi2_p_value']:.3f}, "
        f"P(pass | exact sampler) ~ {h['pass_probability_5pct']:.2f}"
    )


def summary(r: Result) -> str:
    """One human-readable line of the headline numbers of a result."""
    d = r.data
    if r.target == "haar-2x2-mean":
        return _mc_line(d)
    if r.target == "haar-general-mean":
        return "; ".join(f"{c['dims'][0]}x{c['dims'][1]}: {c['sigma_distance']:.2f} SE" for c in d["cases"])
    if r.target == "haar-2x2-pdf":
        return _hist_line(d)
    if r.target == "bures":
        return (
            f"binary {_mc_line(d['binary_mean'])}; {_hist_line(d['histogram'])}; "
            f"Metropolis vs binary {d['metropolis']['sigma_vs_binary']:.2f} SE"
        )
    if r.target == "clifford":
        sig = ", ".join(f"k={c['k']}: {c['sigma_distance']:.2f} SE" for c in d["doped"])
        return f"max F at k=0 {max(d['max_F_k0'].values()):.1e}; {sig}"
    if r.target == "maxima":
        return f"max |r_F err| {d['max_err_r_F']:.1e}, max |N_F err| {d['max_err_N_F']:.1e}, r_V(2) = {d['capacity_d2']['r']:.7f}"
    if r.target == "identities":
        return f"escort KL order (median) {d['escort_kl']['median_order']:.3f}, max slope err {d['max_err_entropy_slope']:.1e}"
    if r.target == "appG-table":
        return "G = (" + ", ".join(d["G_4dp"]) + ")"
    if r.target == "ordering":
        a, b = d["k2_pair"]["k2_partial_sums"]
        return (
            f"k=2 partial sums {a:.4f} vs {b:.4f}; grid/pairwise mismatches {d['grid_vs_pairwise']['mismatches']}; "
            f"freezing {d['freezing']['counterexamples']}, rank {d['rank_obstruction']['counterexamples']} counterexamples"
        )
    if r.target == "accessible-volume":
        return f"K=2 [0.75, 1]: {_mc_line(d['interval_0.75_1'] | {'mean': d['interval_0.75_1']['mc']})}"
    if r.target == "rate-bound":
        lb = d["loose_bound"]
        v = sum(s["violations"] for s in d["random_sweeps"].values())
        return (
            f"saturation err {d['saturation']['max_abs_rate_minus_rhs']:.1e}; random-H violations {v}; "
            f"loose constant {lb['loose_constant']:.4f} violated at {lb['violations_xx']} xx times"
        )
    if r.target == "typicality":
        return "E[F]/E[E_lin] = " + ", ".join(f"{x['ratio']:.4f}" for x in d["ratios"])
    if r.target == "dephasing":
        return f"max errors {d['qubit_pair']['max_err']:.1e}, {d['stabilizer_rank10']['max_err']:.1e}, {d['dephase_B_invariance']['max_err']:.1e}"
    return ""

# acceptance criterion number -> target
CRITERIA = {
    1: "haar-2x2-mean",
    2: "haar-general-mean",
    3: "haar-2x2-pdf",
    4: "bures",
    5: "clifford",
    6: "maxima",
    7: "identities",
    8: "ordering",
    9: "accessible-volume",
    10: "rate-bound",
    11: "typicality",
    12: "dephasing",
}
