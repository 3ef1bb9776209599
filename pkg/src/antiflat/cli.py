"""Command-line interface.

Every JSON document carries ``"schema": "antiflat/1"``. Exit codes: 0 success,
1 a reproduction target failed, 2 invalid input, 3 numerical failure.
Infinite floats are written as the string "inf"; NaN as "nan".
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import dynamics as dyn
from . import reproduce as rep
from .errors import NumericalError, ValidationError
from .ensembles import analytic as an
from .ensembles.montecarlo import EnsembleSpec, mc_estimate, resolve_threads, sample_spectra
from .ensembles.pdfs import (
    F_MAX,
    LOGL_MAX,
    bin_average,
    pdf_F_bures_binary,
    pdf_F_haar_binary,
    pdf_logL_haar_binary,
)
from .geometry import geometry_report
from .ordering import (
    VERDICT_TOL,
    accessible_interval_probability,
    af_accessible_membership_binary,
    af_compare,
    af_compare_pairwise,
    af_target_probability_binary,
    standard_majorizes,
)
from .quantifiers import (
    MEASURES,
    batch_F,
    batch_logL,
    max_capacity,
    max_linear_spread,
    max_log_antiflatness,
    pareto_scan,
)
from .spectra import DEFAULT_GRID, RenyiGrid, Spectrum, index_to_json, spectrum_from_csv, spectrum_from_json
from .states import BipartitePureState

SCHEMA = "antiflat/1"
EXIT_OK, EXIT_FAILED, EXIT_VALIDATION, EXIT_NUMERIC = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    threads: int = 1
    tol: float = VERDICT_TOL
    fmt: str = "json"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            seed=getattr(args, "seed", 0),
            threads=resolve_threads(getattr(args, "threads", None)),
            tol=getattr(args, "tol", VERDICT_TOL),
            fmt=getattr(args, "format", "json"),
        )


def _clean(obj):
    """Recursively convert numpy scalars/arrays and non-finite floats to JSON-safe values."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def emit_json(payload: dict, out=None) -> None:
    out = out or sys.stdout
    doc = {"schema": SCHEMA, **payload}
    out.write(json.dumps(_clean(doc), sort_keys=True) + "\n")


def emit_csv(header: list[str], rows, out=None) -> None:
    out = out or sys.stdout
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in r])
    out.write(buf.getvalue())


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def load_spectrum(path: str) -> Spectrum:
    text = _read(path)
    try:
        if path.endswith(".csv"):
            return spectrum_from_csv(text)
        return spectrum_from_json(text)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValidationError(f"malformed spectrum file {path}: {exc}") from exc


def _grid(args) -> RenyiGrid:
    if not getattr(args, "grid", None):
        return DEFAULT_GRID
    return RenyiGrid.from_json([x.strip() for x in args.grid.split(",")])


# --- subcommands -------------------------------------------------------------


def cmd_measure(args, cfg: RunConfig) -> int:
    s = load_spectrum(args.input)
    names = args.measures.split(",") if args.measures else ["F", "logL", "V"]
    unknown = [n for n in names if n not in MEASURES]
    if unknown:
        raise ValidationError(f"unknown measure(s) {unknown}; choose from {sorted(MEASURES)}")
    emit_json({n: MEASURES[n](s) for n in names})
    return EXIT_OK


def _verdict_json(v) -> dict:
    out = {"relation": str(v.relation)}
    if v.witness is not None:
        out["witness"] = [index_to_json(a) if not isinstance(a, int) else a for a in v.witness]
        out["counter_witness"] = [index_to_json(a) if not isinstance(a, int) else a for a in v.counter_witness]
    return out


def cmd_order(args, cfg: RunConfig) -> int:
    rho, sigma = load_spectrum(args.rho), load_spectrum(args.sigma)
    grid = _grid(args)
    compare = af_compare_pairwise if args.pairwise else af_compare
    af = compare(rho, sigma, grid, cfg.tol)
    payload = {"grid": grid.to_json(), "antiflat": _verdict_json(af), "majorization": _verdict_json(standard_majorizes(rho, sigma))}
    if af.detail and "G" in af.detail:
        payload["G"] = af.detail["G"]
    emit_json(payload)
    return EXIT_OK


def cmd_extremal(args, cfg: RunConfig) -> int:
    d = args.d
    if args.pareto:
        rs = np.linspace(0.0, (d - 1) / d, args.points)
        pts = pareto_scan(d, rs, _grid(args))
        if cfg.fmt == "csv":
            emit_csv(["r", "F", "logL", "V", "dominated"], [(p.r, p.F, p.logL, p.V, int(p.dominated)) for p in pts])
        else:
            emit_json({"d": d, "points": [p.__dict__ for p in pts]})
        return EXIT_OK
    fn = {"F": max_linear_spread, "logL": max_log_antiflatness, "V": max_capacity}[args.measure]
    r, value = fn(d)
    emit_json({"d": d, "measure": args.measure, "r_max": r, "max": value})
    return EXIT_OK


def _spec_from_args(args) -> EnsembleSpec:
    if args.ensemble == "clifford":
        return EnsembleSpec.clifford(args.n_qubits, args.k, args.theta, args.cut)
    return EnsembleSpec(args.ensemble, dA=args.dA, dB=args.dB)


def _analytic(spec: EnsembleSpec, functional: str):
    dA, dB = spec.dims
    if functional == "F":
        if spec.kind == "haar":
            return an.haar_mean_F(dA, dB)
        if spec.kind == "bures" and dA == dB and dA >= 2:
            return an.bures_mean_F(dA * dB)
        if spec.kind == "clifford" and dA == dB:
            return an.clifford_mean_F(dA * dB, spec.k, spec.theta)
    if spec.kind == "haar" and functional in ("purity", "E_lin"):
        p = an.haar_mean_purity(dA, dB)
        return p if functional == "purity" else 1.0 - p
    return None


def cmd_sample(args, cfg: RunConfig) -> int:
    spec = _spec_from_args(args)
    est = mc_estimate(spec, args.functional, args.n, cfg.seed, cfg.threads)
    target = _analytic(spec, args.functional)
    payload = {"ensemble": spec.to_json(), "functional": args.functional, **est.to_json(),
               "analytic": target, "sigma_distance": est.sigma_distance(target) if target is not None else None}
    emit_json(payload)
    return EXIT_OK


PDFS = {
    "F_haar2": (pdf_F_haar_binary, F_MAX, EnsembleSpec.haar(2, 2), batch_F),
    "F_bures2": (pdf_F_bures_binary, F_MAX, EnsembleSpec.bures(2, 2), batch_F),
    "logL_haar2": (pdf_logL_haar_binary, LOGL_MAX, EnsembleSpec.haar(2, 2), batch_logL),
}


def cmd_pdf(args, cfg: RunConfig) -> int:
    pdf, hi, spec, fn = PDFS[args.which]
    edges = np.linspace(0.0, hi, args.bins + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    dens = bin_average(pdf, edges)
    if args.n > 0:
        vals = fn(sample_spectra(spec, args.n, cfg.seed, cfg.threads))
        emp, _ = np.histogram(vals, edges, density=True)
    else:
        emp = np.full(args.bins, math.nan)
    emit_csv(["value", "density", "empirical_density"], zip(centers, dens, emp))
    return EXIT_OK


def _load_hamiltonian(spec: str) -> dyn.Hamiltonian:
    if spec == "xx":
        return dyn.xx_hamiltonian()
    try:
        return dyn.Hamiltonian.from_json(_read(spec))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValidationError(f"malformed Hamiltonian file {spec}: {exc}") from exc


def _load_state(spec: str, dims) -> BipartitePureState:
    if spec == "zero":
        v = np.zeros(dims[0] * dims[1], dtype=complex)
        v[0] = 1.0
        return BipartitePureState(v, dims)
    try:
        return BipartitePureState.from_json(_read(spec))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ValidationError(f"malformed state file {spec}: {exc}") from exc


def cmd_rate(args, cfg: RunConfig) -> int:
    h = _load_hamiltonian(args.H)
    psi0 = _load_state(args.psi0, h.dims)
    if args.steps < 1 or args.t1 < args.t0:
        raise ValidationError("need steps >= 1 and t1 >= t0")
    times = np.linspace(args.t0, args.t1, args.steps)
    recs = dyn.rate_bound_report(h, psi0, times)
    if cfg.fmt == "json":
        emit_json({"records": [r.to_json() for r in recs]})
    else:
        emit_csv(
            ["t", "E_lin", "dEdt", "dEdt_commutator", "rhs", "loose_rhs", "satisfied", "loose_satisfied"],
            [(r.t, r.E_lin, r.dEdt_numeric, r.dEdt_commutator, r.rhs, r.loose_rhs, int(r.satisfied), int(r.loose_satisfied)) for r in recs],
        )
    return EXIT_OK


def cmd_volume(args, cfg: RunConfig) -> int:
    payload = {"r": args.r, "K": args.K, "target_probability": af_target_probability_binary(args.r, args.K)}
    if args.x is not None:
        payload["x"] = args.x
        payload["accessible"] = af_accessible_membership_binary(args.x, args.r)
    if args.lo is not None:
        hi = 1.0 if args.hi is None else args.hi
        payload["interval"] = [args.lo, hi]
        payload["interval_probability"] = accessible_interval_probability(args.lo, hi, args.K)
    emit_json(payload)
    return EXIT_OK


def cmd_geometry(args, cfg: RunConfig) -> int:
    emit_json(geometry_report(load_spectrum(args.input), args.eps))
    return EXIT_OK


def cmd_reproduce(args, cfg: RunConfig) -> int:
    names = list(rep.TARGETS) if args.all else args.targets
    if not names:
        raise ValidationError("name at least one target or pass --all")
    unknown = [n for n in names if n not in rep.TARGETS]
    if unknown:
        raise ValidationError(f"unknown target(s) {unknown}; choose from {list(rep.TARGETS)}")
    results = [rep.TARGETS[n](seed=cfg.seed, threads=cfg.threads) for n in names]
    if cfg.fmt == "text":
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.target}: {rep.summary(r)}")
    else:
        emit_json({"seed": cfg.seed, "results": [r.to_json() for r in results],
                   "passed": all(r.passed for r in results)})
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="antiflat", description="Antiflatness of entanglement spectra.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=False, fmt=None):
        if seed:
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--threads", type=int, default=None, help="worker threads (default: $ANTIFLAT_THREADS or 1)")
        if fmt:
            sp.add_argument("--format", choices=fmt, default=fmt[0])

    m = sub.add_parser("measure", help="antiflatness measures of a spectrum")
    m.add_argument("--in", dest="input", required=True, help="spectrum JSON ([..] or {weights}) or one-row CSV")
    m.add_argument("--measures", help="comma list from F,logL,V,gamma (default F,logL,V)")
    m.set_defaults(func=cmd_measure)

    o = sub.add_parser("order", help="compare two spectra")
    o.add_argument("--rho", required=True)
    o.add_argument("--sigma", required=True)
    o.add_argument("--grid", help="comma list of Renyi indices, e.g. 0+,0.5,1,2,inf")
    o.add_argument("--tol", type=float, default=VERDICT_TOL)
    o.add_argument("--pairwise", action="store_true", help="use the O(N^2) pairwise test")
    o.set_defaults(func=cmd_order)

    e = sub.add_parser("extremal", help="maxima over the jump family, or a Pareto scan")
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--measure", choices=["F", "logL", "V"], default="F")
    e.add_argument("--pareto", action="store_true")
    e.add_argument("--points", type=int, default=51)
    e.add_argument("--grid")
    common(e, fmt=["json", "csv"])
    e.set_defaults(func=cmd_extremal)

    s = sub.add_parser("sample", help="Monte Carlo estimate over an ensemble")
    s.add_argument("--ensemble", choices=["haar", "bures", "clifford"], default="haar")
    s.add_argument("--dA", type=int, default=2)
    s.add_argument("--dB", type=int, default=2)
    s.add_argument("--n-qubits", type=int, default=2)
    s.add_argument("--k", type=int, default=0)
    s.add_argument("--theta", type=float, default=math.pi / 4)
    s.add_argument("--cut", type=int, default=None)
    s.add_argument("--n", type=int, default=100_000)
    s.add_argument("--functional", choices=["F", "logL", "V", "E_lin", "purity"], default="F")
    common(s, seed=True)
    s.set_defaults(func=cmd_sample)

    d = sub.add_parser("pdf", help="analytic density table with an empirical histogram (CSV)")
    d.add_argument("--which", choices=sorted(PDFS), default="F_haar2")
    d.add_argument("--bins", type=int, default=200)
    d.add_argument("--n", type=int, default=100_000, help="samples for the empirical column (0 to skip)")
    common(d, seed=True)
    d.set_defaults(func=cmd_pdf)

    r = sub.add_parser("rate", help="entanglement-rate bound along a trajectory")
    r.add_argument("--H", required=True, help="Hamiltonian JSON file, or 'xx' for sigma_x x sigma_x")
    r.add_argument("--psi0", default="zero", help="state JSON file, or 'zero' for |0...0>")
    r.add_argument("--t0", type=float, default=0.0)
    r.add_argument("--t1", type=float, default=math.pi)
    r.add_argument("--steps", type=int, default=200)
    common(r, fmt=["csv", "json"])
    r.set_defaults(func=cmd_rate)

    v = sub.add_parser("volume", help="accessible-set probabilities for a qubit against K levels")
    v.add_argument("--r", type=float, required=True, help="target largest eigenvalue in [1/2, 1]")
    v.add_argument("--K", type=int, default=2)
    v.add_argument("--x", type=float, default=None, help="also test membership of (x, 1-x)")
    v.add_argument("--lo", type=float, default=None)
    v.add_argument("--hi", type=float, default=None)
    v.set_defaults(func=cmd_volume)

    g = sub.add_parser("geometry", help="divergence identities for a spectrum")
    g.add_argument("--in", dest="input", required=True)
    g.add_argument("--eps", type=float, default=1e-3)
    g.set_defaults(func=cmd_geometry)

    x = sub.add_parser("reproduce", help="run reproduction targets")
    x.add_argument("targets", nargs="*", help=", ".join(rep.TARGETS))
    x.add_argument("--all", action="store_true")
    common(x, seed=True, fmt=["json", "text"])
    x.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except ValidationError as exc:
        print(f"antiflat: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"antiflat: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
