"""Monte Carlo estimation of spectral functionals over random-state ensembles.

Work is cut into fixed-size blocks, block j drawing from stream (seed, j). Block
boundaries do not depend on the thread count and results are gathered in block
order, so estimates are bit-identical for any number of workers.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..errors import ValidationError
from ..quantifiers import batch_F, batch_logL, batch_V, moments
from .bures import batch_means_stderr, bures_binary_batch, bures_hall_general_batch
from .clifford import MAX_QUBITS, doped_statevector
from .haar import haar_spectra_batch
from .rng import RandomStream

BLOCK = 4096
CLIFFORD_BLOCK = 256

FUNCTIONALS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "F": batch_F,
    "logL": batch_logL,
    "V": batch_V,
    "E_lin": lambda w: 1.0 - moments(w, 2),
    "purity": lambda w: moments(w, 2),
}


@dataclass(frozen=True)
class EnsembleSpec:
    """kind is "haar", "bures" or "clifford".

    haar/bures use (dA, dB); clifford uses n_qubits, k dopings, phase theta and
    the cut (first ``cut`` qubits form A; default n // 2).
    """

    kind: str
    dA: int = 2
    dB: int = 2
    n_qubits: int = 2
    k: int = 0
    theta: float = math.pi / 4
    cut: int | None = None

    def __post_init__(self):
        if self.kind not in ("haar", "bures", "clifford"):
            raise ValidationError(f"unknown ensemble kind {self.kind!r}")
        if self.kind == "clifford":
            n = self.n_qubits
            if not 2 <= n <= MAX_QUBITS:
                raise ValidationError(f"n_qubits must lie in [2, {MAX_QUBITS}]")
            if self.k < 0:
                raise ValidationError("k must be >= 0")
            if not 0.0 <= self.theta < 2 * math.pi:
                raise ValidationError("theta must lie in [0, 2 pi)")
            if self.cut is not None and not 1 <= self.cut < n:
                raise ValidationError(f"cut must satisfy 1 <= cut < {n}")
        elif self.dA < 1 or self.dB < 1:
            raise ValidationError(f"dimensions must be >= 1, got ({self.dA}, {self.dB})")
        if self.kind == "bures" and self.dA > self.dB:
            raise ValidationError("Bures-Hall sampling needs d_A <= d_B")

    @classmethod
    def haar(cls, dA: int, dB: int) -> "EnsembleSpec":
        return cls("haar", dA=dA, dB=dB)

    @classmethod
    def bures(cls, dA: int, dB: int) -> "EnsembleSpec":
        return cls("bures", dA=dA, dB=dB)

    @classmethod
    def clifford(cls, n_qubits: int, k: int = 0, theta: float = math.pi / 4, cut: int | None = None) -> "EnsembleSpec":
        return cls("clifford", n_qubits=n_qubits, k=k, theta=theta, cut=cut)

    @property
    def cut_(self) -> int:
        return self.n_qubits // 2 if self.cut is None else self.cut

    @property
    def dims(self) -> tuple[int, int]:
        if self.kind == "clifford":
            return 2**self.cut_, 2 ** (self.n_qubits - self.cut_)
        return self.dA, self.dB

    def to_json(self) -> dict:
        if self.kind == "clifford":
            return {"kind": "clifford", "n_qubits": self.n_qubits, "k": self.k, "theta": self.theta, "cut": self.cut_}
        return {"kind": self.kind, "dA": self.dA, "dB": self.dB}


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    n_samples: int
    seed: int

    def sigma_distance(self, target: float) -> float:
        diff = abs(self.mean - target)
        if self.stderr == 0.0:
            return 0.0 if diff == 0.0 else math.inf
        return diff / self.stderr

    def to_json(self) -> dict:
        return {"mean": self.mean, "stderr": self.stderr, "n_samples": self.n_samples, "seed": self.seed}


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("ANTIFLAT_THREADS", "1"))
    if threads < 1:
        raise ValidationError(f"threads must be >= 1, got {threads}")
    return threads


def _clifford_block(spec: EnsembleSpec, m: int, stream: RandomStream) -> np.ndarray:
    g = stream.generator()
    dA, dB = spec.dims
    out = np.zeros((m, min(dA, dB)))
    for i in range(m):
        psi = doped_statevector(spec.n_qubits, spec.k, spec.theta, g)
        s = np.linalg.svd(psi.reshape(dA, dB), compute_uv=False)
        out[i] = s * s
    return out / out.sum(axis=1, keepdims=True)


def _block(spec: EnsembleSpec, m: int, stream: RandomStream) -> np.ndarray:
    if spec.kind == "haar":
        return haar_spectra_batch(spec.dA, spec.dB, m, stream)
    if spec.kind == "clifford":
        return _clifford_block(spec, m, stream)
    lam = bures_binary_batch(m, stream)
    return np.sort(np.stack([lam, 1.0 - lam], axis=1), axis=1)[:, ::-1]


def sample_spectra(spec: EnsembleSpec, n: int, seed: int = 0, threads: int | None = None) -> np.ndarray:
    """n descending reduced spectra, shape (n, min(dA, dB)); deterministic in seed."""
    if n < 1:
        raise ValidationError("n must be >= 1")
    if spec.kind == "bures" and (spec.dA, spec.dB) != (2, 2):
        return bures_hall_general_batch(spec.dA, spec.dB, n, RandomStream(seed))
    size = CLIFFORD_BLOCK if spec.kind == "clifford" else BLOCK
    sizes = [min(size, n - s) for s in range(0, n, size)]
    jobs = [(m, RandomStream(seed, (j,))) for j, m in enumerate(sizes)]
    workers = resolve_threads(threads)
    if workers == 1 or len(jobs) == 1:
        parts = [_block(spec, m, st) for m, st in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _block(spec, *job), jobs))
    return np.concatenate(parts)


def _estimate(values: np.ndarray, seed: int, metropolis: bool) -> MCEstimate:
    n = values.size
    se = batch_means_stderr(values) if metropolis else float(values.std(ddof=1) / math.sqrt(n))
    return MCEstimate(float(values.mean()), se, n, seed)


def mc_estimate_many(
    spec: EnsembleSpec,
    functionals: Sequence[str],
    n: int,
    seed: int = 0,
    threads: int | None = None,
) -> dict[str, MCEstimate]:
    """Several functionals evaluated on one shared sample."""
    if n < 100:
        raise ValidationError(f"n must be >= 100, got {n}")
    unknown = [f for f in functionals if f not in FUNCTIONALS]
    if unknown:
        raise ValidationError(f"unknown functional(s) {unknown}; choose from {sorted(FUNCTIONALS)}")
    w = sample_spectra(spec, n, seed, threads)
    metropolis = spec.kind == "bures" and (spec.dA, spec.dB) != (2, 2)
    return {f: _estimate(FUNCTIONALS[f](w), seed, metropolis) for f in functionals}


def mc_estimate(spec: EnsembleSpec, functional: str, n: int, seed: int = 0, threads: int | None = None) -> MCEstimate:
    return mc_estimate_many(spec, [functional], n, seed, threads)[functional]
