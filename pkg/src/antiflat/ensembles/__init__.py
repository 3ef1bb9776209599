"""Random-state ensembles, their closed-form moments and Monte Carlo estimation."""
from .analytic import (
    bures_mean_F,
    clifford_f_theta,
    clifford_mean_F,
    clifford_mean_F_limit,
    haar_mean_cube,
    haar_mean_F,
    haar_mean_purity,
    haar_mean_sq_purity,
    haar_var_F,
)
from .bures import bures_hall_chain, bures_hall_general_batch, bures_hall_sample_binary, bures_hall_sample_general
from .clifford import CliffordTableau, doped_state, random_clifford, stabilizer_state
from .haar import haar_pure, haar_spectra_batch, lloyd_pagels_density
from .montecarlo import EnsembleSpec, MCEstimate, mc_estimate, mc_estimate_many, sample_spectra
from .pdfs import (
    F_preimages,
    mapped_pdf,
    pdf_F_bures_binary,
    pdf_F_haar_binary,
    pdf_logL_haar_binary,
)
from .rng import RandomStream

__all__ = [
    "CliffordTableau",
    "EnsembleSpec",
    "F_preimages",
    "MCEstimate",
    "RandomStream",
    "bures_hall_chain",
    "bures_hall_general_batch",
    "bures_hall_sample_binary",
    "bures_hall_sample_general",
    "bures_mean_F",
    "clifford_f_theta",
    "clifford_mean_F",
    "clifford_mean_F_limit",
    "doped_state",
    "haar_mean_F",
    "haar_mean_cube",
    "haar_mean_purity",
    "haar_mean_sq_purity",
    "haar_pure",
    "haar_spectra_batch",
    "haar_var_F",
    "lloyd_pagels_density",
    "mapped_pdf",
    "mc_estimate",
    "mc_estimate_many",
    "pdf_F_bures_binary",
    "pdf_F_haar_binary",
    "pdf_logL_haar_binary",
    "random_clifford",
    "sample_spectra",
    "stabilizer_state",
]
