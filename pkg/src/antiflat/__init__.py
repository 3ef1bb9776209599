"""Antiflatness of entanglement spectra.

Spectra and Renyi entropies, antiflatness quantifiers, the antiflat order,
divergence identities, random-state ensembles and entanglement-rate bounds.
"""
from . import dynamics, ensembles, geometry, ordering, quantifiers, spectra, states
from .errors import AntiflatError, NumericalError, ValidationError
from .kernels import BACKEND
from .ordering import Relation, af_compare, standard_majorizes
from .quantifiers import capacity, linear_renyi_spread, log_antiflatness
from .spectra import Alpha, RenyiGrid, Spectrum, flat, renyi_entropy

__version__ = "0.1.0"

__all__ = [
    "Alpha",
    "AntiflatError",
    "BACKEND",
    "NumericalError",
    "Relation",
    "RenyiGrid",
    "Spectrum",
    "ValidationError",
    "af_compare",
    "capacity",
    "dynamics",
    "ensembles",
    "flat",
    "geometry",
    "linear_renyi_spread",
    "log_antiflatness",
    "ordering",
    "quantifiers",
    "renyi_entropy",
    "spectra",
    "standard_majorizes",
    "states",
]
