"""Mutation dynamics of rank 3 real quivers."""

from qmut.classifier import Classification, classify
from qmut.divergence import DivergenceCertificate, divergence_witness
from qmut.quiver_core import ExchangeTriple, mutate, mutate_sequence

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "DivergenceCertificate",
    "ExchangeTriple",
    "classify",
    "divergence_witness",
    "mutate",
    "mutate_sequence",
]
