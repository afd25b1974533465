"""Finite-model-theory workbench: evaluation, forbidden substructures,
graph interpretations, gadget encodings and Turing-machine sentences."""

__version__ = "0.1.0"
