"""Extremal tools for hypergraphs without loose paths."""

from __future__ import annotations

from .hypercore import Hypergraph, HypergraphFormatError, Signature, TwinSet, signature, twins

__version__ = "0.1.0"

__all__ = ["Hypergraph", "HypergraphFormatError", "Signature", "TwinSet", "signature", "twins", "__version__"]
