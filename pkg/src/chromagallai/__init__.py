"""Proper colourings, bichromatic paths and trees, and exact small-n extremal numbers."""

from .graph import ColoredGraph, Graph
from .patterns import PathWitness, TreePattern

__version__ = "0.1.0"

__all__ = ["ColoredGraph", "Graph", "PathWitness", "TreePattern", "__version__"]
