"""Dynkin biagrams, bipartite T-systems and Zamolodchikov periodicity.

Modules: ``exchange`` (B-matrices), ``laurent`` (exact Laurent polynomials),
``biagram`` (Dynkin biagrams, types, labelings), ``catalog`` (admissible
families), ``transform`` (folding and the global flip), ``tsystem`` (exact
birational dynamics), ``tropical`` (tropical dynamics and mutation counts),
``wgraph`` (I2(p) x I2(q) cells) and ``cli``.
"""

from .biagram import DynkinBiagram, DynkinType, parse_type
from .catalog import FamilySpec, build
from .exchange import ExchangeMatrix

__all__ = ["DynkinBiagram", "DynkinType", "ExchangeMatrix", "FamilySpec", "build", "parse_type"]
__version__ = "0.1.0"
