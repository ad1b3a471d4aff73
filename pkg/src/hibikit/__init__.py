"""Hibi rings of finite posets and distributive lattices, with exact arithmetic."""

__version__ = "0.1.0"

from .errors import (
    BoundExceeded,
    HibiError,
    NotALattice,
    NotDistributive,
    ParseError,
    TheoremViolated,
)
from .poset import Poset, poset_from_covers
from .lattice import Lattice, DistributiveLattice, as_lattice, distributive_lattice, ideal_lattice
from .hibi import hibi_ideal, join_meet_ideal
from .invariants import hilbert_data, minimal_T
from .betti import betti_table
from .planar import PlanarLattice, planar_from_points

__all__ = [
    "BoundExceeded",
    "DistributiveLattice",
    "HibiError",
    "Lattice",
    "NotALattice",
    "NotDistributive",
    "ParseError",
    "PlanarLattice",
    "Poset",
    "TheoremViolated",
    "as_lattice",
    "betti_table",
    "distributive_lattice",
    "hibi_ideal",
    "hilbert_data",
    "ideal_lattice",
    "join_meet_ideal",
    "minimal_T",
    "planar_from_points",
    "poset_from_covers",
]
