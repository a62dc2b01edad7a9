"""Construct, convert and verify q-matroids over prime fields."""

from .axioms import AxiomId, AxiomReport, AxiomViolation, Mode, check
from .family import SubspaceFamily
from .lattice import Subspace, SubspaceLattice, canonicalize, get_lattice, parse_subspace
from .qmatroid import QMatroid, RankFunction, make_qmatroid, uniform

__version__ = "0.1.0"

__all__ = [
    "AxiomId", "AxiomReport", "AxiomViolation", "Mode", "check", "SubspaceFamily", "Subspace",
    "SubspaceLattice", "canonicalize", "get_lattice", "parse_subspace", "QMatroid",
    "RankFunction", "make_qmatroid", "uniform",
]
