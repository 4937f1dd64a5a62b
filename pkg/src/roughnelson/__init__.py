"""Rough sets of quasiorders, Nelson algebras, Alexandrov topologies and Monteiro spaces."""

from .errors import CapExceededError, CheckFailed, ConsistencyError, InputError, LatticeError, RoughNelsonError
from .limits import universe_cap
from .monteiro import MonteiroSpace, check_monteiro, monteiro_nelson_algebra
from .nelson import NelsonAlgebra, check_axioms, is_semi_simple
from .order import Lattice, Poset
from .relation import Relation, Universe
from .report import Finding, Report
from .representation import (
    embedding,
    equivalence_suite,
    join_irreducible_frame,
    prime_filter_space,
    rough_set_representation,
    upset_algebra_of_j,
)
from .roughset import RoughPair, RoughSetSystem, build_rs, rs_algebra, rs_nelson_algebra
from .topology import AlexandrovTopology

__version__ = "0.1.0"
