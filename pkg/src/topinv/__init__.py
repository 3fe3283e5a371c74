"""Exact homology, discrete Morse reduction and manifold invariants of finite simplicial complexes."""

from .complex import SimplicialComplex, parse_facets, link, wedge, skeleton
from .rings import ZZ, QQ, GF2, PrimeField, parse_ring
from .chains import SparseMatrix, Chain, Cochain, boundary_matrix
from .smith import snf, rank, determinant
from .morse import MorseMatching, greedy_matching, validate_matching, reduce_with_matching
from .homology import AbelianGroup, homology, cohomology, reduce_mod_boundaries
from .manifold import (check_closed_pseudomanifold, orientation, cup, cap, cohomology_ring_table,
                       intersection_form, signature, stiefel_whitney_classes)
from .pi1 import presentation, abelianization, simplify
from .generators import builtin

__version__ = "0.1.0"
