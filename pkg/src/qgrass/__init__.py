"""Exact workbench for subspace complexes (q-complexes) over finite fields.

Subpackages by theme:
  field / subspace / qarith   -- F_q arithmetic, canonical subspaces, q-counts
  chains                      -- chains mod m, boundary, coboundary, pairing
  cones                       -- the cone recursion and kernel generators
  homology                    -- exact (co)homology over prime and composite moduli
  special                     -- explicit middle cycles and their pairing
  expansion / indcomplex      -- brute-force expansion and the overlap preconditions
  randmodel                   -- the random q-complex model and sweeps
"""

from .chains import Chain, Cochain, ModRing, bilinear, boundary, coboundary, perp_chain
from .cones import ConeCache, OrderedBasis, cone, cone_size_bound, contraction, small_generators
from .errors import BudgetError, InternalCheckError, PreconditionError, QgrassError
from .field import FieldSpec, make_field
from .homology import HomologyReport, cohomology_dims, fill_cycle, homology_dims, homology_structure
from .qarith import gaussian_binomial, q_factorial, q_int
from .special import QuadraticForm, enumerate_mts, eta_explicit, eta_recursive, hyperbolic_form, is_totally_singular, pairing_check, psi
from .subspace import Subspace, codim1_subspaces, contains, enumerate_grassmannian, intersect, perp, rref, sum_spaces, superspaces

__version__ = "0.1.0"

__all__ = [
    "Chain", "Cochain", "ModRing", "bilinear", "boundary", "coboundary",
    "perp_chain", "ConeCache", "OrderedBasis", "cone", "cone_size_bound",
    "contraction", "small_generators", "BudgetError", "InternalCheckError",
    "PreconditionError", "QgrassError", "FieldSpec", "make_field",
    "HomologyReport", "cohomology_dims", "fill_cycle", "homology_dims",
    "homology_structure", "gaussian_binomial", "q_factorial", "q_int",
    "QuadraticForm", "enumerate_mts", "eta_explicit", "eta_recursive",
    "hyperbolic_form", "is_totally_singular", "pairing_check", "psi",
    "Subspace", "codim1_subspaces", "contains", "enumerate_grassmannian",
    "intersect", "perp", "rref", "sum_spaces", "superspaces",
]
