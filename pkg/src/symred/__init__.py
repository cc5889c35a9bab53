"""Symmetry reduction for semidefinite programs, sums of squares,
invariant polynomial optimisation and SAGE certificates."""

from .algebra import MatrixPolynomial, Polynomial, elementary_symmetric, power_sum, variables
from .degree_principle import minimize_all
from .errors import CapacityError, ConvergenceError, PreconditionError, SymredError, UnsupportedError
from .groups import (GroupRepresentation, cyclic_group, dihedral_group, explicit_group, parse_group_spec,
                     polynomial_representation, reynolds, symmetric_group)
from .invariants import (HMatrix, InvariantBasis, h_matrix, higher_specht, newton_convert,
                         rewrite_in_invariants)
from .lp import LPProblem, simplex_solve
from .orbit_space import HilbertMap, j_matrix, moment_relaxation_qk, reformulate
from .sage import Signomial, age_feasible, sage_bound, sage_feasible
from .sdp import SDPProblem, export_sdpa, parse_sdpa, reduce_sdp, theta_cyclic_lp, theta_sdp
from .sos import block_sos, gram_feasibility, symmetric_quartic_form
from .symmetry_adapted import block_diagonalize, isotypic_projector, symmetry_adapted_basis

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "ConvergenceError", "GroupRepresentation", "HMatrix", "HilbertMap", "InvariantBasis",
    "LPProblem", "MatrixPolynomial", "Polynomial", "PreconditionError", "SDPProblem", "Signomial",
    "SymredError", "UnsupportedError", "age_feasible", "block_diagonalize", "block_sos", "cyclic_group",
    "dihedral_group", "elementary_symmetric", "explicit_group", "export_sdpa", "gram_feasibility", "h_matrix",
    "higher_specht", "isotypic_projector", "j_matrix", "minimize_all", "moment_relaxation_qk", "newton_convert",
    "parse_group_spec", "parse_sdpa", "polynomial_representation", "power_sum", "reduce_sdp", "reformulate",
    "reynolds", "rewrite_in_invariants", "sage_bound", "sage_feasible", "simplex_solve", "symmetric_group",
    "symmetric_quartic_form", "symmetry_adapted_basis", "theta_cyclic_lp", "theta_sdp", "variables",
]
