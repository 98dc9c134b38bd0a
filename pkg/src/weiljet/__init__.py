"""Divided differences, simplicial and cubic jets, and their Weil algebras, over any commutative ring."""

from .cubic import CubicArg, diff_quotient1, diff_quotient_k, f2_explicit, simplicial_via_cubic, t_extension
from .errors import (ArityMismatch, DomainError, ExactRingRequired, NonsingularRequired, NotInvertible,
                     OwnerMismatch, ParseError, UnknownSuite)
from .expr import MapExpr, evaluate, parse
from .jets import domain_check, cubic_domain_check, sj_via_ring, t_via_ring, taylor_coeffs
from .quotient import (CubicAlgebra, TruncatedPolyRing, embed_simplicial_in_cubic, m_matrix,
                       minimal_polynomial, n_matrix)
from .rings import QQ, ApproxReals, IntegersMod, Rationals, parse_ring
from .simplicial import (chain_rule_residual, divided_difference, divided_difference_rec, eval_points,
                         limited_expansion_residual, sj_extension)

__version__ = "0.1.0"
