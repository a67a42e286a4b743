"""Free resolutions, Rao modules and obstructedness of space curves in P^3."""

from .algebra import DEFAULT_CHAR, FreeModule, GradedDims, Polynomial, RingConfig
from .deformation import (cancel_L4_F1, cancel_L4_F2, cancel_common, component_count, ex1_family,
                          family_curve, generization_lattice, link, singularity_ideal)
from .groebner import groebner_basis
from .invariants import CurveData, InconsistentCurveData, euler_identities
from .oracle import classify, normal_sheaf
from .parsing import parse_ideal, parse_polynomial
from .rao import HomDims, hom_dims, n_tuple, rao_form
from .resolution import BettiTable, hilbert_numerics, minimal_free_resolution

__version__ = "0.1.0"
