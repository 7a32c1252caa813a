"""Exact computations for the toric varieties attached to a simple root system.

The weight lattice P and root lattice Q, the coset weights lambda_R, lambda_dom
and lambda_C, the cones and fans of V = Spec C[sigma-dual cap P], fiber groups
Z(J), weight multiplicities and the B-orbit closure normality test.
"""
from .rootsys import (
    RootSystem,
    RootSystemError,
    RootSystemId,
    Weight,
    apply_word,
    build_root_system,
    dominant_representative,
    parse_type,
    simple_reflection,
    weyl_orbit,
)
from .intlat import (
    FiniteAbelianGroup,
    LatticeError,
    express_in_basis,
    lattice_subspace_intersection,
    quotient_group,
    smith_normal_form,
)
from .cosets import CosetRecord, CosetTable, InvariantViolation, conjugacy_witness, enumerate_cosets, lambda_R_of

__version__ = "0.1.0"
