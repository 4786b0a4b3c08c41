"""Exact GF(2) computations for the Peterson hit problem."""

from .errors import (
    DimensionMismatchError,
    ExponentOverflowError,
    HitForgeError,
    InvariantViolationError,
    NoSpikeError,
    ParseError,
)
from .poly_core import (
    Monomial,
    Polynomial,
    complement_monomial,
    one,
    parse_monomial,
    parse_polynomial,
    variable,
)
from .invariants import (
    MuDecomposition,
    WeightVector,
    alpha,
    alpha_bit,
    compare,
    is_spike,
    minimal_spike,
    mu,
    singer_is_hit,
    weight_vector,
)
from .steenrod import a_s_plus_images, sq, total_sq_images
from .linalg_f2 import (
    BitMatrix,
    MonomialColumnBasis,
    contains,
    from_polynomials,
    non_pivot_monomials,
    reduce,
)
from .homomorphisms import (
    IndexPair,
    b1_basis,
    b2_basis,
    b3_basis,
    enumerate_Nk,
    f_sub,
    kameko_down_poly,
    linear_sub,
    p_proj,
    phi,
    phi_families,
    psi_up,
    spike_stratum_basis,
)
from .engine import (
    DegreeComponentReport,
    HitEngine,
    KamekoReport,
    dim_qp,
    equiv,
    hit_subspace,
    is_hit,
    is_strictly_inadmissible,
    kameko_matrix,
    qp_report,
)

__version__ = "0.1.0"
