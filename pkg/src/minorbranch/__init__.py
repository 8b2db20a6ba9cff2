"""Branching coefficients for SU(n-1) in SU(n) and the classical minor problem."""
from .branching import (
    BranchingTable,
    branch_su,
    branching_coefficient,
    count_constituents,
    max_multiplicity,
    multiplicity_pattern,
    stretch_profile,
)
from .gt import branch_su_oracle, branch_u, enumerate_interlacing, gt_count
from .kernels import (
    baryshnikov_pdf,
    interlaces,
    k_sign_det,
    kbar,
    kbar3_closed,
    kbar4_closed,
    kbar_max,
    kbar_signed,
    kbar_support,
)
from .spectral import hciz, kirillov_check, lattice_sum_check, schur_branch_oracle, schur_poly
from .weights import (
    DynkinLabel,
    YoungWeight,
    dynkin_to_young,
    spacings,
    su_normalize,
    vandermonde,
    weyl_dimension,
    weyl_vector,
    young_to_dynkin,
)

__version__ = "0.1.0"
