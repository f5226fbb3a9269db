"""Exact lattice, cone and Fujiki-relation computations for OG10-type
hyper-Kahler geometry."""

from .errors import (
    HklatError,
    InconsistencyError,
    ResourceError,
    UnsupportedInputError,
    UsageError,
)
from .fujiki import BBForm, IntersectionTable, full_table, og10_l_theta_form, solve_gram, top_intersection
from .lattice import GramLattice, divisibility, is_primitive, orthogonal_complement, pair
from .mordell_weil import (
    CubicFourfoldHodgeData,
    FibrationData,
    mw_rank_of_jx,
    rho_of_j,
    shioda_tate_rank,
)
from .mukai import (
    K3Context,
    ModuliReport,
    MukaiVector,
    moduli_report,
    mukai_gram_lattice,
    mukai_pair,
    mukai_square,
    tensor_by_polarization,
)
from .walls import (
    ChamberReport,
    EnumerationResult,
    WallClass,
    chamber_report,
    enumerate_constrained_spherical,
)

__all__ = [
    "BBForm",
    "ChamberReport",
    "CubicFourfoldHodgeData",
    "EnumerationResult",
    "FibrationData",
    "GramLattice",
    "HklatError",
    "InconsistencyError",
    "IntersectionTable",
    "K3Context",
    "ModuliReport",
    "MukaiVector",
    "ResourceError",
    "UnsupportedInputError",
    "UsageError",
    "WallClass",
    "chamber_report",
    "divisibility",
    "enumerate_constrained_spherical",
    "full_table",
    "is_primitive",
    "moduli_report",
    "mukai_gram_lattice",
    "mukai_pair",
    "mukai_square",
    "mw_rank_of_jx",
    "og10_l_theta_form",
    "orthogonal_complement",
    "pair",
    "rho_of_j",
    "shioda_tate_rank",
    "solve_gram",
    "tensor_by_polarization",
    "top_intersection",
]
