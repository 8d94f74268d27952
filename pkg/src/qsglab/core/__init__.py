"""Finite quantum semigroups: ``C(S)`` with its comultiplication and operators."""
from .algebra import (
    FunctionAlgebra,
    Functional,
    HaarResult,
    convolve,
    coassoc_check,
    counit_solve,
    delta_map,
    haar_absorption_lambda,
    haar_solve,
    is_counit,
    is_haar,
    quantum_group_density_check,
    star_hom_check,
    trivial_left,
    trivial_right,
)
from .gns import (
    GnsData,
    IsometryResult,
    NotAState,
    NotHaar,
    RepresentativeInconsistency,
    gns_construct,
    isometry_oracle,
    multiplicative_isometry,
    verify_gns,
)
from .operators import (
    CHECKLIST,
    DeltaFromW,
    PreconditionFailed,
    ProjectionSuite,
    build_delta_from_w,
    counit_projections,
    kac_takesaki,
    pentagon_check,
    pentagon_witness,
)
from .semigroup import FiniteSemigroup, MalformedTable, NotAssociative, ValidationReport, validate_semigroup
