"""Exact computations with symmetric d-linear forms over Q.

Centers, Lie algebras, orthogonal decompositions, Reichstein's cyclic forms
with their Witt-type Lie algebras, and the automorphism group of a cyclic
center together with rational lifting to isometries.
"""

from .constructions import (
    NumberFieldSpec,
    diagonal_form,
    trace_form_matrix_algebra,
    trace_form_number_field,
)
from .cyclic import (
    CyclicData,
    embed_rho,
    find_cyclic_element,
    reichstein,
    verify_grading,
    witt_check,
)
from .forms import (
    FormParseError,
    HomoPoly,
    SymmetricForm,
    associated_poly,
    evaluate,
    form_from_json,
    form_to_json,
    is_isometry,
    orthogonal_sum,
    polarize,
    transform,
)
from .group import (
    CenterAut,
    Inconsistent,
    NoRationalLift,
    NotInCenterSpan,
    NotIsometry,
    chi,
    group_inv,
    group_mul,
    kernel_check,
    lift,
    rho1,
    rho2,
)
from .lie import (
    LieBasis,
    NotClosed,
    NotInCenter,
    center_action,
    derived_series,
    lie_algebra,
    twisted_bracket,
)
from .linalg import Matrix, Poly, factor_coprime, minimal_polynomial, nullspace, rational_root_d
from .structure import (
    AlgebraBasis,
    Decomposition,
    center,
    centralizer,
    decompose,
    is_maximal_center,
    is_regular,
    radical,
    two_regular_falsifier,
)

__version__ = "0.1.0"
