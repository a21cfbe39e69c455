"""charcalc: exact symbolic calculator for characteristic classes.

Computes with exact rational arithmetic throughout: graded polynomial
quotient rings, symmetric-function conversions, splitting-principle Chern
classes, flag-manifold presentations, coupling classes with fiber
integration, circle-action moment integrals, and the cohomological criteria
for evaluation images and hard Lefschetz.
"""

from .exactring import (
    BasisError,
    CharcalcError,
    GradedPoly,
    GradedRing,
    InvalidInputError,
    Monomial,
    PresentationError,
    Rational,
    RingMismatchError,
    RingPresentation,
    fiber_coefficient,
    graded_component,
    normal_form,
    parse_poly,
)
from .symfun import ElemExpr, Partition, SymExpr
from .bundlecalc import (
    BundleExpr,
    Dual,
    Lambda2,
    Sum,
    Tensor,
    Trivial,
    Universal,
    chern_class,
    chern_roots,
    parse_bundle_expr,
    sphere_eval,
)
from .flagcoh import (
    FlagSpec,
    SphereProductSpec,
    fiber_integrate,
    flag_presentation,
    grassmannian_presentation,
    inverse_series,
    phi_pullback,
    point_presentation,
    projective_bundle,
    sphere_product_ring,
)
from .coupling import CouplingInput, MixedIndex, coupling_class, mixed_class, mu_class, nu_class
from .equivariant import (
    WeightedCircleAction,
    moment_integral,
    mu_of_circle,
    normalized_moment,
    nu1_at_fixed_point,
    simplex_integral,
    su_product_integral,
)
from .obstruction import (
    ObstructionInput,
    degree_basis,
    hard_lefschetz_check,
    ideal_membership,
    whitehead_cube_criterion,
    whitehead_square_criterion,
)

__version__ = "0.1.0"
