"""parageo: exact experiments with distinguished curves on models G/P.

The package constructs |k|-graded matrix Lie algebras over exact fields,
represents the curves b exp(tX) P as polynomial matrices over Q, and
machine-checks jet-determination, standard-fiber, and reparametrization
statements as exact identities.
"""

__version__ = "0.1.0"

from .algebra import (
    Ad,
    AlgElem,
    GradedAlgebra,
    GroupElem,
    bracket,
    exp_nilpotent,
    group_exp,
    normal_form_P,
    truncated_Ad,
)
from .catalog import make_algebra
from .curves import (
    ComparisonCurve,
    CurveSpec,
    NormalCoordJet,
    comparison,
    curves_equal,
    jet_equal,
    normal_coord_jet,
)
from .lab import (
    TypeSpec,
    family_dimension,
    g0_orbit_classify,
    min_jet_order_search,
    orbit_hull_dimension,
    pplus_action_on_2jets,
    standard_fiber,
    verify_prop41_claim,
)
from .reparam import (
    MobiusMap,
    ReparamVerdict,
    projective_structure_exists,
    reparam_solve,
    schwarzian_check,
    taylor_seed_expand,
    verify_reparam,
)

__all__ = [
    "Ad",
    "AlgElem",
    "ComparisonCurve",
    "CurveSpec",
    "GradedAlgebra",
    "GroupElem",
    "MobiusMap",
    "NormalCoordJet",
    "ReparamVerdict",
    "TypeSpec",
    "bracket",
    "comparison",
    "curves_equal",
    "exp_nilpotent",
    "family_dimension",
    "g0_orbit_classify",
    "group_exp",
    "jet_equal",
    "make_algebra",
    "min_jet_order_search",
    "normal_coord_jet",
    "normal_form_P",
    "orbit_hull_dimension",
    "pplus_action_on_2jets",
    "projective_structure_exists",
    "reparam_solve",
    "schwarzian_check",
    "standard_fiber",
    "taylor_seed_expand",
    "truncated_Ad",
    "verify_prop41_claim",
    "verify_reparam",
]
