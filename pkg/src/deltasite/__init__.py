"""deltasite: finite event categories, Grothendieck site verification, and
the discrete delta-calculus with its tropical realization."""

from .categories import (ComponentPartition, FiniteCategory, Morphism,
                         PullbackSquare, connected_components, forward_cone,
                         minimal_outgoing)
from .errors import (ClosureError, DeltasiteError, ModelError,
                     PreconditionError, StructuralError, TruncationNotice,
                     UnsupportedValueError)
from .events import (EventMap, SimplicialEvent, discrete_event, empty_event,
                     fiber_product, is_monomorphism, point_event, product)
from .filtration import (FilteredSigmaAlgebra, FramedIndex, FramedPoint,
                         MultiArrow, OperadFragment, ProbabilityMeasure,
                         check_operad_action, check_sigma_level,
                         check_sub_homomorphism, pushforward, restrict_measure)
from .model_io import ModelDescription, load_model, parse_model, serialize_model
from .roofs import (Roof, RoofCategory, build_structural_roof_topology,
                    verify_roof_category)
from .sheaves import (FilteredBrownianSheaf, Presheaf, check_sheaf_condition,
                      constant_presheaf, d_psi, q_boundary,
                      transversal_cone_check)
from .sites import (CoveringFamily, FilteredSite, GrothendieckSite,
                    build_tau_operadic, build_tau_P, build_tau_structural,
                    verify_filtered, verify_grothendieck)
from .stochastic import (DiscretePath, GBMParams, Partition,
                         check_product_rule, delta_increments,
                         estimate_log_drift, ito_residual,
                         quadratic_variation, sample_brownian, simulate_gbm,
                         telescoped_sum)
from .tropical import (GradedExpr, GradedTensorSeries, augmentation,
                       exp_series, log_inverse_series, paper_log_series,
                       trop_max, tropicalize_log_sde)

__version__ = "0.1.0"

__all__ = [
    "ClosureError", "ComponentPartition", "CoveringFamily", "DeltasiteError",
    "DiscretePath", "EventMap", "FilteredBrownianSheaf", "FilteredSigmaAlgebra",
    "FilteredSite", "FiniteCategory", "FramedIndex", "FramedPoint", "GBMParams",
    "GradedExpr", "GradedTensorSeries", "GrothendieckSite", "ModelDescription",
    "ModelError", "Morphism", "MultiArrow", "OperadFragment", "Partition",
    "PreconditionError", "Presheaf", "ProbabilityMeasure", "PullbackSquare",
    "Roof", "RoofCategory", "SimplicialEvent", "StructuralError",
    "TruncationNotice", "UnsupportedValueError", "augmentation",
    "build_structural_roof_topology", "build_tau_P", "build_tau_operadic",
    "build_tau_structural", "check_operad_action", "check_product_rule",
    "check_sheaf_condition", "check_sigma_level", "check_sub_homomorphism",
    "connected_components", "constant_presheaf", "d_psi", "delta_increments",
    "discrete_event", "empty_event", "estimate_log_drift", "exp_series",
    "fiber_product", "forward_cone", "is_monomorphism", "ito_residual",
    "load_model", "log_inverse_series", "minimal_outgoing", "paper_log_series",
    "parse_model", "point_event", "product", "pushforward",
    "q_boundary", "quadratic_variation", "restrict_measure", "sample_brownian",
    "serialize_model", "simulate_gbm", "telescoped_sum",
    "transversal_cone_check", "trop_max", "tropicalize_log_sde",
    "verify_filtered", "verify_grothendieck", "verify_roof_category",
    "__version__",
]
