from .bounds import (
    BoundReport,
    ReturnProbabilityBounds,
    msbar_displayed_tight_form,
    msbar_lower_bound,
    mss_lower_bound,
    mss_upper_bound,
    return_probability_bounds,
    schur_square_sandwich,
)
from .classify import AutomorphismResult, MssClassification, automorphism_check, classify_mss, degree_separating
from .equitable import (
    WalkEquitReport,
    is_walk_equitable,
    neighborhood_strongly_cospectral,
    neighborhoods_walk_equitable,
    strongly_cospectral,
    unmarked_neighborhoods,
    walk_matrix,
)

__all__ = [
    "AutomorphismResult",
    "BoundReport",
    "MssClassification",
    "ReturnProbabilityBounds",
    "WalkEquitReport",
    "automorphism_check",
    "classify_mss",
    "degree_separating",
    "is_walk_equitable",
    "msbar_displayed_tight_form",
    "msbar_lower_bound",
    "mss_lower_bound",
    "mss_upper_bound",
    "neighborhood_strongly_cospectral",
    "neighborhoods_walk_equitable",
    "return_probability_bounds",
    "schur_square_sandwich",
    "strongly_cospectral",
    "unmarked_neighborhoods",
    "walk_matrix",
]
