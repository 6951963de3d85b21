"""latstab: lattice point enumerators, successive minima, and stability
verdicts for boxes, rotated boxes, and Lp-balls, with exact rational fast
paths cross-checked against brute-force oracles."""

from .bodies import (
    DEFAULT_EPS,
    AxisBox,
    Body,
    Containment,
    LpBall,
    RotatedBox,
    Rotation,
    Transform,
    box_gauge_opnorm,
    circumradius,
    contains,
    euclidean_opnorm,
    gauge,
)
from .enumeration import (
    CountResult,
    bounding_half_widths,
    count_box_closed_form,
    count_lattice_points,
    count_points,
    list_lattice_points,
)
from .minima import (
    MinimaResult,
    SandwichReport,
    box_minima_closed_form,
    check_minima_sandwich,
    successive_minima,
)
from .bhw import (
    Verdict,
    VerdictStatus,
    floor_inequality_check,
    floor_safe,
    rhs_functional,
    verify,
)
from .stability import (
    StabilityReport,
    SweepRecord,
    basis_gauge_check,
    corner_exclusion_check,
    givens_rotation,
    isolation_distance,
    random_rotation,
    rotation_sweep,
    stability_radius,
)
from .lp import (
    ThresholdReport,
    count_lp,
    empirical_threshold,
    integer_alpha_exclusion_check,
    p_threshold,
    threshold_sufficiency_check,
)

__version__ = "0.1.0"

__all__ = [
    "AxisBox",
    "Body",
    "Containment",
    "CountResult",
    "DEFAULT_EPS",
    "LpBall",
    "MinimaResult",
    "RotatedBox",
    "Rotation",
    "SandwichReport",
    "StabilityReport",
    "SweepRecord",
    "ThresholdReport",
    "Transform",
    "Verdict",
    "VerdictStatus",
    "basis_gauge_check",
    "bounding_half_widths",
    "box_gauge_opnorm",
    "box_minima_closed_form",
    "check_minima_sandwich",
    "circumradius",
    "contains",
    "corner_exclusion_check",
    "count_box_closed_form",
    "count_lattice_points",
    "count_lp",
    "count_points",
    "empirical_threshold",
    "euclidean_opnorm",
    "floor_inequality_check",
    "floor_safe",
    "gauge",
    "givens_rotation",
    "integer_alpha_exclusion_check",
    "isolation_distance",
    "list_lattice_points",
    "p_threshold",
    "random_rotation",
    "rhs_functional",
    "rotation_sweep",
    "stability_radius",
    "successive_minima",
    "threshold_sufficiency_check",
    "verify",
]
