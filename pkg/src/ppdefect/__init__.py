"""Position-momentum superpositions that violate straight-line propagation of free quantum particles."""

from .analysis import (
    ProbabilityReport,
    SweepGrid,
    defect_bound,
    defect_exact,
    gaussian_defect_bound,
    ratio_bound,
    rect_defect_bound,
    rect_optimum,
    sweep,
    very_localized_probability,
    zero_contour,
)
from .errors import (
    AccuracyError,
    ApproximationDomainError,
    DegenerateStateError,
    NoViolationError,
    PhaseUndefinedWarning,
    PPDefectError,
    ResolutionError,
)
from .localization import (
    LocalizationCoefficients,
    gaussian_coefficients,
    gaussian_component,
    gaussian_sigmas,
    localization_coefficients,
)
from .numerics import DEFAULT_SPEC, QuadratureSpec, integrate_complex, integrate_real
from .propagation import (
    interference_pattern_density,
    probability_M_envelope,
    probability_M_envelope_exact,
    probability_M_exact,
    propagate_free,
    propagate_plus_state,
)
from .scenario import Scenario
from .superposition import (
    PlusState,
    build_plus_state,
    gaussian_plus_state,
    joint_lower_bound_exact,
    plus_interval_probability,
    plus_state_from_sigmas,
    rectangle_plus_state,
)
from .wavefunction import (
    MOMENTUM,
    POSITION,
    Gaussian,
    Grid,
    Interval,
    Rectangle,
    Representation,
    Superposition,
    inner_product,
    interval_probability,
    norm_squared,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "ApproximationDomainError",
    "build_plus_state",
    "DEFAULT_SPEC",
    "defect_bound",
    "defect_exact",
    "DegenerateStateError",
    "Gaussian",
    "gaussian_coefficients",
    "gaussian_component",
    "gaussian_defect_bound",
    "gaussian_plus_state",
    "gaussian_sigmas",
    "Grid",
    "inner_product",
    "integrate_complex",
    "integrate_real",
    "interference_pattern_density",
    "Interval",
    "interval_probability",
    "joint_lower_bound_exact",
    "localization_coefficients",
    "LocalizationCoefficients",
    "MOMENTUM",
    "norm_squared",
    "NoViolationError",
    "PhaseUndefinedWarning",
    "plus_interval_probability",
    "plus_state_from_sigmas",
    "PlusState",
    "POSITION",
    "PPDefectError",
    "probability_M_envelope",
    "probability_M_envelope_exact",
    "probability_M_exact",
    "ProbabilityReport",
    "propagate_free",
    "QuadratureSpec",
    "propagate_plus_state",
    "ratio_bound",
    "rect_defect_bound",
    "rect_optimum",
    "Rectangle",
    "rectangle_plus_state",
    "Representation",
    "ResolutionError",
    "Scenario",
    "Superposition",
    "sweep",
    "SweepGrid",
    "very_localized_probability",
    "zero_contour",
]
