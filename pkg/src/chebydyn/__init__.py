"""Complex dynamics of the Chebyshev-Halley family on quadratic polynomials."""

from .analysis import (
    AntennaReport,
    CatVerdict,
    antenna_check,
    boundary_point,
    cat_membership,
    verify_special_cases,
)
from .estimators import (
    DynamicalPlaneClassifier,
    ParameterPlaneClassifier,
    check_complex_points,
)
from .exceptions import (
    ChebydynError,
    DegenerateQuadratic,
    DerivativeVanishes,
    HalleyDenominatorVanishes,
    IndeterminateValue,
    NotAFixedPoint,
    OutOfAntennaRange,
    PoleDerivative,
    UnmappedTag,
)
from .fixed_points import (
    CriticalSet,
    FixedPointInfo,
    StabilityClass,
    critical_points,
    multiplier_at,
    stability_report,
    strange_fixed_points,
)
from .imaging import default_palette, encode_image
from .orbits import (
    AttractorEntry,
    AttractorSet,
    CycleRecord,
    IterationConfig,
    OrbitFate,
    find_attractors,
    find_cycles,
    iterate_orbit,
)
from .plane import (
    BifurcationData,
    ClassificationGrid,
    PlaneSpec,
    bifurcation_scan,
    render_dynamical_plane,
    render_parameter_plane,
)
from .rational import (
    PolynomialSpec,
    RationalMap,
    build_general_operator,
    build_operator,
    conjugacy,
    halley_step,
)
from .sphere import INFINITY, SpherePoint, chart_distance

__version__ = "0.1.0"

__all__ = [
    "AntennaReport", "AttractorEntry", "AttractorSet", "BifurcationData",
    "CatVerdict", "ChebydynError", "ClassificationGrid", "CriticalSet",
    "CycleRecord", "DegenerateQuadratic", "DerivativeVanishes",
    "DynamicalPlaneClassifier", "FixedPointInfo", "HalleyDenominatorVanishes",
    "INFINITY", "IndeterminateValue", "IterationConfig", "NotAFixedPoint",
    "OrbitFate", "OutOfAntennaRange", "ParameterPlaneClassifier", "PlaneSpec",
    "PoleDerivative", "PolynomialSpec", "RationalMap", "SpherePoint",
    "StabilityClass", "UnmappedTag", "antenna_check", "bifurcation_scan",
    "boundary_point", "build_general_operator", "build_operator",
    "cat_membership", "chart_distance", "check_complex_points", "conjugacy",
    "critical_points", "default_palette", "encode_image", "find_attractors",
    "find_cycles", "halley_step", "iterate_orbit", "multiplier_at",
    "render_dynamical_plane", "render_parameter_plane", "stability_report",
    "strange_fixed_points", "verify_special_cases",
]
