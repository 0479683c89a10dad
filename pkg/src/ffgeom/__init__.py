"""Exact-arithmetic search for rational points off hypersurfaces over finite
fields, explicit extension-degree and rank bounds, and a genus-0 lab for the
cohomological semistability criterion."""

from .avoid import (
    AvoidanceResult,
    GrassmannianPoint,
    Hypersurface,
    ProjectivePoint,
    avoid,
    avoid_affine,
    avoid_grassmannian,
    avoid_projective,
    exhaustive_oracle,
    grass_cell_pullback,
    plucker,
)
from .bounds import BoundInputs, BoundReport, bound_M, popa_n, rank_pipeline
from .curvepoint import (
    CurveDivisor,
    CurvePointResult,
    PlaneCurve,
    fiber_resultant,
    galois_orbit,
    point_off_divisor,
    projection_center,
    verify_on_curve,
)
from .fields import FiniteField, embed, make_field, parse_field_spec
from .p1lab import (
    SplittingType,
    cohomology_dims,
    find_partner,
    is_semistable,
    slope,
    tensor,
    verify_criterion,
)
from .polynomials import (
    MultivariatePolynomial,
    UnivariatePolynomial,
    find_root_in_tower,
    parse_polynomial,
    sylvester_resultant,
)

__version__ = "0.1.0"
