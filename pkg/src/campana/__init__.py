"""Weighted Campana points on orbifold models of projective space over Z."""

__version__ = "0.1.0"

from .arith import Factorization, factorize, is_prime, primes_up_to, valuation
from .geometry import (
    DivisorComponent,
    InvalidModelError,
    OnBoundaryError,
    OrbifoldModel,
    ProjectivePoint,
    coordinate_model,
    evaluate,
    linear_form,
    normalize,
    validate_model,
)
from .local import MultiplicityVector, multiplicity, multiplicity_vector, weighted_multiplicity
from .predicate import Kind, PointClass, is_campana, support_primes
from .heights import (
    LogSum,
    bigness_margin,
    counting_N,
    counting_N1,
    divisor_height,
    height_constant,
    vojta_gap,
    weil_height,
)
from .enumeration import CountingReport, campana_points, count_campana, points_up_to
from .modelfile import dump_model, load_model, parse_model
