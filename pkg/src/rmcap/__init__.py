"""Reed-Muller codes under maximum-likelihood decoding.

Constructs RM(n, r), classifies errors as correctable or not, computes the
exact capability function on small codes, and evaluates the correctability
threshold ``2**(n-1) - c*sqrt(2**(n-1) C(n, r) ln 2)`` with its bounds.
"""

from .bounds import ThresholdParams, ball_volume_exact, ball_volume_log2, threshold
from .capability import (
    CapabilityProfile,
    ErrorClass,
    check_monotonicity,
    classify_error,
    epsilon_upper_bound,
    exact_capability_profile,
)
from .errors import DomainError, ParameterError, ResourceError
from .gf2core import Word, distance, walsh_transform, weight
from .montecarlo import McEstimate, estimate_correctable_fraction, threshold_sweep
from .rmcode import RMCode, build_rm, count_far_codewords, enumerate_codewords, weight_distribution

__all__ = [
    "CapabilityProfile",
    "DomainError",
    "ErrorClass",
    "McEstimate",
    "ParameterError",
    "RMCode",
    "ResourceError",
    "ThresholdParams",
    "Word",
    "ball_volume_exact",
    "ball_volume_log2",
    "build_rm",
    "check_monotonicity",
    "classify_error",
    "count_far_codewords",
    "distance",
    "enumerate_codewords",
    "epsilon_upper_bound",
    "estimate_correctable_fraction",
    "exact_capability_profile",
    "threshold",
    "threshold_sweep",
    "walsh_transform",
    "weight",
    "weight_distribution",
]
