"""Closed-form thresholds and bounds around the correctability limit.

Every "log 2" in the threshold is the natural logarithm of 2. Quantities that
overflow a double are returned as base-2 logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

import mpmath

from .errors import DomainError, ParameterError, ResourceError

LN2 = math.log(2.0)
MAX_VOLUME_N = 1 << 24
# above this length the exact big-integer sum is replaced by log-domain summation
EXACT_VOLUME_N = 1 << 16
_LOG_PREC = 128


@dataclass(frozen=True)
class ThresholdParams:
    c: float
    n: int
    r: int
    k_dim: int
    lam: float
    delta: float
    t_c: int


def threshold(c: float, n: int, r: int, k_dim: int | None = None) -> ThresholdParams:
    """Radius ``delta = 2**(n-1) - c*sqrt(2**(n-1) * C(n,r) * ln 2)``.

    ``k_dim`` replaces ``C(n, r)`` under the square root (the variant stated
    in terms of the code dimension). ``t_c = floor(delta)``, clamped at 0.
    """
    if not c > 0:
        raise ParameterError(f"c must be positive, got {c}")
    if not isinstance(n, int) or n < 1 or not isinstance(r, int) or not 0 <= r <= n:
        raise ParameterError(f"need n >= 1 and 0 <= r <= n, got n={n}, r={r}")
    size = comb(n, r) if k_dim is None else k_dim
    if size < 1:
        raise ParameterError(f"k_dim must be positive, got {k_dim}")
    lam = c * 2.0 ** (n / 2) * math.sqrt(2 * size * LN2)
    delta = 2.0 ** (n - 1) - lam / 2
    direct = 2.0 ** (n - 1) - c * math.sqrt(2.0 ** (n - 1) * size * LN2)
    assert math.isclose(delta, direct, rel_tol=1e-12, abs_tol=1e-12 * 2.0 ** (n - 1))
    return ThresholdParams(c, n, r, size, lam, delta, max(0, math.floor(delta)))


def ball_volume_exact(N: int, t: int) -> int:
    """``sum_{i <= t} C(N, i)`` as an exact integer."""
    if N < 0 or not 0 <= t <= N:
        raise ParameterError(f"need 0 <= t <= N, got N={N}, t={t}")
    if N > MAX_VOLUME_N:
        raise ResourceError(f"N={N} exceeds the guard N <= {MAX_VOLUME_N}")
    if t == N:
        return 1 << N
    total = 0
    term = 1
    for i in range(t + 1):
        total += term
        term = term * (N - i) // (i + 1)
    return total


def log2_exact(value: int) -> float:
    """log2 of a positive integer of any size, correct to double precision."""
    if value <= 0:
        raise ParameterError("log2 of a non-positive integer")
    shift = max(0, value.bit_length() - 64)
    return shift + math.log2(value >> shift)


def _log2_comb(N: int, t: int) -> mpmath.mpf:
    with mpmath.workprec(_LOG_PREC):
        return (mpmath.loggamma(N + 1) - mpmath.loggamma(t + 1) - mpmath.loggamma(N - t + 1)) / mpmath.log(2)


def _log2_lower_sum(N: int, t: int) -> float:
    # terms C(N, i) for i <= t <= N/2 decrease going down, so sum relative to
    # the top term until the remainder is negligible
    ratios = []
    term = 1.0
    i = t
    while i > 0:
        term *= i / (N - i + 1)
        if term < 1e-40:
            break
        ratios.append(term)
        i -= 1
    rel = math.fsum(ratios) + 1.0
    return float(_log2_comb(N, t)) + math.log2(rel)


def ball_volume_log2(N: int, t: int) -> float:
    """log2 of ``sum_{i <= t} C(N, i)`` for any ``N``.

    Exact big-integer summation up to ``N = 2**16``; beyond that the sum is
    taken relative to its largest term in the log domain.
    """
    if N < 0 or not 0 <= t <= N:
        raise ParameterError(f"need 0 <= t <= N, got N={N}, t={t}")
    if N <= EXACT_VOLUME_N:
        return log2_exact(ball_volume_exact(N, t))
    if 2 * t <= N:
        return _log2_lower_sum(N, t)
    # complement: 2**N minus the lower tail up to N - t - 1 < N/2
    rest = _log2_lower_sum(N, N - t - 1) - N
    return N + math.log1p(-(2.0**rest)) / LN2


def ball_volume_asymptotic_log2(c: float, n: int, r: int) -> float:
    """log2 of ``2**(2**n) / sqrt(pi) * 2**(-c^2 C) / (2c sqrt(C ln 2))``, ``C = C(n, r)``."""
    if not c > 0:
        raise ParameterError(f"c must be positive, got {c}")
    size = comb(n, r)
    return (
        2.0**n
        - c * c * size
        - 0.5 * math.log2(math.pi)
        - math.log2(2 * c * math.sqrt(size * LN2))
    )


def chernoff_intersection_log(s: float, wt_g: int, lam: float, n: int) -> float:
    """Natural log of ``exp(2 s^2 (2**n - wt_g) - 2 s lam)``."""
    if s < 0:
        raise ParameterError("s must be non-negative")
    if not 0 <= wt_g <= 1 << n:
        raise ParameterError(f"wt_g must lie in [0, 2**n], got {wt_g}")
    return 2 * s * s * ((1 << n) - wt_g) - 2 * s * lam


def chernoff_intersection_bound(s: float, wt_g: int, lam: float, n: int) -> float:
    """Upper bound on ``P(B_delta(0) and B_delta(g))`` for a given ``s``."""
    return math.exp(min(chernoff_intersection_log(s, wt_g, lam, n), 700.0))


def optimal_chernoff_s(wt_g: int, lam: float, n: int) -> float:
    """Minimizer ``lam / (2**(n+1) - 2 wt_g)`` of the Chernoff exponent."""
    denom = (1 << (n + 1)) - 2 * wt_g
    if denom <= 0:
        raise ParameterError("no finite minimizer when wt_g = 2**n")
    return lam / denom


def close_case_bound(c: float, n: int, r: int) -> float:
    """``2**(-2 c^2 (C(n, r) - 1))`` for codewords of weight near ``2**(n-1)``."""
    if not c > 0:
        raise ParameterError(f"c must be positive, got {c}")
    return 2.0 ** (-2 * c * c * (comb(n, r) - 1))


def far_case_log2(c: float, r: int, n: int) -> float:
    if not c > 0:
        raise ParameterError(f"c must be positive, got {c}")
    if r < 1:
        raise ParameterError("the far-case bound needs r >= 1 (1 - 2**-r vanishes at r = 0)")
    return -c * c * comb(n, r) / (1 - 2.0**-r)


def far_case_bound(c: float, r: int, n: int) -> float:
    """``2**(-c^2 C(n, r) / (1 - 2**-r))``, per codeword of weight >= 2**(n-r)."""
    return 2.0 ** far_case_log2(c, r, n)


def alpha_limit(c: float, r: int) -> float:
    """Upper end ``2**-r c^2 / (1 - 2**-r)`` of admissible ``alpha``."""
    return 2.0**-r * c * c / (1 - 2.0**-r)


def certificate_exponents(c: float, n: int, r: int, alpha: float) -> tuple[float, float]:
    size = comb(n, r)
    return -size * c * c + 2 * c * c, size * (alpha - alpha_limit(c, r))


@dataclass(frozen=True)
class Certificate:
    e_left: float
    e_right: float
    n_min: int


def theorem1_certificate(c: float, n: int, r: int, alpha: float) -> Certificate:
    """Exponents of 2 in the two terms bounding the union sum.

    ``n_min`` is the smallest ``n' >= max(r, 1)`` from which both exponents
    stay <= -1 (both are decreasing in ``C(n', r)``, which grows with ``n'``).
    """
    if not c > 1:
        raise ParameterError(f"the certificate needs c > 1, got {c}")
    if r < 1 or n < r:
        raise ParameterError(f"need 1 <= r <= n, got r={r}, n={n}")
    if not 0 < alpha < alpha_limit(c, r):
        raise ParameterError(f"alpha must lie in (0, {alpha_limit(c, r)}), got {alpha}")
    e_left, e_right = certificate_exponents(c, n, r, alpha)
    need_left = (1 + 2 * c * c) / (c * c)
    need_right = 1 / (alpha_limit(c, r) - alpha)
    n_min = max(r, 1)
    while comb(n_min, r) < max(need_left, need_right):
        n_min += 1
    return Certificate(e_left, e_right, n_min)


def binomial_tail_bound(n_half: int, k: int) -> float:
    """log2 of ``2**(2 n) exp(-(n - k)**2 / n)`` with ``n = n_half``."""
    if n_half < 1 or not 0 <= k <= n_half:
        raise ParameterError(f"need 0 <= k <= n_half, got n_half={n_half}, k={k}")
    return 2 * n_half - (n_half - k) ** 2 / (n_half * LN2)


def binomial_tail_bound_holds(n_half: int, k: int) -> bool:
    """Exact check of ``sum_{i <= k} C(2n, i) <= 2**(2n) exp(-(n-k)**2/n)``.

    Both sides are compared through natural logs evaluated at 256 bits, far
    beyond the resolution needed to separate them.
    """
    exact = ball_volume_exact(2 * n_half, k)
    with mpmath.workprec(256):
        lhs = mpmath.log(mpmath.mpf(exact))
        rhs = 2 * n_half * mpmath.log(2) - mpmath.mpf((n_half - k) ** 2) / n_half
        return bool(lhs <= rhs)


def central_binomial_estimate(n_half: int, k: int) -> float:
    """log2 of ``2**(2n) / sqrt(pi n) * exp(-(n - k)**2 / n)`` with ``n = n_half``."""
    if n_half < 1:
        raise ParameterError("n_half must be positive")
    if abs(n_half - k) > n_half**0.625:
        raise DomainError(f"|n - k| = {abs(n_half - k)} exceeds n**(5/8) = {n_half**0.625:.6g}")
    return 2 * n_half - 0.5 * math.log2(math.pi * n_half) - (n_half - k) ** 2 / (n_half * LN2)


def optimality_ratio(n: int, k_dim: int, t: float) -> float:
    """``(2**n - 2t) / sqrt(2**n k ln 4)``, which tends to 1 for RM codes."""
    if t > 2 ** (n - 1):
        raise ParameterError(f"t={t} exceeds 2**(n-1)")
    if k_dim < 1:
        raise ParameterError("k_dim must be positive")
    return (2.0**n - 2 * t) / math.sqrt(2.0**n * k_dim * math.log(4))
