"""Monte Carlo estimates of the fraction of unambiguously correctable errors.

Trial ``i`` draws its error from its own generator seeded with
``substream_seed(seed, i)``, the SplitMix64 output for state
``seed + (i + 1) * 0x9E3779B97F4A7C15``. Successes are summed over trials, so
any partition of the trial range across workers gives the same count.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from statistics import NormalDist

import numpy as np

from .capability import ErrorClass, classify_generic, classify_spectrum
from .errors import ParameterError, ResourceError
from .gf2core import MAX_N, Word, walsh_of_array
from .rmcode import MAX_ENUM_K, RMCode
from .bounds import threshold

DEFAULT_SEED = 0x5EED5EED
_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_Z95 = NormalDist().inv_cdf(0.975)


def splitmix64(x: int) -> int:
    z = x & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def substream_seed(seed: int, index: int) -> int:
    return splitmix64(seed + (index + 1) * _GOLDEN)


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(substream_seed(seed, index)))


def sample_support(N: int, t: int, rng: np.random.Generator) -> np.ndarray:
    """0/1 array of length ``N`` with exactly ``t`` ones, uniformly at random.

    Partial Fisher-Yates: the first ``m`` slots of a shuffled index list pick
    the ones (``m = t``) or the zeros (``m = N - t``), whichever is fewer.
    """
    if not 0 <= t <= N:
        raise ParameterError(f"need 0 <= t <= N, got N={N}, t={t}")
    flip = 2 * t > N
    m = N - t if flip else t
    out = np.full(N, 1 if flip else 0, dtype=np.uint8)
    if m:
        picks = rng.integers(np.arange(m), N).tolist()
        idx = list(range(N))
        for i, j in enumerate(picks):
            idx[i], idx[j] = idx[j], idx[i]
        out[idx[:m]] = 0 if flip else 1
    return out


def sample_word_of_weight(N: int, t: int, rng: np.random.Generator) -> Word:
    if N < 1 or N & (N - 1):
        raise ParameterError(f"N must be a power of two, got {N}")
    return Word.from_array(N.bit_length() - 1, sample_support(N, t, rng))


@dataclass(frozen=True)
class McEstimate:
    n: int
    r: int
    c: float | None
    t: int
    trials: int
    successes: int
    fraction: float
    ci_low: float
    ci_high: float
    seed: int

    def row(self) -> dict[str, object]:
        return asdict(self)


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    p = successes / trials
    z2 = z * z
    centre = (p + z2 / (2 * trials)) / (1 + z2 / trials)
    half = z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / (1 + z2 / trials)
    return max(0.0, min(centre - half, p)), min(1.0, max(centre + half, p))


def _check_feasible(code: RMCode) -> None:
    if code.r == 1:
        if code.n > MAX_N:
            raise ResourceError("n exceeds the Walsh memory guard")
    elif code.k > MAX_ENUM_K:
        raise ResourceError(f"k={code.k} exceeds the enumeration guard")


def _is_unambiguous(code: RMCode, support: np.ndarray) -> bool:
    if code.r == 1:
        return classify_spectrum(walsh_of_array(support)) is ErrorClass.UNAMBIGUOUS_LEADER
    e = Word.from_array(code.n, support)
    return classify_generic(e, code) is ErrorClass.UNAMBIGUOUS_LEADER


def _count_successes(code: RMCode, t: int, seed: int, start: int, stop: int) -> int:
    hits = 0
    for i in range(start, stop):
        support = sample_support(code.length, t, trial_rng(seed, i))
        hits += _is_unambiguous(code, support)
    return hits


def _shards(trials: int, workers: int) -> list[tuple[int, int]]:
    edges = np.linspace(0, trials, workers + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def estimate_correctable_fraction(
    code: RMCode,
    t: int,
    trials: int,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    c: float | None = None,
) -> McEstimate:
    """Fraction of weight-``t`` errors that are unambiguous coset leaders."""
    if trials < 1:
        raise ParameterError("trials must be positive")
    if not 0 <= t <= code.length:
        raise ParameterError(f"t must lie in [0, {code.length}], got {t}")
    if not 0 <= seed <= _MASK64:
        raise ParameterError("seed must be a 64-bit unsigned integer")
    _check_feasible(code)
    shards = _shards(trials, max(1, workers))
    if len(shards) == 1:
        successes = _count_successes(code, t, seed, *shards[0])
    else:
        with ProcessPoolExecutor(max_workers=len(shards)) as pool:
            futures = [pool.submit(_count_successes, code, t, seed, a, b) for a, b in shards]
            successes = sum(f.result() for f in futures)
    lo, hi = wilson_interval(successes, trials)
    return McEstimate(code.n, code.r, c, t, trials, successes, successes / trials, lo, hi, seed)


def threshold_sweep(
    code: RMCode,
    c_values: Sequence[float],
    trials: int,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> list[McEstimate]:
    """Estimate the fraction at ``t_c`` for each ``c``; rows sorted by ``c`` descending."""
    if not c_values:
        raise ParameterError("no c values given")
    if trials < 1:
        raise ParameterError("trials must be positive")
    rows = []
    for c in sorted(c_values, reverse=True):
        t = threshold(c, code.n, code.r).t_c
        rows.append(estimate_correctable_fraction(code, t, trials, seed, workers, c=c))
    return rows


def ball_conditioned_fraction(estimates: Sequence[McEstimate]) -> float:
    """Shell estimates averaged with weights ``C(N, t)`` (shells given only)."""
    if not estimates:
        raise ParameterError("no shells given")
    N = 1 << estimates[0].n
    weights = [math.comb(N, e.t) for e in estimates]
    top = max(weights)
    scaled = [w / top for w in weights]
    return math.fsum(s * e.fraction for s, e in zip(scaled, estimates)) / math.fsum(scaled)


def capability_threshold_mc(
    code: RMCode, eps: float, trials: int, seed: int = DEFAULT_SEED, workers: int = 1
) -> int:
    """Largest ``t`` whose estimated unambiguous fraction is at least ``eps``.

    Bisection over ``[0, 2**(n-1)]``; relies on the fraction being
    non-increasing in ``t``.
    """
    if not 0 < eps < 1:
        raise ParameterError("eps must lie in (0, 1)")
    lo, hi = 0, code.length // 2
    frac = lambda t: estimate_correctable_fraction(code, t, trials, seed, workers).fraction
    if frac(hi) >= eps:
        return hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if frac(mid) >= eps:
            lo = mid
        else:
            hi = mid
    return lo
