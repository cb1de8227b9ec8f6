"""Maximum-likelihood correctability of errors and the capability function.

An error ``e`` is correctable when it is the chosen leader (minimum weight
member) of its coset ``e + C``. Among several minimum-weight members the
lexicographically smallest truth table is chosen, which makes the per-weight
fraction of correctable words, ``eps(t)``, well defined.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .errors import ParameterError, ResourceError
from .gf2core import MAX_N, Word, popcount_rows, to_limbs, walsh_transform
from .rmcode import MAX_ENUM_K, RMCode, codeword_blocks

# exact profiles enumerate the whole space implicitly: 2**(2**n) <= 2**32
MAX_PROFILE_N = 5
# one int64 leader slot per coset
MAX_PROFILE_REDUNDANCY = 24


class ErrorClass(enum.Enum):
    UNAMBIGUOUS_LEADER = "unambiguous"
    AMBIGUOUS_LEADER = "ambiguous"
    NOT_LEADER = "not_leader"

    @property
    def is_leader(self) -> bool:
        return self is not ErrorClass.NOT_LEADER


def classify_generic(e: Word, code: RMCode) -> ErrorClass:
    """Compare ``wt(e)`` against ``min wt(e + g)`` over all nonzero codewords."""
    if e.n != code.n:
        raise ParameterError("error length does not match the code")
    if code.k > MAX_ENUM_K:
        raise ResourceError(f"k={code.k} exceeds the enumeration guard")
    limbs = to_limbs(e)
    best = None
    first = True
    for block in codeword_blocks(code):
        weights = popcount_rows(block ^ limbs)
        if first:
            # row 0 of the first block is the zero codeword, i.e. e itself
            weights = weights[1:]
            first = False
        if weights.size:
            low = int(weights.min())
            best = low if best is None else min(best, low)
    own = e.bits.bit_count()
    if best is None or own < best:
        return ErrorClass.UNAMBIGUOUS_LEADER
    if own == best:
        return ErrorClass.AMBIGUOUS_LEADER
    return ErrorClass.NOT_LEADER


def classify_spectrum(spectrum: np.ndarray) -> ErrorClass:
    """First-order classification from a Walsh spectrum.

    ``wt(e + a.x + b) = (2**n -/+ F(a)) / 2``, so ``e`` beats every nonzero
    affine function iff ``F(0) > 0`` and ``F(0) > |F(a)|`` for ``a != 0``.
    """
    f0 = int(spectrum[0])
    rest = int(np.abs(spectrum[1:]).max()) if spectrum.size > 1 else 0
    if f0 > 0 and f0 > rest:
        return ErrorClass.UNAMBIGUOUS_LEADER
    if f0 >= 0 and f0 >= rest:
        return ErrorClass.AMBIGUOUS_LEADER
    return ErrorClass.NOT_LEADER


def classify_walsh(e: Word, code: RMCode) -> ErrorClass:
    if code.r != 1:
        raise ParameterError("the Walsh path only applies to first-order codes")
    if e.n != code.n:
        raise ParameterError("error length does not match the code")
    return classify_spectrum(walsh_transform(e))


def classify_error(e: Word, code: RMCode, method: str = "auto") -> ErrorClass:
    """Classify ``e`` as unambiguous leader, ambiguous leader or non-leader.

    ``method`` is ``"generic"`` (codeword enumeration), ``"walsh"`` (r = 1
    only) or ``"auto"``, which takes the Walsh path for first-order codes.
    """
    if method == "auto":
        method = "walsh" if code.r == 1 else "generic"
    if method == "walsh":
        if code.n > MAX_N:
            raise ResourceError("n exceeds the Walsh memory guard")
        return classify_walsh(e, code)
    if method == "generic":
        return classify_generic(e, code)
    raise ParameterError(f"unknown classification method {method!r}")


@dataclass(frozen=True)
class CapabilityProfile:
    n: int
    r: int
    k: int
    d_min: int
    correctable: tuple[int, ...]
    covering_radius: int
    leaders: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def length(self) -> int:
        return 1 << self.n

    @property
    def t_C(self) -> int:
        return (self.d_min - 1) // 2

    def total_words(self, t: int) -> int:
        return comb(self.length, t)

    def epsilon(self, t: int) -> Fraction:
        return Fraction(self.correctable[t], self.total_words(t))

    @property
    def epsilons(self) -> list[Fraction]:
        return [self.epsilon(t) for t in range(self.length + 1)]

    @property
    def leader_weight_census(self) -> dict[int, int]:
        return {t: c for t, c in enumerate(self.correctable) if c}

    def rows(self) -> list[dict[str, int]]:
        return [
            {
                "t": t,
                "total_words": self.total_words(t),
                "correctable": self.correctable[t],
                "epsilon_num": self.correctable[t],
                "epsilon_den": self.total_words(t),
            }
            for t in range(self.length + 1)
        ]

    def summary(self) -> dict[str, object]:
        return {
            "n": self.n,
            "r": self.r,
            "k": self.k,
            "covering_radius": self.covering_radius,
            "t_C": self.t_C,
            "leader_weight_census": {str(t): c for t, c in self.leader_weight_census.items()},
        }


def coset_leaders(code: RMCode) -> tuple[np.ndarray, np.ndarray]:
    """Leader of every coset, indexed by syndrome.

    Words are scanned shell by shell in increasing weight; inside a shell the
    numerically smallest truth table (the lexicographic minimum) wins each
    syndrome not already claimed by a lighter shell. Returns the leader
    truth tables and their weights.
    """
    if code.n > MAX_PROFILE_N:
        raise ResourceError(f"exact profiles need 2**(2**n) <= 2**32, got n={code.n}")
    if code.redundancy > MAX_PROFILE_REDUNDANCY:
        raise ResourceError(
            f"2**{code.redundancy} cosets exceed the leader-table guard "
            f"2**{MAX_PROFILE_REDUNDANCY}"
        )
    length = code.length
    ncosets = 1 << code.redundancy
    cols = code.syndrome_columns
    leaders = np.full(ncosets, -1, dtype=np.int64)
    weights = np.full(ncosets, -1, dtype=np.int64)
    leaders[0] = 0
    weights[0] = 0
    found = 1
    # shell w as parallel arrays: truth-table value, syndrome, last position
    value = np.zeros(1, dtype=np.uint64)
    synd = np.zeros(1, dtype=np.int64)
    last = np.full(1, -1, dtype=np.int64)
    bit = np.uint64(1) << (np.uint64(length - 1) - np.arange(length, dtype=np.uint64))
    w = 0
    while found < ncosets:
        w += 1
        parts_v, parts_s, parts_l = [], [], []
        for p in range(length):
            mask = last < p
            if not mask.any():
                continue
            parts_v.append(value[mask] | bit[p])
            parts_s.append(synd[mask] ^ cols[p])
            parts_l.append(np.full(int(mask.sum()), p, dtype=np.int64))
        value = np.concatenate(parts_v)
        synd = np.concatenate(parts_s)
        last = np.concatenate(parts_l)
        fresh = weights[synd] < 0
        if fresh.any():
            v, s = value[fresh], synd[fresh]
            order = np.lexsort((v, s))
            v, s = v[order], s[order]
            head = np.ones(s.size, dtype=bool)
            head[1:] = s[1:] != s[:-1]
            leaders[s[head]] = v[head].astype(np.int64)
            weights[s[head]] = w
            found += int(head.sum())
    return leaders, weights


def exact_capability_profile(code: RMCode, keep_leaders: bool = False) -> CapabilityProfile:
    """Exact per-weight counts of chosen coset leaders for a small code."""
    leaders, weights = coset_leaders(code)
    counts = np.bincount(weights, minlength=code.length + 1)
    return CapabilityProfile(
        n=code.n,
        r=code.r,
        k=code.k,
        d_min=code.d_min,
        correctable=tuple(int(c) for c in counts),
        covering_radius=int(weights.max()),
        leaders=leaders if keep_leaders else None,
    )


@dataclass(frozen=True)
class MonotonicityReport:
    passed: bool
    first_violation: int | None = None
    reason: str = ""


def check_monotonicity(profile: CapabilityProfile) -> MonotonicityReport:
    """``eps(t+1) <= eps(t)`` everywhere, strictly for ``t_C <= t <= r_C``."""
    eps = profile.epsilons
    strict_lo = profile.t_C
    strict_hi = min(profile.covering_radius, profile.length - 1)
    for t in range(profile.length):
        if eps[t + 1] > eps[t]:
            return MonotonicityReport(False, t, f"eps({t + 1}) > eps({t})")
        if strict_lo <= t <= strict_hi and eps[t + 1] == eps[t]:
            return MonotonicityReport(False, t, f"eps({t + 1}) == eps({t}) inside [t_C, r_C]")
    return MonotonicityReport(True)


def epsilon_upper_bound(code: RMCode, t: int) -> Fraction:
    """``2**(N - k) / sum_{i <= t} C(N, i)``: cosets over words of weight <= t."""
    from .bounds import ball_volume_exact

    if not 0 <= t <= code.length:
        raise ParameterError(f"t must lie in [0, {code.length}], got {t}")
    return Fraction(1 << code.redundancy, ball_volume_exact(code.length, t))
