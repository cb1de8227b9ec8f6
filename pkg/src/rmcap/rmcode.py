"""Reed-Muller codes RM(n, r): construction, enumeration and weight statistics."""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb

import numpy as np

from .errors import ParameterError, ResourceError
from .gf2core import MAX_N, Word, from_limbs, popcount_rows, to_limbs

MAX_ENUM_K = 28
# message bits expanded into a lookup table per enumeration block
_BLOCK_BITS = 12


def monomial_word(n: int, subset: tuple[int, ...]) -> Word:
    """Evaluation vector of ``prod_{i in subset} x_i`` (variables 1-based)."""
    x = np.arange(1 << n, dtype=np.int64)
    values = np.ones(1 << n, dtype=np.uint8)
    for i in subset:
        values &= ((x >> (n - i)) & 1).astype(np.uint8)
    return Word.from_array(n, values)


@dataclass(frozen=True)
class RMCode:
    n: int
    r: int
    k: int
    d_min: int
    generators: tuple[Word, ...] = field(repr=False)

    @property
    def length(self) -> int:
        return 1 << self.n

    @property
    def redundancy(self) -> int:
        return self.length - self.k

    @cached_property
    def generator_limbs(self) -> np.ndarray:
        return np.stack([to_limbs(g) for g in self.generators])

    @cached_property
    def _reduced(self) -> tuple[list[int], list[int]]:
        return _rref([g.bits for g in self.generators], self.length)

    @cached_property
    def syndrome_columns(self) -> np.ndarray:
        """Per-position syndrome contribution as integers of ``N - k`` bits.

        The syndrome of a word is the XOR of the columns at its support.
        Columns come from a parity-check basis derived from the reduced
        row-echelon generator matrix: one check per non-pivot position.
        """
        rows, pivots = self._reduced
        length = self.length
        pivot_set = set(pivots)
        free = [p for p in range(length) if p not in pivot_set]
        cols = np.zeros(length, dtype=np.int64)
        for j, p in enumerate(free):
            cols[p] = 1 << j
        for row, p in zip(rows, pivots):
            acc = 0
            for j, q in enumerate(free):
                if (row >> (length - 1 - q)) & 1:
                    acc |= 1 << j
            cols[p] = acc
        return cols

    def syndrome(self, w: Word) -> int:
        cols = self.syndrome_columns
        return int(np.bitwise_xor.reduce(cols[np.flatnonzero(w.to_array())], initial=0))

    def contains(self, w: Word) -> bool:
        """Membership by reduction against the row-echelon generator rows."""
        if w.n != self.n:
            raise ParameterError("length mismatch")
        rows, pivots = self._reduced
        bits = w.bits
        top = self.length - 1
        for row, p in zip(rows, pivots):
            if (bits >> (top - p)) & 1:
                bits ^= row
        return bits == 0


def _rref(rows: list[int], length: int) -> tuple[list[int], list[int]]:
    """Reduced row-echelon form over GF(2); pivots are truth-table positions."""
    rows = list(rows)
    out: list[int] = []
    pivots: list[int] = []
    for p in range(length):
        mask = 1 << (length - 1 - p)
        hit = next((i for i, row in enumerate(rows) if row & mask), None)
        if hit is None:
            continue
        pivot_row = rows.pop(hit)
        rows = [row ^ pivot_row if row & mask else row for row in rows]
        out = [row ^ pivot_row if row & mask else row for row in out]
        out.append(pivot_row)
        pivots.append(p)
        if not rows:
            break
    if rows and any(rows):
        raise ParameterError("generator rows are linearly dependent")
    return out, pivots


def build_rm(n: int, r: int) -> RMCode:
    """Construct RM(n, r) from monomials of degree <= r.

    Generators are ordered by degree, then lexicographically by variable set.
    """
    if not isinstance(n, int) or n < 1:
        raise ParameterError(f"n must be an integer >= 1, got {n!r}")
    if not isinstance(r, int) or not 0 <= r <= n:
        raise ParameterError(f"need 0 <= r <= n, got r={r!r}, n={n}")
    if n > MAX_N:
        raise ResourceError(f"n={n} exceeds the guard n <= {MAX_N}")
    gens = tuple(
        monomial_word(n, subset)
        for degree in range(r + 1)
        for subset in itertools.combinations(range(1, n + 1), degree)
    )
    k = sum(comb(n, i) for i in range(r + 1))
    return RMCode(n=n, r=r, k=k, d_min=1 << (n - r), generators=gens)


def _check_enum(code: RMCode) -> None:
    if code.k > MAX_ENUM_K:
        raise ResourceError(f"k={code.k} exceeds the enumeration guard k <= {MAX_ENUM_K}")


def codeword_blocks(code: RMCode) -> Iterator[np.ndarray]:
    """Yield all codewords as ``(rows, limbs)`` uint64 blocks.

    Codeword ``m`` (message index, counter order) is the XOR of the generators
    whose index is a set bit of ``m``; blocks come out in increasing ``m``, so
    the zero codeword is the first row of the first block.
    """
    _check_enum(code)
    gens = code.generator_limbs
    low_bits = min(code.k, _BLOCK_BITS)
    table = np.zeros((1 << low_bits, gens.shape[1]), dtype=np.uint64)
    for j in range(low_bits):
        half = 1 << j
        table[half : 2 * half] = table[:half] ^ gens[j]
    high_gens = gens[low_bits:]
    for m in range(1 << (code.k - low_bits)):
        offset = np.zeros(gens.shape[1], dtype=np.uint64)
        for j in range(high_gens.shape[0]):
            if (m >> j) & 1:
                offset ^= high_gens[j]
        yield table ^ offset


def enumerate_codewords(code: RMCode) -> Iterator[Word]:
    """All ``2**k`` codewords, zero word first, in message counter order."""
    for block in codeword_blocks(code):
        for row in block:
            yield from_limbs(code.n, row)


def weight_distribution(code: RMCode) -> dict[int, int]:
    """Exact map weight -> number of codewords (weights with count 0 omitted)."""
    counts = np.zeros(code.length + 1, dtype=np.int64)
    for block in codeword_blocks(code):
        counts += np.bincount(popcount_rows(block), minlength=code.length + 1)
    return {w: int(c) for w, c in enumerate(counts) if c}


def far_threshold(code: RMCode) -> Fraction:
    return Fraction(code.length // 2, comb(code.n, code.r))


def count_far_codewords(code: RMCode, distribution: dict[int, int] | None = None) -> int:
    """Number of codewords with ``|wt(g) - 2**(n-1)| >= 2**(n-1) / C(n, r)``."""
    if distribution is None:
        distribution = weight_distribution(code)
    bound = far_threshold(code)
    half = code.length // 2
    return sum(c for w, c in distribution.items() if abs(w - half) >= bound)


def code_info(code: RMCode) -> dict[str, int]:
    return {"n": code.n, "r": code.r, "k": code.k, "d_min": code.d_min, "length": code.length}
