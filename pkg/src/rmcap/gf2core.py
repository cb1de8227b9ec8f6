"""Bit-packed binary words of length 2**n and the Walsh-Hadamard transform.

A :class:`Word` stores its truth table in a Python ``int``. Position ``x`` of
the truth table (the point whose binary expansion is ``x_1 ... x_n`` with
``x_1`` most significant) lives at bit ``2**n - 1 - x`` of the integer, so the
integer value is the truth-table string read as a big-endian binary number.
Comparing two words of equal length therefore orders them lexicographically
by their truth-table strings, which is the tie-breaking order used when
selecting coset leaders.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ParameterError, ResourceError

MAX_N = 28


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ParameterError(f"n must be a non-negative integer, got {n!r}")
    if n > MAX_N:
        raise ResourceError(f"n={n} exceeds the memory guard n <= {MAX_N}")


@dataclass(frozen=True, order=True)
class Word:
    """Binary vector of length ``2**n``."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        if self.bits < 0 or self.bits >> (1 << self.n):
            raise ParameterError(f"bits do not fit in a word of length {1 << self.n}")

    @property
    def length(self) -> int:
        return 1 << self.n

    @classmethod
    def zero(cls, n: int) -> Word:
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> Word:
        return cls(n, (1 << (1 << n)) - 1)

    @classmethod
    def from_string(cls, text: str) -> Word:
        """Parse a truth table written as a string of '0'/'1'."""
        length = len(text)
        if length == 0 or length & (length - 1) or set(text) - {"0", "1"}:
            raise ParameterError(f"not a truth table of length 2**n: {text!r}")
        return cls(length.bit_length() - 1, int(text, 2))

    @classmethod
    def from_positions(cls, n: int, positions: Iterable[int]) -> Word:
        """Word whose support is ``positions`` (truth-table indices)."""
        arr = np.zeros(1 << n, dtype=np.uint8)
        idx = np.fromiter(positions, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= (1 << n)):
            raise ParameterError("position out of range")
        arr[idx] = 1
        return cls.from_array(n, arr)

    @classmethod
    def from_array(cls, n: int, values: np.ndarray) -> Word:
        """Word from a 0/1 array indexed by truth-table position."""
        values = np.asarray(values, dtype=np.uint8)
        if values.shape != (1 << n,):
            raise ParameterError(f"expected {1 << n} entries, got shape {values.shape}")
        return cls(n, int.from_bytes(np.packbits(values).tobytes(), "big") >> _pad(n))

    def to_string(self) -> str:
        return format(self.bits, f"0{self.length}b")

    def to_array(self) -> np.ndarray:
        """0/1 ``uint8`` array indexed by truth-table position."""
        nbytes = (self.length + 7) // 8
        raw = np.frombuffer((self.bits << _pad(self.n)).to_bytes(nbytes, "big"), dtype=np.uint8)
        return np.unpackbits(raw)[: self.length]

    def __xor__(self, other: Word) -> Word:
        _same_n(self, other)
        return Word(self.n, self.bits ^ other.bits)

    def __invert__(self) -> Word:
        return Word(self.n, self.bits ^ ((1 << self.length) - 1))

    def __str__(self) -> str:
        return self.to_string()


def _pad(n: int) -> int:
    # unused low bits of the final byte when 2**n < 8
    return (-(1 << n)) % 8


def _same_n(a: Word, b: Word) -> None:
    if a.n != b.n:
        raise ParameterError(f"length mismatch: 2**{a.n} vs 2**{b.n}")


def weight(w: Word) -> int:
    return w.bits.bit_count()


def distance(a: Word, b: Word) -> int:
    _same_n(a, b)
    return (a.bits ^ b.bits).bit_count()


def walsh_transform(w: Word) -> np.ndarray:
    """Integer Walsh spectrum ``F(a) = sum_x (-1)**(w(x) + a.x)``.

    Computed with the in-place butterfly in ``O(n * 2**n)`` operations and
    returned as an ``int64`` array indexed by ``a``.
    """
    return walsh_of_array(w.to_array())


def walsh_of_array(values: np.ndarray) -> np.ndarray:
    """Walsh spectrum of a 0/1 truth-table array of length ``2**n``."""
    size = values.shape[-1]
    if size & (size - 1):
        raise ParameterError("length must be a power of two")
    if size.bit_length() - 1 > MAX_N:
        raise ResourceError(f"n exceeds the memory guard n <= {MAX_N}")
    spec = 1 - 2 * np.asarray(values, dtype=np.int64)
    h = 1
    while h < size:
        view = spec.reshape(-1, 2, h)
        lo = view[:, 0, :].copy()
        view[:, 0, :] += view[:, 1, :]
        view[:, 1, :] = lo - view[:, 1, :]
        h <<= 1
    return spec


# Multi-limb layout used for bulk numpy work: a word of length N becomes
# ceil(N / 64) big-endian uint64 limbs.

def limb_count(n: int) -> int:
    return max(1, (1 << n) // 64)


def to_limbs(w: Word) -> np.ndarray:
    nlimbs = limb_count(w.n)
    return np.frombuffer(w.bits.to_bytes(8 * nlimbs, "big"), dtype=">u8").astype(np.uint64)


def from_limbs(n: int, limbs: np.ndarray) -> Word:
    return Word(n, int.from_bytes(np.asarray(limbs, dtype=">u8").tobytes(), "big"))


def popcount_rows(limbs: np.ndarray) -> np.ndarray:
    """Row-wise population count of a ``(rows, nlimbs)`` uint64 array."""
    return np.bitwise_count(limbs).sum(axis=-1, dtype=np.int64)
