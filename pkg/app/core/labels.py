"""
Label space Z_rho^m over the coordinates [0, alpha - 1]

Index convention: coordinate 1 is the most significant digit, so
index_of(v) = sum_j v_j * rho^(m - j). Shard layouts depend on it.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from core.exceptions import DimensionMismatch, OutOfRange, TooLarge
from core.linalg import Matrix

MAX_ALPHA = 1 << 20


@dataclass(frozen=True)
class Translation:
    """v -> v + shift, a permutation of the label space."""

    shift: tuple

    def is_identity(self):
        return not any(self.shift)

    def support(self):
        """1-indexed coordinates the translation moves."""
        return tuple(j + 1 for j, s in enumerate(self.shift) if s)


class CoordinateSlice:
    """The members v of the label space with v_j == digit, sorted."""

    __slots__ = ("coordinate", "digit", "members", "_positions")

    def __init__(self, coordinate, digit, members, size):
        self.coordinate = coordinate
        self.digit = digit
        members = np.array(members, dtype=np.int64)
        members.setflags(write=False)
        self.members = members
        positions = np.full(size, -1, dtype=np.int64)
        positions[members] = np.arange(members.size)
        positions.setflags(write=False)
        self._positions = positions

    def __len__(self):
        return int(self.members.size)

    def __iter__(self):
        return (int(v) for v in self.members)

    def __contains__(self, index):
        return 0 <= index < self._positions.size and (
            self._positions[index] >= 0
        )

    def __eq__(self, other):
        if not isinstance(other, CoordinateSlice):
            return NotImplemented
        return bool(np.array_equal(self.members, other.members))

    __hash__ = None

    def __repr__(self):
        return (
            f"CoordinateSlice(coordinate={self.coordinate}, "
            f"digit={self.digit}, size={len(self)})"
        )

    def positions(self, indices):
        """Position of each index within the slice, -1 when absent."""
        return self._positions[np.asarray(indices, dtype=np.int64)]

    def as_set(self):
        return set(int(v) for v in self.members)


@dataclass(frozen=True)
class LabelSpace:
    base: int
    length: int

    def __post_init__(self):
        if self.base < 2 or self.length < 1:
            raise OutOfRange(
                f"label space Z_{self.base}^{self.length} is empty"
            )
        if self.base ** self.length > MAX_ALPHA:
            raise TooLarge(
                f"alpha = {self.base}^{self.length} exceeds {MAX_ALPHA}"
            )

    @property
    def size(self):
        return self.base ** self.length

    @cached_property
    def _weights(self):
        return np.array(
            [self.base ** (self.length - 1 - j) for j in range(self.length)],
            dtype=np.int64,
        )

    @cached_property
    def _indices(self):
        return np.arange(self.size, dtype=np.int64)

    def _check_coordinate(self, j):
        if not 1 <= j <= self.length:
            raise OutOfRange(f"coordinate {j} outside [1, {self.length}]")

    def _check_digit(self, digit):
        if not 0 <= digit < self.base:
            raise OutOfRange(f"digit {digit} outside [0, {self.base - 1}]")

    def index_of(self, label):
        if len(label) != self.length:
            raise OutOfRange(f"label {tuple(label)} has wrong length")
        index = 0
        for digit in label:
            self._check_digit(digit)
            index = index * self.base + digit
        return index

    def label_of(self, index):
        if not 0 <= index < self.size:
            raise OutOfRange(f"index {index} outside [0, {self.size - 1}]")
        digits = []
        for _ in range(self.length):
            index, digit = divmod(index, self.base)
            digits.append(digit)
        return tuple(reversed(digits))

    def digits(self, j):
        """Digit of coordinate j for every index, as an array."""
        self._check_coordinate(j)
        return (self._indices // self._weights[j - 1]) % self.base

    def translation(self, shift):
        shift = tuple(int(s) for s in shift)
        if len(shift) != self.length:
            raise DimensionMismatch(
                f"shift of length {len(shift)} in Z_{self.base}^{self.length}"
            )
        for s in shift:
            self._check_digit(s)
        return Translation(shift)

    def zero(self):
        return Translation((0,) * self.length)

    def unit(self, j, digit=1):
        """digit * e_j."""
        self._check_coordinate(j)
        shift = [0] * self.length
        shift[j - 1] = digit % self.base
        return Translation(tuple(shift))

    def compose(self, first, second):
        return Translation(
            tuple(
                (a + b) % self.base
                for a, b in zip(first.shift, second.shift)
            )
        )

    def apply_translation(self, t, index):
        if not 0 <= index < self.size:
            raise OutOfRange(f"index {index} outside [0, {self.size - 1}]")
        return int(self.permutation(t)[index])

    def permutation(self, t):
        """Image of every index under t, as an array of length alpha."""
        image = self._indices.copy()
        for j, s in enumerate(t.shift):
            if not s:
                continue
            weight = self._weights[j]
            digit = (self._indices // weight) % self.base
            image += (((digit + s) % self.base) - digit) * weight
        return image

    def image(self, t, members):
        """Sorted image of a set of indices under t."""
        return np.sort(self.permutation(t)[np.asarray(members, np.int64)])

    def slice(self, j, digit):
        self._check_coordinate(j)
        self._check_digit(digit)
        members = np.flatnonzero(self.digits(j) == digit)
        return CoordinateSlice(j, digit, members, self.size)

    def maps_onto(self, t, target, source=None):
        """True when t sends source (default: target) onto target as sets."""
        source = target if source is None else source
        return bool(
            np.array_equal(self.image(t, source.members), target.members)
        )

    def permutation_matrix(self, field, t):
        """Dense P with (P x)[u] == x[t(u)], for verification only."""
        perm = self.permutation(t)
        data = field.zeros((self.size, self.size))
        data[self._indices, perm] = 1
        return Matrix(field, data)
