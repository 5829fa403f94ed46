"""
Prime field arithmetic
"""

from math import isqrt

import numpy as np

from core.exceptions import DivisionByZero, NotPrime, OutOfRange

MAX_MODULUS = 1 << 61

# int64 products of two residues stay exact below this modulus
_INT64_MODULUS = 1 << 31

# deterministic Miller-Rabin witnesses, exact for n < 3.3e24
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 1 << 40


def _trial_division(q):
    if q < 4:
        return q >= 2
    if q % 2 == 0 or q % 3 == 0:
        return False
    step = 5
    limit = isqrt(q)
    while step <= limit:
        if q % step == 0 or q % (step + 2) == 0:
            return False
        step += 6
    return True


def _miller_rabin(q):
    d, s = q - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _WITNESSES:
        x = pow(a, d, q)
        if x in (1, q - 1):
            continue
        for _ in range(s - 1):
            x = pow(x, 2, q)
            if x == q - 1:
                break
        else:
            return False
    return True


def is_prime(q):
    """Primality by trial division, switching to Miller-Rabin for huge q."""
    if q < _TRIAL_LIMIT:
        return _trial_division(q)
    if any(q % p == 0 for p in _WITNESSES):
        return q in _WITNESSES
    return _miller_rabin(q)


def next_prime(n):
    """Smallest prime strictly greater than n."""
    candidate = max(2, n + 1)
    while not is_prime(candidate):
        candidate += 1
    return candidate


class FieldContext:
    """The prime field F_q.

    Elements are plain ints in [0, q-1]. Contexts are immutable and compare
    equal when their moduli are equal.
    """

    __slots__ = ("_q",)

    def __init__(self, q):
        if q < 2 or q >= MAX_MODULUS:
            raise NotPrime(f"modulus {q} outside [2, 2^61)")
        if not is_prime(q):
            raise NotPrime(f"{q} is not prime")
        object.__setattr__(self, "_q", q)

    def __setattr__(self, name, value):
        raise AttributeError("FieldContext is immutable")

    @property
    def q(self):
        return self._q

    @property
    def dtype(self):
        return np.int64 if self._q < _INT64_MODULUS else object

    def __eq__(self, other):
        return isinstance(other, FieldContext) and other.q == self.q

    def __hash__(self):
        return hash(("F", self._q))

    def __repr__(self):
        return f"FieldContext(q={self._q})"

    def element(self, value):
        value = int(value)
        if not 0 <= value < self._q:
            raise OutOfRange(f"{value} is not a residue mod {self._q}")
        return value

    def add(self, a, b):
        return (a + b) % self._q

    def sub(self, a, b):
        return (a - b) % self._q

    def neg(self, a):
        return -a % self._q

    def mul(self, a, b):
        return (a * b) % self._q

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self._q)
        return pow(a, e, self._q)

    def inv(self, a):
        if a % self._q == 0:
            raise DivisionByZero(f"0 has no inverse mod {self._q}")
        return pow(a, -1, self._q)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def array(self, values):
        """Reduce an array-like of integers into this field's dtype."""
        arr = np.array(values, dtype=object)
        arr = arr % self._q
        return arr.astype(self.dtype)

    def zeros(self, shape):
        return np.zeros(shape, dtype=self.dtype)


def field_new(q):
    return FieldContext(q)
