"""
Shared fixtures for the msr test suites
"""

from functools import lru_cache

import numpy as np

from msr import codec
from msr.coefficients import find_lambdas
from msr.construction import build_code

# the (4,2,3) code over F_5 whose parities are x1 + x2 and P1 x1 + 2 P2 x2
EXAMPLE_LAMBDAS = [[1, 1], [1, 2]]

CERTIFIED_SEED = 1
CERTIFIED_Q = 709


def example_code(lambda22=2):
    return build_code(4, 2, 3, 5, [[1, 1], [1, lambda22]])


def unit_code(n, k, d, q):
    r = n - k
    return build_code(n, k, d, q, [[1] * k for _ in range(r)])


def random_source(code, seed=0, codewords=1):
    p = code.params
    rng = np.random.default_rng(seed)
    payload = rng.integers(0, p.q, size=p.file_size * codewords)
    return codec.SourceFile(codec.to_field(payload, code.field), p.file_size)


@lru_cache(maxsize=None)
def certified_code():
    """A (5,2,3) code over F_709 with searched coefficients."""
    certificate = find_lambdas(5, 2, 3, CERTIFIED_Q, CERTIFIED_SEED)
    code = build_code(5, 2, 3, CERTIFIED_Q, certificate.lambdas)
    return code, certificate
