"""
Choice and verification of the encoding coefficients lambda_{i,j}
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from django.conf import settings

from core.exceptions import MsrError, SearchExhausted
from core.field import FieldContext, next_prime
from core.linalg import block_matrix, rank
from msr import construction
from msr.repair import HelperSet, plan_repair, repair_matrix
from msr.verification import run_cases

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1


class XorShift64Star:
    """xorshift64* generator.

    state ^= state >> 12; state ^= state << 25; state ^= state >> 27;
    output = state * 0x2545F4914F6CDD1D mod 2^64. A zero seed is replaced
    by 0x9E3779B97F4A7C15.
    """

    MULTIPLIER = 0x2545F4914F6CDD1D
    ZERO_SEED = 0x9E3779B97F4A7C15

    def __init__(self, seed):
        self.state = (seed & _MASK64) or self.ZERO_SEED

    def next(self):
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * self.MULTIPLIER) & _MASK64

    def below(self, bound):
        """Uniform integer in [0, bound) by rejection sampling."""
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            value = self.next()
            if value < limit:
                return value % bound

    def nonzero(self, q):
        return 1 + self.below(q - 1)


@dataclass
class CoefficientCertificate:
    lambdas: list
    mds_verified: bool
    any_helper_verified: bool
    q_used: int
    bound_mds: int
    bound_any: int
    seed: int = 0
    tries: int = 0
    failures: list = field(default_factory=list)

    @property
    def valid(self):
        return self.mds_verified and self.any_helper_verified

    def as_document(self):
        return {
            "seed": self.seed,
            "tries": self.tries,
            "mds_verified": self.mds_verified,
            "any_helper_verified": self.any_helper_verified,
            "q_used": self.q_used,
            "bound_mds": self.bound_mds,
            "bound_any": self.bound_any,
        }


def bound_qmds(n, k, d):
    alpha = construction.min_alpha(n, k, d)
    r = n - k
    return alpha * max(
        comb(r - 1, t) * comb(k - 1, t) for t in range(1, k + 1)
    )


def qany_case_degree(h, alpha, rho):
    """Degree of det(M) for a case with h parity helpers."""
    return h * alpha // rho


def bound_qany(n, k, d):
    alpha = construction.min_alpha(n, k, d)
    r, rho = n - k, d - k + 1
    # at most d of the helpers can be parity nodes
    total = sum(
        h * comb(r, h) * comb(k - 1, d - h)
        for h in range(rho, min(r, d) + 1)
    )
    return total * k * alpha // rho


def recommended_q(n, k, d):
    return next_prime(bound_qmds(n, k, d) + bound_qany(n, k, d))


def _sub_block_nonsingular(code, rows, cols):
    sub = code.parity_part(rows=rows, cols=cols)
    return rank(sub) == sub.rows


def sub_block_cases(code):
    """Every t x t choice of parity rows and data columns with t >= 2."""
    p = code.params
    return [
        (rows, cols)
        for t in range(2, min(p.r, p.k) + 1)
        for rows in combinations(range(1, p.r + 1), t)
        for cols in combinations(range(1, p.k + 1), t)
    ]


def check_mds_by_blocks(code, threads=None):
    """Sub-block criterion; single blocks are scaled permutations."""
    results = run_cases(
        lambda case: _sub_block_nonsingular(code, *case),
        sub_block_cases(code),
        threads,
    )
    return all(ok for _, ok in results)


def _subset_invertible(code, nodes):
    stacked = block_matrix([[code.node_rows(node)] for node in nodes])
    return rank(stacked) == stacked.rows


def check_mds_by_subsets(code, threads=None):
    """Every k of the n nodes span the whole file."""
    p = code.params
    results = run_cases(
        lambda nodes: _subset_invertible(code, nodes),
        list(combinations(range(1, p.n + 1), p.k)),
        threads,
    )
    return all(ok for _, ok in results)


def check_mds(code, threads=None):
    by_blocks = check_mds_by_blocks(code, threads)
    by_subsets = check_mds_by_subsets(code, threads)
    if by_blocks != by_subsets:
        raise MsrError(
            f"MDS criteria disagree: blocks={by_blocks} subsets={by_subsets}"
        )
    return by_blocks


def any_helper_cases(params):
    """Every (failed systematic node, helper set) pair."""
    cases = []
    for failed in range(1, params.k + 1):
        survivors = [node for node in range(1, params.n + 1) if node != failed]
        for helpers in combinations(survivors, params.d):
            cases.append((failed, helpers))
    return cases


def any_helper_report(code, threads=None):
    def solvable(case):
        failed, helpers = case
        hs = HelperSet.create(code.params, failed, helpers)
        matrix = repair_matrix(code, plan_repair(code, hs))
        return rank(matrix) == matrix.rows

    return run_cases(solvable, any_helper_cases(code.params), threads)


def check_any_helper(code, threads=None):
    return all(ok for _, ok in any_helper_report(code, threads))


def draw_lambdas(rng, r, k, q):
    return [[rng.nonzero(q) for _ in range(k)] for _ in range(r)]


def find_lambdas(n, k, d, q, seed, max_tries=None, threads=None):
    """Draw coefficient tables until one passes both checks."""
    if max_tries is None:
        max_tries = getattr(settings, "MSR_MAX_TRIES", 64)
    FieldContext(q)
    bmds, bany = bound_qmds(n, k, d), bound_qany(n, k, d)
    if q <= bmds + bany:
        logger.warning(
            "q = %d is not above q_MDS + q_ANY = %d; search may fail",
            q,
            bmds + bany,
        )
    rng = XorShift64Star(seed)
    failures = []
    for attempt in range(1, max_tries + 1):
        lambdas = draw_lambdas(rng, n - k, k, q)
        code = construction.build_code(n, k, d, q, lambdas)
        mds = check_mds(code, threads)
        any_helper = mds and check_any_helper(code, threads)
        logger.info(
            "try %d: mds=%s any_helper=%s lambdas=%s",
            attempt,
            mds,
            any_helper,
            lambdas,
        )
        if mds and any_helper:
            return CoefficientCertificate(
                lambdas=lambdas,
                mds_verified=True,
                any_helper_verified=True,
                q_used=q,
                bound_mds=bmds,
                bound_any=bany,
                seed=seed,
                tries=attempt,
                failures=failures,
            )
        failures.append(lambdas)
    raise SearchExhausted(
        f"no valid lambda table for [{n},{k},{d}] over F_{q} "
        f"after {max_tries} tries"
    )
