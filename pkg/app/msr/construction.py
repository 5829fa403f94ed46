"""
Code construction: parameters, scenario table and encoding blocks
"""

import json
import logging
import zlib
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

from django.conf import settings

from core.exceptions import BadParams, Overflow, TooLarge, ZeroLambda
from core.field import FieldContext
from core.labels import MAX_ALPHA, LabelSpace
from core.linalg import Matrix, block_matrix

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
SCENARIO_ORDER = "lex"


def max_alpha():
    return getattr(settings, "MSR_MAX_ALPHA", MAX_ALPHA)


def dense_alpha():
    return getattr(settings, "MSR_DENSE_ALPHA", 4096)


def validate_triple(n, k, d):
    if not 1 <= k < d <= n - 1:
        raise BadParams(f"need 1 <= k < d <= n - 1, got [{n},{k},{d}]")


def min_alpha(n, k, d):
    """Sub-packetization rho^(k * C(r, rho))."""
    validate_triple(n, k, d)
    r, rho = n - k, d - k + 1
    exponent = k * comb(r, rho)
    cap = max_alpha()
    alpha = 1
    # rho >= 2, so the cap is passed within log2(cap) steps
    for _ in range(exponent):
        alpha *= rho
        if alpha > cap:
            raise Overflow(
                f"alpha = {rho}^{exponent} exceeds the cap {cap}"
            )
    return alpha


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    q: int

    def __post_init__(self):
        validate_triple(self.n, self.k, self.d)
        # raises NotPrime
        FieldContext(self.q)

    @property
    def r(self):
        return self.n - self.k

    @property
    def rho(self):
        return self.d - self.k + 1

    @property
    def scenario_count(self):
        return comb(self.r, self.rho)

    @property
    def m(self):
        return self.k * self.scenario_count

    @cached_property
    def alpha(self):
        return min_alpha(self.n, self.k, self.d)

    @property
    def beta(self):
        return self.alpha // self.rho

    @property
    def file_size(self):
        return self.k * self.alpha

    @cached_property
    def field(self):
        return FieldContext(self.q)

    @cached_property
    def space(self):
        return LabelSpace(self.rho, self.m)


@dataclass(frozen=True)
class ScenarioTable:
    """The rho-subsets R_a of parity indices and their omega vectors."""

    r: int
    rho: int
    scenarios: tuple

    @classmethod
    def build(cls, r, rho):
        if not 1 <= rho <= r:
            raise BadParams(f"rho = {rho} outside [1, {r}]")
        return cls(r, rho, tuple(combinations(range(1, r + 1), rho)))

    def __len__(self):
        return len(self.scenarios)

    def subset(self, a):
        return self.scenarios[a - 1]

    def index_of(self, subset):
        return self.scenarios.index(tuple(sorted(subset))) + 1

    def omega(self, a, i):
        subset = self.subset(a)
        if i in subset:
            return subset.index(i)
        return 0

    @property
    def omegas(self):
        return tuple(
            tuple(self.omega(a, i) for i in range(1, self.r + 1))
            for a in range(1, len(self) + 1)
        )


def omega(table, a, i):
    return table.omega(a, i)


@dataclass(frozen=True)
class EncodingBlock:
    """A_{i,j} = coefficient * (translation perm)."""

    coefficient: int
    perm: object

    def __post_init__(self):
        if self.coefficient == 0:
            raise ZeroLambda("encoding block with zero coefficient")


@dataclass(frozen=True)
class MsrCode:
    params: CodeParams
    table: ScenarioTable
    blocks: tuple

    @property
    def field(self):
        return self.params.field

    @property
    def space(self):
        return self.params.space

    def block(self, i, j):
        """Encoding block of parity i (1..r) over systematic j (1..k)."""
        return self.blocks[i - 1][j - 1]

    @property
    def lambdas(self):
        return [[blk.coefficient for blk in row] for row in self.blocks]

    def coordinate(self, j, a):
        """Label coordinate steered by scenario a for systematic node j."""
        return a + (j - 1) * self.params.scenario_count

    @cached_property
    def _permutations(self):
        space = self.space
        return tuple(
            tuple(space.permutation(blk.perm) for blk in row)
            for row in self.blocks
        )

    def permutation(self, i, j):
        return self._permutations[i - 1][j - 1]

    def apply_block(self, i, j, x):
        """A_{i,j} x for x of shape (alpha,) or (alpha, codewords)."""
        blk = self.block(i, j)
        q = self.params.q
        return (x[self.permutation(i, j)] * blk.coefficient) % q

    def _check_dense(self):
        if self.params.alpha > dense_alpha():
            raise TooLarge(
                f"alpha = {self.params.alpha} above dense cap {dense_alpha()}"
            )

    def encoding_matrix(self, i, j):
        self._check_dense()
        blk = self.block(i, j)
        perm = self.space.permutation_matrix(self.field, blk.perm)
        return perm.scale(blk.coefficient)

    def parity_part(self, rows=None, cols=None):
        """The block matrix B over the given parity rows and data columns."""
        rows = range(1, self.params.r + 1) if rows is None else rows
        cols = range(1, self.params.k + 1) if cols is None else cols
        return block_matrix(
            [[self.encoding_matrix(i, j) for j in cols] for i in rows]
        )

    def generator_matrix(self):
        self._check_dense()
        p = self.params
        field = self.field
        top = Matrix.identity(field, p.k * p.alpha)
        return block_matrix([[top], [self.parity_part()]])

    def node_rows(self, node):
        """Rows of the generator matrix held by a node (1..n)."""
        p = self.params
        field = self.field
        if node <= p.k:
            grid = [
                Matrix.identity(field, p.alpha)
                if j == node
                else Matrix.zeros(field, p.alpha, p.alpha)
                for j in range(1, p.k + 1)
            ]
            return block_matrix([grid])
        return self.parity_part(rows=[node - p.k])

    def parameter_document(self):
        p = self.params
        return {
            "n": p.n,
            "k": p.k,
            "d": p.d,
            "q": p.q,
            "alpha": p.alpha,
            "rho": p.rho,
            "scenario_order": SCENARIO_ORDER,
            "lambda": self.lambdas,
            "format_version": FORMAT_VERSION,
        }

    @cached_property
    def checksum(self):
        return params_checksum(self.parameter_document())


def canonical_json(document):
    return json.dumps(document, sort_keys=True, separators=(",", ":"))


def params_checksum(document):
    """CRC-32 of the canonical parameter JSON."""
    return zlib.crc32(canonical_json(document).encode("utf-8")) & 0xFFFFFFFF


def _check_lambdas(params, lambdas):
    field = params.field
    shape_ok = len(lambdas) == params.r and all(
        len(row) == params.k for row in lambdas
    )
    if not shape_ok:
        raise BadParams(f"lambda table must be {params.r}x{params.k}")
    table = [[int(v) % field.q for v in row] for row in lambdas]
    for i, row in enumerate(table, start=1):
        for j, value in enumerate(row, start=1):
            if value == 0:
                raise ZeroLambda(f"lambda[{i}][{j}] is zero mod {field.q}")
    return table


def build_code(n, k, d, q, lambdas):
    """Construct the code with A_{i,j} = lambda_{i,j} prod_a P_{w_a(i), .}"""
    params = CodeParams(n, k, d, q)
    table = ScenarioTable.build(params.r, params.rho)
    coefficients = _check_lambdas(params, lambdas)
    space = params.space
    blocks = []
    for i in range(1, params.r + 1):
        row = []
        for j in range(1, k + 1):
            shift = [0] * params.m
            for a in range(1, len(table) + 1):
                shift[a + (j - 1) * len(table) - 1] = table.omega(a, i)
            row.append(
                EncodingBlock(
                    coefficients[i - 1][j - 1], space.translation(shift)
                )
            )
        blocks.append(tuple(row))
    logger.debug(
        "built [%d,%d,%d] code over F_%d, alpha=%d", n, k, d, q, params.alpha
    )
    return MsrCode(params, table, tuple(blocks))


def construction_one(n, k, q, lambdas):
    """The d = n - 1 construction written directly: A_{i,j} = l P_{i-1,j}."""
    params = CodeParams(n, k, n - 1, q)
    table = ScenarioTable.build(params.r, params.rho)
    coefficients = _check_lambdas(params, lambdas)
    space = params.space
    blocks = tuple(
        tuple(
            EncodingBlock(coefficients[i - 1][j - 1], space.unit(j, i - 1))
            for j in range(1, k + 1)
        )
        for i in range(1, params.r + 1)
    )
    return MsrCode(params, table, blocks)


def generator_matrix(code):
    return code.generator_matrix()
