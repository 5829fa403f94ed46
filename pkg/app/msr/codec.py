"""
File <-> shard conversion: padding, encoding and any-k recovery
"""

import logging
from dataclasses import dataclass

import numpy as np

from core.exceptions import (
    BadLength,
    ChecksumMismatch,
    DimensionMismatch,
    SymbolOverflow,
)
from core.linalg import Matrix, block_matrix, solve

logger = logging.getLogger(__name__)

LENGTH_PREFIX = 8


def symbol_width(q):
    """Bytes needed to store one residue mod q."""
    return max(1, ((q - 1).bit_length() + 7) // 8)


def data_width(q):
    """Payload bytes carried per symbol."""
    width = symbol_width(q)
    return width - 1 if width >= 2 else 1


def to_field(values, field):
    if field.dtype is object:
        return np.asarray(values).astype(object)
    return np.asarray(values).astype(np.int64)


@dataclass(eq=False)
class NodeShard:
    """The alpha symbols a node stores, optionally for several codewords
    stacked along a trailing axis."""

    node_index: int
    symbols: np.ndarray
    params_checksum: int

    def __post_init__(self):
        self.symbols = np.asarray(self.symbols)
        if self.symbols.ndim not in (1, 2):
            raise DimensionMismatch("shard symbols must be 1 or 2 dimensional")

    @property
    def alpha(self):
        return self.symbols.shape[0]

    @property
    def codewords(self):
        return 1 if self.symbols.ndim == 1 else self.symbols.shape[1]

    def columns(self):
        return self.symbols.reshape(self.alpha, -1)

    def __eq__(self, other):
        if not isinstance(other, NodeShard):
            return NotImplemented
        return (
            self.node_index == other.node_index
            and self.params_checksum == other.params_checksum
            and self.symbols.shape == other.symbols.shape
            and bool(np.array_equal(self.symbols, other.symbols))
        )

    def __repr__(self):
        return (
            f"NodeShard(node={self.node_index}, alpha={self.alpha}, "
            f"codewords={self.codewords})"
        )


@dataclass(eq=False)
class SourceFile:
    """A padded file: a whole number of codewords of k*alpha symbols."""

    payload: np.ndarray
    file_size: int

    def __post_init__(self):
        self.payload = np.asarray(self.payload).reshape(-1)
        if self.file_size < 1 or self.payload.size % self.file_size:
            raise BadLength(
                f"{self.payload.size} symbols is not a multiple of "
                f"{self.file_size}"
            )

    @property
    def codewords(self):
        return self.payload.size // self.file_size

    def node_columns(self, k):
        """Data of each systematic node as an (alpha, codewords) array."""
        alpha = self.file_size // k
        chunks = self.payload.reshape(self.codewords, k, alpha)
        return [chunks[:, j, :].T for j in range(k)]

    def __eq__(self, other):
        if not isinstance(other, SourceFile):
            return NotImplemented
        return self.file_size == other.file_size and bool(
            np.array_equal(self.payload, other.payload)
        )


def pad(data, params):
    """Pack bytes into symbols behind an 8-byte little-endian length."""
    q = params.q
    width = data_width(q)
    stream = len(data).to_bytes(LENGTH_PREFIX, "little") + bytes(data)
    stream += bytes(-len(stream) % width)
    groups = np.frombuffer(stream, dtype=np.uint8).reshape(-1, width)
    weights = np.array([1 << (8 * b) for b in range(width)], dtype=np.uint64)
    values = groups.astype(np.uint64) @ weights
    if values.size and int(values.max()) >= q:
        position = int(np.argmax(values >= q))
        raise SymbolOverflow(
            f"symbol {position} has value {int(values[position])} >= q = {q}"
        )
    total = -(-values.size // params.file_size) * params.file_size
    padded = np.zeros(total, dtype=np.uint64)
    padded[: values.size] = values
    return SourceFile(to_field(padded, params.field), params.file_size)


def unpad(source, q):
    width = data_width(q)
    values = np.asarray(source.payload).astype(np.uint64)
    if values.size and int(values.max()) >> (8 * width):
        raise SymbolOverflow(f"symbol does not fit in {width} byte(s)")
    shifts = np.array([8 * b for b in range(width)], dtype=np.uint64)
    stream = (
        ((values[:, None] >> shifts) & np.uint64(0xFF))
        .astype(np.uint8)
        .tobytes()
    )
    length = int.from_bytes(stream[:LENGTH_PREFIX], "little")
    if length > len(stream) - LENGTH_PREFIX:
        raise BadLength(f"length prefix {length} exceeds the payload")
    return stream[LENGTH_PREFIX:LENGTH_PREFIX + length]


def _shard(code, node, columns, single):
    symbols = columns[:, 0] if single else columns
    return NodeShard(node, symbols, code.checksum)


def encode(code, source):
    """Systematic shards 1..k followed by parity shards k+1..n."""
    p = code.params
    if source.file_size != p.file_size:
        raise BadLength(
            f"file holds {source.file_size}-symbol codewords, "
            f"code needs {p.file_size}"
        )
    data = source.node_columns(p.k)
    single = source.codewords == 1
    shards = [_shard(code, j + 1, data[j], single) for j in range(p.k)]
    for i in range(1, p.r + 1):
        parity = np.zeros_like(data[0])
        for j in range(1, p.k + 1):
            parity = (parity + code.apply_block(i, j, data[j - 1])) % p.q
        shards.append(_shard(code, p.k + i, parity, single))
    logger.debug(
        "encoded %d codeword(s) into %d shards", source.codewords, p.n
    )
    return shards


def _select(code, shards):
    p = code.params
    chosen = {}
    for shard in shards:
        if shard.params_checksum != code.checksum:
            raise ChecksumMismatch(
                f"shard {shard.node_index} checksum "
                f"{shard.params_checksum:08x} != {code.checksum:08x}"
            )
        if shard.alpha != p.alpha:
            raise DimensionMismatch(
                f"shard {shard.node_index} holds {shard.alpha} symbols"
            )
        chosen.setdefault(shard.node_index, shard)
    if len(chosen) < p.k:
        raise DimensionMismatch(
            f"{len(chosen)} distinct shards given, {p.k} needed"
        )
    selected = [chosen[node] for node in sorted(chosen)[: p.k]]
    if len({shard.codewords for shard in selected}) != 1:
        raise DimensionMismatch("shards hold different codeword counts")
    return selected


def recover(code, shards):
    """Rebuild the file from any k distinct shards of the code."""
    p = code.params
    selected = _select(code, shards)
    stacked = np.vstack([shard.columns() for shard in selected])
    nodes = [shard.node_index for shard in selected]
    if nodes == list(range(1, p.k + 1)):
        data = stacked
    else:
        system = block_matrix([[code.node_rows(node)] for node in nodes])
        data = solve(system, Matrix(code.field, stacked)).data
        logger.debug("recovered file from nodes %s", nodes)
    return SourceFile(data.T.reshape(-1), p.file_size)
