"""
Shard file format

    magic "MSR1" | version u8 | n u16 | k u16 | d u16 | q u64 | alpha u64
    | node_index u16 | params_checksum u32 | payload

All integers are little-endian. The payload holds alpha symbols per
codeword, codeword after codeword, each symbol in symbol_width(q) bytes.
"""

import logging
import struct
from pathlib import Path

import numpy as np

from core.exceptions import BadShard, ChecksumMismatch, SymbolOverflow
from msr.codec import NodeShard, symbol_width, to_field

logger = logging.getLogger(__name__)

MAGIC = b"MSR1"
VERSION = 1
HEADER = struct.Struct("<4sBHHHQQHI")


def shard_path(directory, node):
    return Path(directory) / f"node_{node}.msr"


def pack_header(code, node_index):
    p = code.params
    return HEADER.pack(
        MAGIC, VERSION, p.n, p.k, p.d, p.q, p.alpha, node_index, code.checksum
    )


def unpack_header(raw):
    if len(raw) != HEADER.size:
        raise BadShard(f"header is {len(raw)} bytes, expected {HEADER.size}")
    magic, version, n, k, d, q, alpha, node, checksum = HEADER.unpack(raw)
    if magic != MAGIC:
        raise BadShard(f"bad magic {magic!r}")
    if version != VERSION:
        raise BadShard(f"unsupported shard version {version}")
    return {
        "n": n,
        "k": k,
        "d": d,
        "q": q,
        "alpha": alpha,
        "node_index": node,
        "params_checksum": checksum,
    }


def check_header(code, header):
    p = code.params
    for key in ("n", "k", "d", "q", "alpha"):
        if header[key] != getattr(p, key):
            raise BadShard(
                f"shard {key} = {header[key]}, code has {getattr(p, key)}"
            )
    if header["params_checksum"] != code.checksum:
        raise ChecksumMismatch(
            f"shard checksum {header['params_checksum']:08x} != "
            f"{code.checksum:08x}"
        )


def encode_symbols(values, width):
    values = np.asarray(values).astype(np.uint64).reshape(-1)
    shifts = np.array([8 * b for b in range(width)], dtype=np.uint64)
    return (
        ((values[:, None] >> shifts) & np.uint64(0xFF))
        .astype(np.uint8)
        .tobytes()
    )


def decode_symbols(raw, width, field):
    groups = np.frombuffer(raw, dtype=np.uint8).reshape(-1, width)
    weights = np.array([1 << (8 * b) for b in range(width)], dtype=np.uint64)
    values = groups.astype(np.uint64) @ weights
    if values.size and int(values.max()) >= field.q:
        raise SymbolOverflow(f"stored symbol >= q = {field.q}")
    return to_field(values, field)


def write_shard(path, code, shard):
    width = symbol_width(code.params.q)
    # codeword-major: transpose (alpha, codewords) before flattening
    payload = shard.columns().T
    with open(path, "wb") as fh:
        fh.write(pack_header(code, shard.node_index))
        fh.write(encode_symbols(payload, width))
    logger.debug("wrote shard %d to %s", shard.node_index, path)


def read_shard(path, code):
    with ShardReader(path, code) as reader:
        return reader.read_all()


class ShardReader:
    """Reads symbols from a shard file, counting every payload symbol."""

    def __init__(self, path, code):
        self.path = Path(path)
        self.code = code
        self.width = symbol_width(code.params.q)
        self.symbols_read = 0
        self._fh = None
        self.header = None

    def __enter__(self):
        self.open()
        return self

    def __exit__(self, *exc):
        self.close()

    def open(self):
        self._fh = open(self.path, "rb")
        try:
            self.header = unpack_header(self._fh.read(HEADER.size))
            check_header(self.code, self.header)
            payload = self.path.stat().st_size - HEADER.size
            stride = self.code.params.alpha * self.width
            if payload <= 0 or payload % stride:
                raise BadShard(f"{self.path}: payload of {payload} bytes")
            self.codewords = payload // stride
        except Exception:
            self.close()
            raise

    def close(self):
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    @property
    def node_index(self):
        return self.header["node_index"]

    def _offset(self, codeword, row):
        alpha = self.code.params.alpha
        return HEADER.size + (codeword * alpha + row) * self.width

    def read_rows(self, rows):
        """Symbols at the given rows of every codeword, (len(rows), C)."""
        rows = np.asarray(rows, dtype=np.int64)
        breaks = np.flatnonzero(np.diff(rows) != 1) + 1
        runs = [(int(run[0]), run.size) for run in np.split(rows, breaks)]
        out = []
        for codeword in range(self.codewords):
            chunks = []
            for start, length in runs:
                self._fh.seek(self._offset(codeword, start))
                chunks.append(self._fh.read(length * self.width))
            out.append(b"".join(chunks))
            self.symbols_read += rows.size
        values = decode_symbols(b"".join(out), self.width, self.code.field)
        return values.reshape(self.codewords, rows.size).T

    def read_all(self):
        self._fh.seek(HEADER.size)
        raw = self._fh.read()
        values = decode_symbols(raw, self.width, self.code.field)
        alpha = self.code.params.alpha
        self.symbols_read += values.size
        columns = values.reshape(self.codewords, alpha).T
        symbols = columns[:, 0] if self.codewords == 1 else columns
        return NodeShard(
            self.node_index, symbols, self.header["params_checksum"]
        )
