import tempfile
from pathlib import Path

import numpy as np

from django.test import SimpleTestCase

from core.exceptions import BadShard, ChecksumMismatch, SymbolOverflow
from msr import codec, shards
from msr.shards import ShardReader, read_shard, shard_path, write_shard
from msr.tests.helpers import certified_code, example_code, random_source


class ShardFileTests(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)
        self.code, _ = certified_code()
        self.source = random_source(self.code, seed=4, codewords=3)
        self.shards = codec.encode(self.code, self.source)

    def _write(self, node=4):
        path = shard_path(self.dir, node)
        write_shard(path, self.code, self.shards[node - 1])
        return path

    def test_path_naming(self):
        self.assertEqual(shard_path(self.dir, 3).name, "node_3.msr")

    def test_header_layout(self):
        self.assertEqual(shards.HEADER.size, 33)
        raw = shards.pack_header(self.code, 4)
        self.assertEqual(raw[:4], b"MSR1")
        header = shards.unpack_header(raw)
        self.assertEqual(header["node_index"], 4)
        self.assertEqual(header["alpha"], 64)
        self.assertEqual(header["params_checksum"], self.code.checksum)

    def test_file_size(self):
        path = self._write()
        self.assertEqual(path.stat().st_size, 33 + 3 * 64 * 2)

    def test_round_trip(self):
        path = self._write()
        self.assertEqual(read_shard(path, self.code), self.shards[3])

    def test_partial_read(self):
        path = self._write()
        rows = [0, 1, 2, 9, 10, 40]
        with ShardReader(path, self.code) as reader:
            values = reader.read_rows(rows)
            self.assertEqual(reader.symbols_read, 3 * len(rows))
            self.assertEqual(reader.codewords, 3)
        expected = self.shards[3].symbols[rows]
        self.assertTrue(np.array_equal(values, expected))

    def test_bad_magic(self):
        path = self._write()
        raw = bytearray(path.read_bytes())
        raw[:4] = b"XXXX"
        path.write_bytes(bytes(raw))
        with self.assertRaises(BadShard):
            read_shard(path, self.code)

    def test_other_code(self):
        path = self._write()
        code = example_code()
        with self.assertRaises(BadShard):
            read_shard(path, code)

    def test_checksum_mismatch(self):
        path = self._write()
        raw = bytearray(path.read_bytes())
        raw[29:33] = (self.code.checksum ^ 1).to_bytes(4, "little")
        path.write_bytes(bytes(raw))
        with self.assertRaises(ChecksumMismatch):
            read_shard(path, self.code)

    def test_truncated_payload(self):
        path = self._write()
        path.write_bytes(path.read_bytes()[:-1])
        with self.assertRaises(BadShard):
            read_shard(path, self.code)

    def test_symbol_above_modulus(self):
        with self.assertRaises(SymbolOverflow):
            shards.decode_symbols(b"\xff\xff", 2, self.code.field)
