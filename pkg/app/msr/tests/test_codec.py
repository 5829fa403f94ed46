from itertools import combinations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from django.test import SimpleTestCase

from core.exceptions import (
    BadLength,
    ChecksumMismatch,
    DimensionMismatch,
    Singular,
    SymbolOverflow,
)
from msr import codec
from msr.construction import build_code
from msr.tests.helpers import certified_code, example_code, random_source


def example_source(code, x1, x2):
    payload = codec.to_field(list(x1) + list(x2), code.field)
    return codec.SourceFile(payload, code.params.file_size)


class SymbolWidthTests(SimpleTestCase):

    def test_widths(self):
        self.assertEqual(codec.symbol_width(5), 1)
        self.assertEqual(codec.symbol_width(257), 2)
        self.assertEqual(codec.symbol_width(709), 2)
        self.assertEqual(codec.symbol_width((1 << 61) - 1), 8)

    def test_payload_bytes_per_symbol(self):
        self.assertEqual(codec.data_width(5), 1)
        self.assertEqual(codec.data_width(709), 1)
        self.assertEqual(codec.data_width(65537), 2)
        self.assertEqual(codec.data_width((1 << 61) - 1), 7)


class EncodeTests(SimpleTestCase):

    def test_example_shards(self):
        code = example_code()
        source = example_source(code, [1, 2, 3, 4], [0] * 4)
        shards = codec.encode(code, source)

        self.assertEqual([s.node_index for s in shards], [1, 2, 3, 4])
        self.assertEqual(shards[2].symbols.tolist(), [1, 2, 3, 4])
        self.assertEqual(shards[3].symbols.tolist(), [3, 4, 1, 2])

    def test_zero_file(self):
        code, _ = certified_code()
        source = codec.SourceFile(
            codec.to_field(np.zeros(128), code.field), 128
        )
        for shard in codec.encode(code, source):
            self.assertFalse(shard.symbols.any())

    def test_single_data_node(self):
        code = build_code(3, 1, 2, 5, [[1], [3]])
        source = codec.SourceFile(codec.to_field([1, 4], code.field), 2)
        shards = codec.encode(code, source)
        self.assertEqual(shards[1].symbols.tolist(), [1, 4])
        self.assertEqual(shards[2].symbols.tolist(), [2, 3])

    def test_shards_match_generator_product(self):
        for code in (example_code(), certified_code()[0]):
            source = random_source(code, seed=4)
            g = code.generator_matrix()
            expected = (g.data @ source.payload) % code.params.q

            shards = codec.encode(code, source)
            stacked = np.concatenate([s.symbols for s in shards])
            self.assertEqual(stacked.tolist(), expected.tolist())

    def test_codeword_size_checked(self):
        code = example_code()
        with self.assertRaises(BadLength):
            codec.encode(code, codec.SourceFile(np.zeros(16), 16))

    def test_partial_codeword_rejected(self):
        with self.assertRaises(BadLength):
            codec.SourceFile(np.zeros(10), 8)


class RecoverTests(SimpleTestCase):

    def test_parity_shards_of_example(self):
        code = example_code()
        source = example_source(code, [1, 2, 3, 4], [4, 3, 2, 1])
        shards = codec.encode(code, source)
        self.assertEqual(codec.recover(code, shards[2:]), source)

    def test_systematic_shards(self):
        code = example_code()
        source = example_source(code, [1, 2, 3, 4], [4, 3, 2, 1])
        shards = codec.encode(code, source)
        self.assertEqual(codec.recover(code, shards[:2]), source)

    def test_unit_coefficients_are_not_mds(self):
        code = example_code(1)
        source = example_source(code, [1, 2, 3, 4], [4, 3, 2, 1])
        shards = codec.encode(code, source)
        with self.assertRaises(Singular):
            codec.recover(code, shards[2:])

    def test_any_k_shards(self):
        code, _ = certified_code()
        source = random_source(code, seed=2, codewords=2)
        shards = codec.encode(code, source)
        for chosen in combinations(shards, 2):
            self.assertEqual(codec.recover(code, list(chosen)), source)

    def test_too_few_shards(self):
        code = example_code()
        shards = codec.encode(code, example_source(code, [0] * 4, [0] * 4))
        with self.assertRaises(DimensionMismatch):
            codec.recover(code, [shards[0], shards[0]])

    def test_foreign_shard(self):
        code = example_code()
        shards = codec.encode(
            example_code(1), example_source(code, [0] * 4, [0] * 4)
        )
        with self.assertRaises(ChecksumMismatch):
            codec.recover(code, shards[:2])


class PaddingTests(SimpleTestCase):

    def test_empty_file(self):
        code, _ = certified_code()
        source = codec.pad(b"", code.params)
        self.assertEqual(source.codewords, 1)
        self.assertEqual(codec.unpad(source, code.params.q), b"")

    def test_zero_fill_to_whole_codewords(self):
        code, _ = certified_code()
        source = codec.pad(bytes(range(200)), code.params)
        self.assertEqual(source.codewords, 2)
        self.assertFalse(source.payload[208:].any())

    def test_byte_above_small_modulus(self):
        code = example_code()
        with self.assertRaises(SymbolOverflow):
            codec.pad(b"\x07", code.params)

    def test_small_modulus_round_trip(self):
        code = example_code()
        source = codec.pad(b"\x01\x04", code.params)
        self.assertEqual(codec.unpad(source, 5), b"\x01\x04")

    def test_wide_modulus_round_trip(self):
        params = build_code(3, 1, 2, (1 << 61) - 1, [[1], [2]]).params
        data = bytes(range(256)) * 3
        source = codec.pad(data, params)
        self.assertEqual(source.payload.dtype, np.dtype(object))
        self.assertEqual(codec.unpad(source, params.q), data)

    def test_bad_length_prefix(self):
        code, _ = certified_code()
        source = codec.pad(b"abc", code.params)
        source.payload[0] = 255
        with self.assertRaises(BadLength):
            codec.unpad(source, code.params.q)

    @settings(max_examples=40, deadline=None)
    @given(st.binary(max_size=600))
    def test_round_trip(self, data):
        code, _ = certified_code()
        source = codec.pad(data, code.params)
        self.assertEqual(source.payload.size % 128, 0)
        self.assertEqual(codec.unpad(source, code.params.q), data)
