import json
import tempfile
from pathlib import Path

from rest_framework import serializers

from django.test import SimpleTestCase

from msr.serializers import (
    CodeParamsSerializer,
    code_document,
    dump_params,
    load_code,
    load_params,
)
from msr.tests.helpers import certified_code, example_code


class CodeParamsSerializerTests(SimpleTestCase):

    def test_valid_document(self):
        document = example_code().parameter_document()
        serializer = CodeParamsSerializer(data=document)

        self.assertTrue(serializer.is_valid(), serializer.errors)
        code = serializer.validated_data["code"]
        self.assertEqual(code.checksum, example_code().checksum)

    def test_lambda_below_modulus(self):
        document = example_code().parameter_document()
        document["lambda"] = [[1, 1], [1, 7]]
        serializer = CodeParamsSerializer(data=document)

        self.assertFalse(serializer.is_valid())
        self.assertIn("lambda", serializer.errors)

    def test_zero_lambda(self):
        document = example_code().parameter_document()
        document["lambda"] = [[1, 1], [1, 0]]
        self.assertFalse(CodeParamsSerializer(data=document).is_valid())

    def test_wrong_alpha(self):
        document = example_code().parameter_document()
        document["alpha"] = 8
        serializer = CodeParamsSerializer(data=document)

        self.assertFalse(serializer.is_valid())
        self.assertIn("alpha", serializer.errors)

    def test_invalid_triple(self):
        document = example_code().parameter_document()
        document["k"] = 4
        self.assertFalse(CodeParamsSerializer(data=document).is_valid())

    def test_composite_modulus(self):
        document = example_code().parameter_document()
        document["q"] = 6
        self.assertFalse(CodeParamsSerializer(data=document).is_valid())

    def test_unknown_format_version(self):
        document = example_code().parameter_document()
        document["format_version"] = 2
        serializer = CodeParamsSerializer(data=document)

        self.assertFalse(serializer.is_valid())
        self.assertIn("format_version", serializer.errors)


class ParameterFileTests(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.path = Path(self.tmp.name) / "params.json"

    def test_dump_and_load(self):
        code, certificate = certified_code()
        dump_params(self.path, code, certificate)

        document = json.loads(self.path.read_text())
        self.assertEqual(document["certificate"]["q_used"], 709)
        self.assertTrue(document["certificate"]["any_helper_verified"])
        loaded = load_params(self.path)
        self.assertEqual(loaded["code"].lambdas, code.lambdas)
        self.assertEqual(load_code(self.path).checksum, code.checksum)

    def test_checksum_ignores_certificate(self):
        code, certificate = certified_code()
        with_certificate = code_document(code, certificate)
        self.assertIn("certificate", with_certificate)
        self.assertEqual(code_document(code), code.parameter_document())

    def test_malformed_json(self):
        self.path.write_text("{not json")
        with self.assertRaises(serializers.ValidationError):
            load_params(self.path)
