"""
Parameter file schema
"""

import json

from rest_framework import serializers

from core.exceptions import MsrError
from msr import construction


class CertificateSerializer(serializers.Serializer):
    seed = serializers.IntegerField(min_value=0)
    tries = serializers.IntegerField(min_value=0, required=False, default=0)
    mds_verified = serializers.BooleanField()
    any_helper_verified = serializers.BooleanField()
    q_used = serializers.IntegerField(min_value=2)
    bound_mds = serializers.IntegerField(min_value=0)
    bound_any = serializers.IntegerField(min_value=0)


class CodeParamsSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=2, max_value=0xFFFF)
    k = serializers.IntegerField(min_value=1, max_value=0xFFFF)
    d = serializers.IntegerField(min_value=2, max_value=0xFFFF)
    q = serializers.IntegerField(min_value=2)
    alpha = serializers.IntegerField(min_value=1)
    rho = serializers.IntegerField(min_value=1)
    scenario_order = serializers.ChoiceField(
        choices=[construction.SCENARIO_ORDER]
    )
    format_version = serializers.ChoiceField(
        choices=[construction.FORMAT_VERSION]
    )
    # "lambda" is a keyword, so the field is renamed on the way in and out
    lambdas = serializers.ListField(
        child=serializers.ListField(
            child=serializers.IntegerField(min_value=1), allow_empty=False
        ),
        allow_empty=False,
        source="lambda",
    )
    certificate = CertificateSerializer(required=False)

    def to_internal_value(self, data):
        if isinstance(data, dict) and "lambda" in data:
            data = dict(data)
            data["lambdas"] = data.pop("lambda")
        return super().to_internal_value(data)

    def to_representation(self, instance):
        document = super().to_representation(instance)
        document["lambda"] = document.pop("lambdas")
        return document

    def validate(self, attrs):
        lambdas = attrs["lambda"]
        if any(v >= attrs["q"] for row in lambdas for v in row):
            raise serializers.ValidationError(
                {"lambda": "entries must be residues below q"}
            )
        try:
            code = construction.build_code(
                attrs["n"], attrs["k"], attrs["d"], attrs["q"], lambdas
            )
        except MsrError as exc:
            raise serializers.ValidationError(str(exc))
        p = code.params
        if attrs["alpha"] != p.alpha:
            raise serializers.ValidationError(
                {"alpha": f"expected {p.alpha} for [{p.n},{p.k},{p.d}]"}
            )
        if attrs["rho"] != p.rho:
            raise serializers.ValidationError({"rho": f"expected {p.rho}"})
        attrs["code"] = code
        return attrs


def code_document(code, certificate=None):
    document = code.parameter_document()
    if certificate is not None:
        document["certificate"] = certificate.as_document()
    return document


def load_params(path):
    """Validated parameter document and code read from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise serializers.ValidationError(f"{path}: {exc}")
    serializer = CodeParamsSerializer(data=raw)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data


def load_code(path):
    return load_params(path)["code"]


def dump_params(path, code, certificate=None):
    with open(path, "w", encoding="utf-8") as fh:
        document = code_document(code, certificate)
        json.dump(document, fh, indent=2, sort_keys=True)
        fh.write("\n")
