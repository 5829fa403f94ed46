"""
Helpers shared by the msr management commands
"""

from django.core.management.base import CommandError
from rest_framework import serializers

from msr.serializers import load_params

USAGE = 2
FAILURE = 1


def usage_error(message):
    return CommandError(message, returncode=USAGE)


def failure(message):
    return CommandError(message, returncode=FAILURE)


def load_params_or_fail(path):
    try:
        return load_params(path)
    except FileNotFoundError:
        raise usage_error(f"parameter file {path} not found")
    except serializers.ValidationError as exc:
        raise usage_error(f"invalid parameter file {path}: {exc.detail}")


def parse_nodes(text):
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise usage_error(f"node list {text!r} is not comma separated ints")
