"""
File format serializers for event logs, checkpoints and simulation configs.
"""

from typing import Any

from rest_framework import serializers

from apps.hawkes.exceptions import HawkesValidationError
from apps.hawkes.kernels import KERNEL_KINDS


class EventHeaderSerializer(serializers.Serializer):
    """First line of an events file."""

    C = serializers.IntegerField(min_value=1, help_text="Number of entities")
    T = serializers.FloatField(help_text="Observation horizon")
    M = serializers.IntegerField(
        required=False,
        min_value=0,
        help_text="Number of agents, including agents without events",
    )

    def validate_T(self, value):
        if value <= 0:
            raise serializers.ValidationError("T must be positive")
        return value


class EventSerializer(serializers.Serializer):
    """One event line."""

    agent = serializers.IntegerField(min_value=0)
    time = serializers.FloatField(min_value=0.0)
    entity = serializers.IntegerField(min_value=0)


class KernelSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=list(KERNEL_KINDS))
    params = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), allow_empty=False),
        allow_empty=False,
    )


class CheckpointSerializer(serializers.Serializer):
    """Model checkpoint file."""

    schema_version = serializers.IntegerField()
    C = serializers.IntegerField(min_value=1)
    M = serializers.IntegerField(min_value=1)
    L = serializers.IntegerField(min_value=1)
    kernel = KernelSerializer()
    U = serializers.ListField(child=serializers.FloatField(), allow_empty=False)
    A = serializers.ListField(child=serializers.FloatField(), allow_empty=False)
    provenance = serializers.DictField(required=False, default=dict)


class SimConfigSerializer(serializers.Serializer):
    """A `simulate --config` file."""

    C = serializers.IntegerField(required=False, min_value=1)
    M = serializers.IntegerField(required=False, min_value=1)
    horizon = serializers.FloatField(required=False, min_value=0.0)
    rho = serializers.FloatField(required=False, min_value=0.0)
    max_events = serializers.IntegerField(required=False, min_value=1)
    seed = serializers.IntegerField(required=False, min_value=0)
    decay = serializers.ListField(
        child=serializers.FloatField(min_value=0.0),
        required=False,
        allow_empty=False,
    )


def validated(
    serializer_class: type[serializers.Serializer],
    data: Any,
    error_class: type[HawkesValidationError] = HawkesValidationError,
    message: str = "Input validation failed",
    **details: Any,
) -> dict[str, Any]:
    """
    Run a serializer and return its validated data.

    Raises:
        error_class: With the serializer errors as details.
    """
    serializer = serializer_class(data=data)
    if not serializer.is_valid():
        raise error_class(message, details={**details, **serializer.errors})
    return dict(serializer.validated_data)
