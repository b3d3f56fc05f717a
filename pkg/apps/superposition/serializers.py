"""
Superposition serializers for plan files and risk-bound requests.
"""

from rest_framework import serializers


class PlanSerializer(serializers.Serializer):
    """A plan file: one list of source agents per folder."""

    folders = serializers.ListField(
        child=serializers.ListField(
            child=serializers.IntegerField(min_value=0),
            allow_empty=False,
        ),
        allow_empty=False,
        help_text="Source agent indices of every folder",
    )


class RiskBoundSerializer(serializers.Serializer):
    """Inputs of the tightening condition."""

    U0 = serializers.FloatField(help_text="Bound on the squared norm of U")
    A0 = serializers.FloatField(help_text="Bound on the squared norm of A")
    U0_prime = serializers.FloatField(
        help_text="Bound on the squared norm of the superposed U"
    )
    M = serializers.IntegerField(min_value=1)
    M_prime = serializers.IntegerField(min_value=1)
    C = serializers.IntegerField(min_value=1)
    L = serializers.IntegerField(min_value=1)
    n_events = serializers.IntegerField(min_value=2)
    delta = serializers.FloatField(help_text="Confidence level in (0, 0.5)")

    def validate(self, attrs):
        for name in ("U0", "A0", "U0_prime"):
            if attrs[name] <= 0:
                raise serializers.ValidationError({name: "must be positive"})
        if not 0 < attrs["delta"] < 0.5:
            raise serializers.ValidationError({"delta": "must lie in (0, 0.5)"})
        return attrs
