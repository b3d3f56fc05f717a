"""
Optimizer configuration serializers for JSON config validation.
"""

from rest_framework import serializers


class OptConfigSerializer(serializers.Serializer):
    """Optimizer overrides; omitted fields fall back to settings."""

    batch_size = serializers.IntegerField(
        required=False,
        min_value=1,
        help_text="Events per stochastic step (B)",
    )
    history_cap = serializers.IntegerField(
        required=False,
        allow_null=True,
        min_value=1,
        help_text="Most recent history events per feature (J); null keeps all",
    )
    lambda0 = serializers.FloatField(
        required=False,
        min_value=0.0,
        help_text="Intensity offset of the clamped gradient",
    )
    learning_rate = serializers.FloatField(
        required=False,
        min_value=0.0,
        help_text="Step size",
    )
    decay = serializers.BooleanField(
        required=False,
        help_text="Scale the step size by 1/sqrt(epoch)",
    )
    epochs = serializers.IntegerField(required=False, min_value=1)
    tol = serializers.FloatField(required=False, min_value=0.0)
    seed = serializers.IntegerField(required=False, min_value=0)
    holdout = serializers.FloatField(
        required=False,
        min_value=0.0,
        max_value=0.99,
        help_text="Fraction of events kept out of training for the per-epoch NLL",
    )

    def validate_lambda0(self, value):
        if value <= 0:
            raise serializers.ValidationError("lambda0 must be positive")
        return value
