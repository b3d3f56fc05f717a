"""
Pipeline serializers for run configs and sweep specs.
"""

from rest_framework import serializers

from apps.optimization.serializers import OptConfigSerializer
from apps.pipeline.services import Strategy

STRATEGY_CHOICES = [s.value for s in Strategy] + [
    "batch",
    "stoc",
    "augment",
    "superpose",
    "single",
]


class PipelineConfigSerializer(serializers.Serializer):
    """A `fit --config` file: optimizer and pipeline overrides."""

    opt = OptConfigSerializer(required=False)
    strategy = serializers.ChoiceField(choices=STRATEGY_CHOICES, required=False)
    K = serializers.IntegerField(required=False, min_value=1)
    n_folders = serializers.IntegerField(required=False, min_value=1)
    outer_rounds = serializers.IntegerField(required=False, min_value=1)
    round_tol = serializers.FloatField(required=False, min_value=0.0)
    stage_epochs = serializers.IntegerField(required=False, min_value=1)


class SimSerializer(serializers.Serializer):
    """Synthetic protocol overrides."""

    C = serializers.IntegerField(required=False, min_value=1)
    M = serializers.IntegerField(required=False, min_value=1)
    horizon = serializers.FloatField(required=False, min_value=0.0)
    rho = serializers.FloatField(required=False, min_value=0.0)
    max_events = serializers.IntegerField(required=False, min_value=1)
    decay = serializers.ListField(
        child=serializers.FloatField(min_value=0.0),
        required=False,
        allow_empty=False,
        help_text="Exponential decay rates of the kernel basis",
    )


class SweepSpecSerializer(serializers.Serializer):
    """Experiment grid of the `sweep` command."""

    strategies = serializers.ListField(
        child=serializers.ChoiceField(choices=STRATEGY_CHOICES),
        required=False,
        allow_empty=False,
    )
    Ks = serializers.ListField(
        child=serializers.IntegerField(min_value=1), required=False
    )
    seeds = serializers.ListField(
        child=serializers.IntegerField(min_value=0),
        required=False,
        allow_empty=False,
    )
    sim = SimSerializer(required=False)
    opt = OptConfigSerializer(required=False)
    outer_rounds = serializers.IntegerField(required=False, min_value=1)
    round_tol = serializers.FloatField(required=False, min_value=0.0)
    stage_epochs = serializers.IntegerField(required=False, min_value=1)
    equal_budget = serializers.BooleanField(required=False)
