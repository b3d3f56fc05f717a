"""
Superposition services.

Sequence merging, K-nonaugmented plans (random and diversity-driven) and the
risk-bound tightening check.
"""

from apps.superposition.services.bound import (
    BoundCheck,
    RiskBoundInputs,
    bound_inputs_from_estimates,
    check_tightening,
)
from apps.superposition.services.merge import (
    estimate_exogenous,
    exogenous_estimates,
    merge_sequences,
    orthogonality_gram,
)
from apps.superposition.services.plans import (
    SuperpositionPlan,
    apply_plan,
    diversity_plan,
    diversity_weights,
    folder_count,
    folder_sizes,
    plan_matrix,
    random_plan,
    superposed_params,
)

__all__ = [
    "BoundCheck",
    "RiskBoundInputs",
    "SuperpositionPlan",
    "apply_plan",
    "bound_inputs_from_estimates",
    "check_tightening",
    "diversity_plan",
    "diversity_weights",
    "estimate_exogenous",
    "exogenous_estimates",
    "folder_count",
    "folder_sizes",
    "merge_sequences",
    "orthogonality_gram",
    "plan_matrix",
    "random_plan",
    "superposed_params",
]
