"""
Recommendation services.

Endogenous-intensity ranking, top-N metrics and the cold-start harness.
"""

from apps.recsys.services.coldstart import (
    SUMMARY_COLUMNS,
    RecDataset,
    coldstart_split,
    read_ratings,
    recommend_all,
    select_k,
    summarize_categories,
    train_and_evaluate,
    train_and_recommend,
)
from apps.recsys.services.ranking import (
    RecResult,
    evaluate_topn,
    recommend,
    user_scores,
)

__all__ = [
    "SUMMARY_COLUMNS",
    "RecDataset",
    "RecResult",
    "coldstart_split",
    "evaluate_topn",
    "read_ratings",
    "recommend",
    "recommend_all",
    "select_k",
    "summarize_categories",
    "train_and_evaluate",
    "train_and_recommend",
    "user_scores",
]
