"""
Cold-start recommendation harness.

Raw ratings (user_id, item_id, timestamp, optional rating) are cut into a
train window and a test window. Users with a handful of highly rated train
purchases and at least one test purchase are kept; their train purchases
become event sequences and their test purchases the truth sets.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

import pandas as pd

from apps.hawkes.types import EventSequence, ModelParams
from apps.pipeline.services import PipelineConfig, Strategy, run_strategy
from apps.recsys.exceptions import EmptyDatasetError, RecsysError
from apps.recsys.services.ranking import RecResult, evaluate_topn, recommend

logger = logging.getLogger(__name__)

RATING_COLUMNS = ["user_id", "item_id", "timestamp", "rating"]
SUMMARY_COLUMNS = ["category", "method", "N", "users", "precision", "recall", "f1"]
OVERALL = "Overall"
DAY_SECONDS = 86400.0


@dataclass(frozen=True, eq=False)
class RecDataset:
    """
    Train sequences and test truth sets of the retained users.

    Attributes:
        train: One sequence per user on [0, split_time], agent ids 0..M-1.
        test: Entities each user bought in the test window.
        C: Catalog size.
        split_time: End of the train window in model time.
        users: Raw user id of every agent index.
        items: Raw item id of every entity index.
    """

    train: list[EventSequence]
    test: dict[int, frozenset[int]]
    C: int
    split_time: float
    users: list = field(default_factory=list)
    items: list = field(default_factory=list)

    @property
    def M(self) -> int:
        return len(self.train)

    @property
    def is_empty(self) -> bool:
        return not self.train

    def summary(self) -> dict[str, int]:
        return {
            "users": self.M,
            "items": self.C,
            "train_events": sum(len(s) for s in self.train),
            "test_events": sum(len(t) for t in self.test.values()),
        }


def read_ratings(path: str | Path) -> pd.DataFrame:
    """
    Load a ratings CSV with columns user_id, item_id, timestamp and an
    optional rating.

    Raises:
        RecsysError: If a required column is missing.
    """
    frame = pd.read_csv(path)
    missing = [c for c in RATING_COLUMNS[:3] if c not in frame.columns]
    if missing:
        raise RecsysError(
            "Ratings file lacks required columns",
            details={"path": str(path), "missing": missing},
        )
    columns = [c for c in RATING_COLUMNS if c in frame.columns]
    frame = frame[columns].copy()
    frame["timestamp"] = frame["timestamp"].astype(float)
    logger.info(f"Read {len(frame)} ratings from {path}")
    return frame


def coldstart_split(
    ratings: pd.DataFrame,
    train_start: float,
    split: float,
    test_end: float,
    min_item_support: int = 40,
    max_train_events: int = 5,
    min_train_events: int = 1,
    min_rating: float = 4,
    time_scale: float = DAY_SECONDS,
) -> RecDataset:
    """
    Build a cold-start dataset.

    Items rated more than `min_item_support` times are kept. A user is kept
    when the train window [train_start, split) holds between
    `min_train_events` and `max_train_events` of their purchases, all rated
    at least `min_rating` (when ratings exist), and the test window
    [split, test_end) holds at least one. Times are rescaled by `time_scale`.

    Returns:
        The dataset; empty, with a warning, when no user qualifies.
    """
    if not train_start < split < test_end:
        raise RecsysError(
            "Windows must satisfy train_start < split < test_end",
            details={
                "train_start": train_start,
                "split": split,
                "test_end": test_end,
            },
        )
    split_time = (split - train_start) / time_scale

    support = ratings.groupby("item_id")["item_id"].transform("size")
    frame = ratings[support > min_item_support]
    frame = frame.drop_duplicates(["user_id", "item_id", "timestamp"])
    train = frame[(frame["timestamp"] >= train_start) & (frame["timestamp"] < split)]
    test = frame[(frame["timestamp"] >= split) & (frame["timestamp"] < test_end)]

    counts = train.groupby("user_id").size()
    in_range = (counts >= min_train_events) & (counts <= max_train_events)
    keep = set(counts[in_range].index)
    if "rating" in train.columns:
        low = train.loc[train["rating"] < min_rating, "user_id"]
        keep -= set(low)
    keep &= set(test["user_id"])

    users = sorted(keep)
    train = train[train["user_id"].isin(keep)]
    test = test[test["user_id"].isin(keep)]
    items = sorted(set(train["item_id"]) | set(test["item_id"]))
    if not users:
        logger.warning("No users satisfy the cold-start filters")
        return RecDataset([], {}, 0, split_time)

    user_index = {u: m for m, u in enumerate(users)}
    item_index = {i: c for c, i in enumerate(items)}
    sequences = []
    for user, rows in train.sort_values(["user_id", "timestamp"]).groupby("user_id"):
        times = (rows["timestamp"].to_numpy() - train_start) / time_scale
        entities = rows["item_id"].map(item_index).to_numpy()
        sequences.append(
            EventSequence.from_events(
                user_index[user], zip(times, entities), split_time
            )
        )
    truth = {
        user_index[user]: frozenset(rows["item_id"].map(item_index))
        for user, rows in test.groupby("user_id")
    }
    dataset = RecDataset(
        sorted(sequences, key=lambda s: s.agent_id),
        truth,
        len(items),
        split_time,
        users,
        items,
    )
    logger.info(f"Cold-start dataset: {dataset.summary()}")
    return dataset


def recommend_all(
    params: ModelParams, dataset: RecDataset, N: int
) -> dict[int, list[int]]:
    """Top-N list of every user at the split time."""
    return {
        seq.agent_id: recommend(
            params,
            seq,
            dataset.split_time,
            N,
            agent=seq.agent_id if seq.agent_id < params.M else 0,
        )
        for seq in dataset.train
    }


def train_and_evaluate(
    dataset: RecDataset, cfg: PipelineConfig, tops: Iterable[int] = (5, 10)
) -> dict[int, RecResult]:
    """Fit once, then evaluate top-N lists for every N."""
    if dataset.is_empty:
        raise EmptyDatasetError()
    report = run_strategy(dataset.train, replace(cfg, C=dataset.C))
    tops = sorted(set(tops))
    ranked = recommend_all(report.params, dataset, max(tops))
    return {N: evaluate_topn(ranked, dataset.test, N) for N in tops}


def train_and_recommend(
    dataset: RecDataset, cfg: PipelineConfig, N: int = 5
) -> RecResult:
    return train_and_evaluate(dataset, cfg, (N,))[N]


def select_k(
    dataset: RecDataset,
    cfg: PipelineConfig,
    ks: Sequence[int] = (1, 2, 4, 8),
    N: int = 5,
) -> tuple[int, dict[int, RecResult]]:
    """
    Best superposition K by F1@N; ties go to the smaller K.

    K values larger than the user count are skipped.
    """
    results = {}
    for K in sorted(set(ks)):
        if K > max(dataset.M, 1):
            logger.warning(f"Skipping K={K} for {dataset.M} users")
            continue
        run = replace(cfg, strategy=Strategy.SUPERPOSE, K=K, n_folders=None)
        results[K] = train_and_recommend(dataset, run, N)
        logger.info(f"K={K}: F1@{N}={results[K].f1:.4f}")
    if not results:
        raise EmptyDatasetError("No K value fits the dataset")
    best = max(results, key=lambda k: (results[k].f1, -k))
    return best, results


def summarize_categories(rows: Iterable[dict] | pd.DataFrame) -> pd.DataFrame:
    """
    Per-category metric rows plus an "Overall" macro-average over categories
    for every (method, N).
    """
    frame = pd.DataFrame(rows)
    if frame.empty:
        return pd.DataFrame(columns=SUMMARY_COLUMNS)
    frame = frame[SUMMARY_COLUMNS]
    overall = (
        frame.groupby(["method", "N"], sort=False)
        .agg(
            users=("users", "sum"),
            precision=("precision", "mean"),
            recall=("recall", "mean"),
            f1=("f1", "mean"),
        )
        .reset_index()
    )
    overall.insert(0, "category", OVERALL)
    return pd.concat([frame, overall[SUMMARY_COLUMNS]], ignore_index=True)
