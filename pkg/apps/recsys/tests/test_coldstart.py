"""
Unit tests for the cold-start harness.
"""

import pandas as pd
import pytest

from apps.hawkes.types import EventSequence
from apps.optimization.services import OptConfig
from apps.pipeline.services import PipelineConfig
from apps.recsys.exceptions import EmptyDatasetError, RecsysError
from apps.recsys.services import (
    SUMMARY_COLUMNS,
    RecDataset,
    coldstart_split,
    read_ratings,
    recommend_all,
    select_k,
    summarize_categories,
    train_and_evaluate,
)

DAY = 86400.0


def rating(user, item, day, stars=5):
    return {"user_id": user, "item_id": item, "timestamp": day * DAY, "rating": stars}


@pytest.fixture
def ratings():
    """
    Train window is days [0, 10), test window days [10, 20).

    Only "alice" qualifies: "bob" has six train purchases, "carol" no test
    purchase, "dave" a low rating and "erin" no train purchase.
    """
    rows = [
        rating("alice", "book", 1),
        rating("alice", "pen", 3),
        rating("alice", "lamp", 12),
        *[rating("bob", "book", d) for d in range(1, 7)],
        rating("bob", "pen", 11),
        rating("carol", "pen", 2),
        rating("carol", "lamp", 4),
        rating("dave", "book", 2),
        rating("dave", "pen", 5, stars=3),
        rating("dave", "lamp", 13),
        rating("erin", "lamp", 15),
        rating("alice", "mug", 25),
    ]
    return pd.DataFrame(rows)


def split(frame, **kwargs):
    return coldstart_split(frame, 0.0, 10 * DAY, 20 * DAY, min_item_support=0, **kwargs)


@pytest.fixture
def rec_dataset(small_data):
    return RecDataset(small_data, {0: frozenset({1}), 1: frozenset({0})}, 2, 5.0)


@pytest.fixture
def quick_cfg(exp_basis):
    return PipelineConfig(
        opt=OptConfig(batch_size=2, history_cap=3, epochs=2, seed=1),
        outer_rounds=1,
        basis=exp_basis,
    )


@pytest.mark.unit
class TestColdstartSplit:
    """Tests for coldstart_split."""

    def test_filters(self, ratings):
        dataset = split(ratings)

        assert dataset.users == ["alice"]
        assert dataset.items == ["book", "lamp", "pen"]
        assert dataset.C == 3
        assert dataset.split_time == 10.0
        assert dataset.train[0].times.tolist() == [1.0, 3.0]
        assert dataset.train[0].entities.tolist() == [0, 2]
        assert dataset.test == {0: frozenset({1})}

    def test_train_event_cap(self, ratings):
        dataset = split(ratings, max_train_events=6)

        assert dataset.users == ["alice", "bob"]

    def test_low_rating_threshold(self, ratings):
        dataset = split(ratings, min_rating=3)

        assert dataset.users == ["alice", "dave"]

    def test_item_support(self, ratings):
        dataset = coldstart_split(
            ratings, 0.0, 10 * DAY, 20 * DAY, min_item_support=4
        )

        # only "book" survives, and nobody bought it in the test window
        assert dataset.is_empty

    def test_no_user_qualifies(self, ratings):
        dataset = split(ratings[ratings["user_id"] == "bob"])

        assert dataset.is_empty
        assert dataset.C == 0
        assert dataset.summary() == {
            "users": 0,
            "items": 0,
            "train_events": 0,
            "test_events": 0,
        }

    def test_windows_out_of_order(self, ratings):
        with pytest.raises(RecsysError):
            coldstart_split(ratings, 10.0, 5.0, 20.0)

    def test_without_rating_column(self, ratings):
        dataset = split(ratings.drop(columns="rating"))

        assert dataset.users == ["alice", "dave"]


@pytest.mark.unit
class TestReadRatings:
    """Tests for read_ratings."""

    def test_reads_csv(self, tmp_path, ratings):
        path = tmp_path / "ratings.csv"
        ratings.to_csv(path, index=False)

        frame = read_ratings(path)

        assert list(frame.columns) == ["user_id", "item_id", "timestamp", "rating"]
        assert len(frame) == len(ratings)

    def test_missing_column(self, tmp_path, ratings):
        path = tmp_path / "ratings.csv"
        ratings.drop(columns="timestamp").to_csv(path, index=False)

        with pytest.raises(RecsysError) as exc_info:
            read_ratings(path)

        assert exc_info.value.details["missing"] == ["timestamp"]


@pytest.mark.unit
class TestTraining:
    """Tests for train_and_evaluate, recommend_all and select_k."""

    def test_train_and_evaluate_every_N(self, rec_dataset, quick_cfg):
        results = train_and_evaluate(rec_dataset, quick_cfg, tops=(1, 2))

        assert sorted(results) == [1, 2]
        # two entities, so every top-2 list holds the one test purchase
        assert results[2].recall == 100.0
        assert results[2].precision == 50.0

    def test_empty_dataset(self, quick_cfg):
        with pytest.raises(EmptyDatasetError):
            train_and_evaluate(RecDataset([], {}, 0, 1.0), quick_cfg)

    def test_recommend_all_falls_back_to_first_agent(self, small_params):
        cold = RecDataset([EventSequence.empty(m, 5.0) for m in range(3)], {}, 2, 5.0)

        ranked = recommend_all(small_params, cold, N=2)

        assert ranked == {0: [0, 1], 1: [1, 0], 2: [0, 1]}

    def test_select_k_ties_go_to_smaller_K(self, rec_dataset, quick_cfg):
        best, results = select_k(rec_dataset, quick_cfg, ks=(1, 2, 4), N=2)

        assert sorted(results) == [1, 2]
        assert best == 1

    def test_select_k_needs_a_fitting_K(self, rec_dataset, quick_cfg):
        with pytest.raises(EmptyDatasetError):
            select_k(rec_dataset, quick_cfg, ks=(8,))


@pytest.mark.unit
class TestSummarizeCategories:
    """Tests for summarize_categories."""

    def test_overall_macro_average(self):
        rows = [
            {"category": "Books", "precision": 10.0, "recall": 20.0, "f1": 12.0},
            {"category": "Toys", "precision": 30.0, "recall": 40.0, "f1": 34.0},
        ]
        users = {"Books": 10, "Toys": 30}
        rows = [
            {**row, "method": "StocOpt", "N": 5, "users": users[row["category"]]}
            for row in rows
        ]

        summary = summarize_categories(rows)

        overall = summary[summary["category"] == "Overall"].iloc[0]
        assert list(summary.columns) == SUMMARY_COLUMNS
        assert len(summary) == 3
        assert overall["users"] == 40
        assert overall["precision"] == pytest.approx(20.0)
        assert overall["f1"] == pytest.approx(23.0)

    def test_empty(self):
        assert list(summarize_categories([]).columns) == SUMMARY_COLUMNS
