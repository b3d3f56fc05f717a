"""
Build a cold-start recommendation dataset from raw ratings.
"""

from pathlib import Path

import pandas as pd

from apps.dataio.management.base import HawkesCommand
from apps.dataio.services import write_events, write_frame, write_truth_sets
from apps.pipeline.serializers import STRATEGY_CHOICES
from apps.pipeline.services import PipelineConfig
from apps.recsys.exceptions import EmptyDatasetError
from apps.recsys.services import coldstart_split, read_ratings, train_and_evaluate
from apps.recsys.services.coldstart import DAY_SECONDS


class Command(HawkesCommand):
    help = "Split ratings into cold-start train sequences and test truth sets."

    def add_arguments(self, parser):
        parser.add_argument("--ratings", required=True, help="Ratings CSV")
        parser.add_argument("--train-start", type=float, required=True)
        parser.add_argument("--split", type=float, required=True)
        parser.add_argument("--test-end", type=float, required=True)
        parser.add_argument("--out-dir", required=True, help="Output directory")
        parser.add_argument("--min-item-support", type=int, default=40)
        parser.add_argument("--max-train-events", type=int, default=5)
        parser.add_argument("--min-rating", type=float, default=4)
        parser.add_argument(
            "--time-scale",
            type=float,
            default=DAY_SECONDS,
            help="Raw time units per model time unit",
        )
        parser.add_argument(
            "--method",
            choices=STRATEGY_CHOICES,
            help="Also fit with this strategy and print top-N metrics",
        )
        parser.add_argument("--K", type=int, dest="K", help="Largest folder size")
        parser.add_argument("--top", type=int, nargs="+", default=[5, 10])

    def handle(self, *args, **options):
        dataset = coldstart_split(
            read_ratings(options["ratings"]),
            options["train_start"],
            options["split"],
            options["test_end"],
            min_item_support=options["min_item_support"],
            max_train_events=options["max_train_events"],
            min_rating=options["min_rating"],
            time_scale=options["time_scale"],
        )
        if dataset.is_empty:
            raise EmptyDatasetError(details={"ratings": options["ratings"]})

        out = Path(options["out_dir"])
        out.mkdir(parents=True, exist_ok=True)
        write_events(out / "train.jsonl", dataset.C, dataset.split_time, dataset.train)
        write_truth_sets(out / "test.json", dataset.test)
        write_frame(
            out / "users.csv",
            pd.DataFrame({"agent": range(dataset.M), "user_id": dataset.users}),
        )
        write_frame(
            out / "items.csv",
            pd.DataFrame({"entity": range(dataset.C), "item_id": dataset.items}),
        )

        payload = dataset.summary()
        if options["method"]:
            cfg = PipelineConfig.from_settings(
                strategy=options["method"], K=options["K"]
            )
            results = train_and_evaluate(dataset, cfg, options["top"])
            payload["metrics"] = [results[N].to_row() for N in sorted(results)]
        self.emit(payload)
