"""
Score recommendation lists against truth sets.
"""

from apps.dataio.management.base import HawkesCommand
from apps.dataio.services import read_recommendations, read_truth_sets
from apps.recsys.services import evaluate_topn


class Command(HawkesCommand):
    help = "Print macro-averaged precision, recall and F1 at N (percent)."

    def add_arguments(self, parser):
        parser.add_argument("--results", required=True, help="Recommendations CSV")
        parser.add_argument("--truth", required=True, help="Truth sets JSON")
        parser.add_argument("--top", type=int, default=10, help="Cut-off N")

    def handle(self, *args, **options):
        result = evaluate_topn(
            read_recommendations(options["results"]),
            read_truth_sets(options["truth"]),
            options["top"],
        )
        self.emit({**result.to_row(), "excluded": result.excluded})
