"""
Rank entities for every agent of an events file.
"""

from apps.dataio.management.base import HawkesCommand
from apps.dataio.services import (
    read_checkpoint,
    read_event_file,
    write_recommendations,
)
from apps.recsys.services import recommend


class Command(HawkesCommand):
    help = "Write top-N recommendations by endogenous intensity."

    def add_arguments(self, parser):
        parser.add_argument("--checkpoint", required=True, help="Model checkpoint")
        parser.add_argument("--data", required=True, help="History events JSONL")
        parser.add_argument("--top", type=int, default=10, help="List length N")
        parser.add_argument(
            "--time", type=float, help="Ranking time; the file horizon by default"
        )
        parser.add_argument("--out", required=True, help="Recommendations CSV")

    def handle(self, *args, **options):
        params = read_checkpoint(options["checkpoint"])
        log = read_event_file(options["data"])
        t = log.horizon if options["time"] is None else options["time"]
        ranked = {
            seq.agent_id: recommend(
                params,
                seq,
                t,
                options["top"],
                agent=seq.agent_id if seq.agent_id < params.M else 0,
            )
            for seq in log.sequences
        }
        write_recommendations(options["out"], ranked)
        self.emit({"users": len(ranked), "N": options["top"], "time": t})
