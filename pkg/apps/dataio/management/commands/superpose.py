"""
Superpose agents' sequences into folders.
"""

from apps.dataio.management.base import HawkesCommand
from apps.dataio.services import (
    read_checkpoint,
    read_event_file,
    write_events,
    write_plan,
)
from apps.superposition.services import apply_plan, diversity_plan, random_plan


class Command(HawkesCommand):
    help = "Merge M agents into M' folders and write the folder sequences."

    def add_arguments(self, parser):
        parser.add_argument("--data", required=True, help="Events JSONL")
        parser.add_argument("--folders", type=int, required=True, help="Folders M'")
        parser.add_argument("--seed", type=int, default=0, help="Random seed")
        parser.add_argument("--out", required=True, help="Merged events JSONL")
        parser.add_argument("--plan-out", help="Plan JSON output")
        parser.add_argument(
            "--random",
            action="store_true",
            help="Uniform random plan instead of the diversity-driven one",
        )
        parser.add_argument(
            "--checkpoint",
            help="Take exogenous estimates from this checkpoint's U",
        )

    def handle(self, *args, **options):
        log = read_event_file(options["data"])
        if options["random"]:
            plan = random_plan(log.M, options["folders"], options["seed"])
            merged = apply_plan(log.sequences, plan)
        else:
            estimates = None
            if options["checkpoint"]:
                estimates = read_checkpoint(options["checkpoint"]).U
            plan, merged = diversity_plan(
                log.sequences,
                options["folders"],
                seed=options["seed"],
                estimates=estimates,
                C=log.C,
            )

        write_events(options["out"], log.C, log.horizon, merged)
        if options["plan_out"]:
            write_plan(options["plan_out"], plan)
        self.emit({"M": plan.M, "folders": plan.n_folders, "K": plan.K})
