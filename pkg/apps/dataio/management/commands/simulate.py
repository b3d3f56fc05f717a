"""
Simulate a synthetic multi-agent dataset.
"""

from apps.dataio.management.base import HawkesCommand
from apps.dataio.serializers import SimConfigSerializer
from apps.dataio.services import write_checkpoint, write_events
from apps.hawkes.kernels import KernelBasis
from apps.simulation.services import SimConfig, simulate_dataset


class Command(HawkesCommand):
    help = "Simulate event sequences by branching and write events JSONL."

    def add_arguments(self, parser):
        parser.add_argument("--config", help="JSON file of SimConfig overrides")
        parser.add_argument("--out", required=True, help="Events JSONL output")
        parser.add_argument("--truth-out", help="Ground-truth checkpoint output")
        parser.add_argument("--seed", type=int, help="Random seed")

    def handle(self, *args, **options):
        overrides = self.load_config(options["config"], SimConfigSerializer)
        decay = overrides.pop("decay", None)
        if decay is not None:
            overrides["basis"] = KernelBasis.exponential(decay)
        if options["seed"] is not None:
            overrides["seed"] = options["seed"]
        cfg = SimConfig.from_settings(**overrides)

        truth, data = simulate_dataset(cfg)
        write_events(options["out"], cfg.C, cfg.horizon, data)
        if options["truth_out"]:
            write_checkpoint(
                options["truth_out"],
                truth,
                seed=cfg.seed,
                config={**overrides, "basis": cfg.basis.to_dict()},
                command="simulate",
            )
        self.emit(
            {
                "agents": cfg.M,
                "entities": cfg.C,
                "events": sum(len(s) for s in data),
                "seed": cfg.seed,
            }
        )
