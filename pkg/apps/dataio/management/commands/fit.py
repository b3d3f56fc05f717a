"""
Learn model parameters from an events file.
"""

from dataclasses import replace

from apps.dataio.management.base import HawkesCommand
from apps.dataio.services import (
    read_checkpoint,
    read_event_file,
    write_checkpoint,
    write_report,
)
from apps.hawkes.exceptions import DimensionError
from apps.hawkes.kernels import KernelBasis
from apps.optimization.services import OptConfig
from apps.pipeline.serializers import STRATEGY_CHOICES, PipelineConfigSerializer
from apps.pipeline.services import PipelineConfig, run_strategy

# CLI flag -> OptConfig field
OPT_FLAGS = {
    "B": "batch_size",
    "J": "history_cap",
    "lambda0": "lambda0",
    "eta": "learning_rate",
    "epochs": "epochs",
    "seed": "seed",
}


class Command(HawkesCommand):
    help = "Fit a multi-agent Hawkes process with the chosen learning strategy."

    def add_arguments(self, parser):
        parser.add_argument("--data", required=True, help="Events JSONL")
        parser.add_argument(
            "--method", choices=STRATEGY_CHOICES, help="Learning strategy"
        )
        parser.add_argument("--K", type=int, dest="K", help="Largest folder size")
        parser.add_argument("--folders", type=int, help="Folder count M'")
        parser.add_argument("--B", type=int, dest="B", help="Events per step")
        parser.add_argument("--J", type=int, dest="J", help="History cap")
        parser.add_argument("--lambda0", type=float, help="Intensity offset")
        parser.add_argument("--eta", type=float, help="Learning rate")
        parser.add_argument("--epochs", type=int, help="Epochs per fit")
        parser.add_argument("--rounds", type=int, help="Superposition rounds")
        parser.add_argument("--seed", type=int, help="Random seed")
        parser.add_argument(
            "--decay", type=float, nargs="+", help="Exponential kernel rates"
        )
        parser.add_argument("--truth", help="Ground-truth checkpoint")
        parser.add_argument("--init", help="Checkpoint to start from")
        parser.add_argument("--config", help="JSON pipeline config")
        parser.add_argument("--out", required=True, help="Checkpoint output")
        parser.add_argument("--report", help="Per-epoch CSV output")

    def handle(self, *args, **options):
        log = read_event_file(options["data"])
        truth = read_checkpoint(options["truth"]) if options["truth"] else None
        init = read_checkpoint(options["init"]) if options["init"] else None
        if init is not None and (init.C, init.M) != (log.C, log.M):
            raise DimensionError(
                "Initial checkpoint does not match the data",
                details={"C": init.C, "M": init.M, "data_C": log.C, "data_M": log.M},
            )

        cfg = self._pipeline_config(options, log.C, truth, init)
        report = run_strategy(log.sequences, cfg, init)

        write_checkpoint(
            options["out"],
            report.params,
            seed=cfg.opt.seed,
            config=report.config,
            command="fit",
            strategy=cfg.strategy.value,
        )
        if options["report"]:
            write_report(options["report"], report)

        final = report.final
        self.emit(
            {
                "strategy": cfg.strategy.value,
                "epochs": len(report),
                "nll": final.nll if final else None,
                "err_A": final.err_A if final and truth is not None else None,
            }
        )

    def _pipeline_config(self, options, C, truth, init) -> PipelineConfig:
        """CLI flags over the config file over settings."""
        file_cfg = self.load_config(options["config"], PipelineConfigSerializer)
        opt_overrides = dict(file_cfg.pop("opt", {}))
        for flag, name in OPT_FLAGS.items():
            if options[flag] is not None:
                opt_overrides[name] = options[flag]
        keep_all_history = (
            "history_cap" in opt_overrides and opt_overrides["history_cap"] is None
        )
        opt = OptConfig.from_settings(**opt_overrides)
        if keep_all_history:
            opt = replace(opt, history_cap=None)

        overrides = {
            **file_cfg,
            "strategy": options["method"] or file_cfg.get("strategy"),
            "K": options["K"] or file_cfg.get("K"),
            "n_folders": options["folders"] or file_cfg.get("n_folders"),
            "outer_rounds": options["rounds"] or file_cfg.get("outer_rounds"),
        }
        if options["decay"]:
            overrides["basis"] = KernelBasis.exponential(options["decay"])
        elif init is not None:
            overrides["basis"] = init.basis
        elif truth is not None:
            overrides["basis"] = truth.basis
        return PipelineConfig.from_settings(opt=opt, truth=truth, C=C, **overrides)
