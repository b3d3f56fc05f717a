"""
Evaluate the risk-bound tightening condition of a superposition.
"""

from django.core.management.base import CommandError

from apps.dataio.management.base import HawkesCommand
from apps.dataio.serializers import validated
from apps.dataio.services import read_checkpoint, read_plan
from apps.superposition.serializers import RiskBoundSerializer
from apps.superposition.services import (
    RiskBoundInputs,
    bound_inputs_from_estimates,
    check_tightening,
)


class Command(HawkesCommand):
    help = "Check whether superposing M agents into M' folders tightens the bound."

    def add_arguments(self, parser):
        parser.add_argument("--u0", type=float, help="Bound on the squared norm of U")
        parser.add_argument("--a0", type=float, help="Bound on the squared norm of A")
        parser.add_argument("--u0p", type=float, help="Bound for the superposed U")
        parser.add_argument("--M", type=int, dest="M", help="Source agents")
        parser.add_argument("--Mp", type=int, dest="M_prime", help="Folders")
        parser.add_argument("--C", type=int, dest="C", help="Entities")
        parser.add_argument("--L", type=int, dest="L", help="Kernels")
        parser.add_argument("--events", type=int, help="Total event count")
        parser.add_argument("--delta", type=float, default=0.1, help="Confidence")
        parser.add_argument(
            "--checkpoint", help="Derive missing bounds from these estimates"
        )
        parser.add_argument("--plan", help="Plan file used with --checkpoint")

    def handle(self, *args, **options):
        if options["checkpoint"]:
            inputs = self._from_estimates(options)
        else:
            data = validated(
                RiskBoundSerializer,
                {
                    "U0": options["u0"],
                    "A0": options["a0"],
                    "U0_prime": options["u0p"],
                    "M": options["M"],
                    "M_prime": options["M_prime"],
                    "C": options["C"],
                    "L": options["L"],
                    "n_events": options["events"],
                    "delta": options["delta"],
                },
            )
            inputs = RiskBoundInputs(**data)

        result = check_tightening(inputs)
        self.stdout.write(
            f"holds={str(result.holds).lower()} lhs={result.lhs!r} rhs={result.rhs!r}"
        )

    def _from_estimates(self, options) -> RiskBoundInputs:
        if not options["plan"] or options["events"] is None:
            raise CommandError("--checkpoint needs --plan and --events")
        return bound_inputs_from_estimates(
            read_checkpoint(options["checkpoint"]),
            read_plan(options["plan"]),
            options["events"],
            delta=options["delta"],
            U0=options["u0"],
            A0=options["a0"],
        )
