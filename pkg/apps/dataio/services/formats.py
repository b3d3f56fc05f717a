"""
On-disk formats.

- Events: JSONL. A header line {"C", "T", "M"} followed by one
  {"agent", "time", "entity"} object per event.
- Checkpoints, plans and truth sets: JSON.
- Reports and recommendations: CSV, floats at 17 significant digits.

Floats in JSON use Python's shortest round-trip representation, so every
64-bit value reads back exactly.
"""

from __future__ import annotations

import hashlib
import json
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np
import pandas as pd
from django.conf import settings

from apps.dataio.exceptions import (
    CheckpointValidationError,
    CheckpointVersionError,
    DataFormatError,
)
from apps.dataio.serializers import (
    CheckpointSerializer,
    EventHeaderSerializer,
    EventSerializer,
    validated,
)
from apps.hawkes.exceptions import HawkesError
from apps.hawkes.kernels import KernelBasis
from apps.hawkes.types import EventSequence, ModelParams
from apps.optimization.services import FitReport
from apps.superposition.serializers import PlanSerializer
from apps.superposition.services import SuperpositionPlan

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
RECOMMENDATION_COLUMNS = ["user", "rank", "entity"]


def schema_version() -> int:
    return int(getattr(settings, "HAWKES_CHECKPOINT_SCHEMA_VERSION", 1))


def wallclock_enabled() -> bool:
    return bool(getattr(settings, "HAWKES_WALLCLOCK_IN_OUTPUTS", False))


def config_hash(config: Mapping[str, Any]) -> str:
    """SHA-256 of the canonical JSON form of a config."""
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _dump_json(path: str | Path, payload: Any) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _load_json(path: str | Path) -> Any:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataFormatError(
            f"Invalid JSON in {path}",
            details={"path": str(path), "line": exc.lineno, "reason": exc.msg},
        ) from exc


# ----------------------------------------------------------------------
# Events
# ----------------------------------------------------------------------


@dataclass
class EventLog:
    """Contents of an events file."""

    C: int
    horizon: float
    sequences: list[EventSequence] = field(default_factory=list)

    @property
    def M(self) -> int:
        return len(self.sequences)

    @property
    def n_events(self) -> int:
        return sum(len(s) for s in self.sequences)


def write_events(
    path: str | Path, C: int, T: float, sequences: Sequence[EventSequence]
) -> None:
    """Write a header and every event, agents in order."""
    ordered = sorted(sequences, key=lambda s: s.agent_id)
    M = ordered[-1].agent_id + 1 if ordered else 0
    lines = [json.dumps({"C": int(C), "T": float(T), "M": int(M)})]
    for seq in ordered:
        if seq.horizon != float(T):
            raise DataFormatError(
                "Sequence horizon differs from the file horizon",
                details={"agent": int(seq.agent_id), "T": float(T)},
            )
        for t, c in zip(seq.times, seq.entities):
            lines.append(
                json.dumps(
                    {"agent": int(seq.agent_id), "time": float(t), "entity": int(c)}
                )
            )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    logger.info(f"Wrote {len(lines) - 1} events of {M} agents to {path}")


def read_event_file(path: str | Path) -> EventLog:
    """
    Parse an events file.

    Agents without events up to the header's M (or the largest agent seen)
    get empty sequences, so agent ids are always 0..M-1.

    Raises:
        DataFormatError: On a malformed line, naming its line number.
    """
    with Path(path).open(encoding="utf-8") as handle:
        lines = [(n, line.strip()) for n, line in enumerate(handle, start=1)]
    lines = [(n, line) for n, line in lines if line]
    if not lines:
        raise DataFormatError("Events file has no header", details={"path": str(path)})

    header_line, header_text = lines[0]
    header = validated(
        EventHeaderSerializer,
        _parse_line(path, header_line, header_text),
        DataFormatError,
        "Invalid events header",
        path=str(path),
        line=header_line,
    )
    C, T = header["C"], header["T"]

    grouped: dict[int, list[tuple[float, int]]] = defaultdict(list)
    for n, text in lines[1:]:
        event = validated(
            EventSerializer,
            _parse_line(path, n, text),
            DataFormatError,
            f"Invalid event on line {n}",
            path=str(path),
            line=n,
        )
        if event["time"] > T:
            raise DataFormatError(
                f"Event time exceeds T on line {n}",
                details={"path": str(path), "line": n, "time": event["time"], "T": T},
            )
        if event["entity"] >= C:
            raise DataFormatError(
                f"Entity outside [0, C) on line {n}",
                details={"path": str(path), "line": n, "entity": event["entity"]},
            )
        grouped[event["agent"]].append((event["time"], event["entity"]))

    M = header.get("M", max(grouped, default=-1) + 1)
    if grouped and max(grouped) >= M:
        raise DataFormatError(
            "Agent outside [0, M)", details={"path": str(path), "M": M}
        )
    sequences = []
    for m in range(M):
        try:
            sequences.append(EventSequence.from_events(m, grouped.get(m, []), T))
        except HawkesError as exc:
            raise DataFormatError(
                exc.message, details={**exc.details, "path": str(path)}
            ) from exc
    log = EventLog(C, T, sequences)
    logger.info(f"Read {log.n_events} events of {log.M} agents from {path}")
    return log


def read_events(path: str | Path) -> list[EventSequence]:
    return read_event_file(path).sequences


def _parse_line(path: str | Path, n: int, text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataFormatError(
            f"Malformed JSON on line {n}",
            details={"path": str(path), "line": n, "reason": exc.msg},
        ) from exc


# ----------------------------------------------------------------------
# Checkpoints
# ----------------------------------------------------------------------


@dataclass
class Checkpoint:
    params: ModelParams
    provenance: dict[str, Any] = field(default_factory=dict)
    schema_version: int = 1


def write_checkpoint(
    path: str | Path,
    params: ModelParams,
    seed: int | None = None,
    config: Mapping[str, Any] | None = None,
    **provenance: Any,
) -> None:
    """
    Write parameters with provenance (seed, config hash). A UTC timestamp
    is added only when wall-clock outputs are enabled.
    """
    record = {"seed": seed, "config_hash": config_hash(config or {}), **provenance}
    if wallclock_enabled():
        record["timestamp"] = datetime.now(timezone.utc).isoformat()
    payload = {
        "schema_version": schema_version(),
        "C": params.C,
        "M": params.M,
        "L": params.L,
        "kernel": params.basis.to_dict(),
        "U": params.U.ravel().tolist(),
        "A": params.A.ravel().tolist(),
        "provenance": record,
    }
    _dump_json(path, payload)
    logger.info(f"Wrote checkpoint C={params.C} M={params.M} L={params.L} to {path}")


def load_checkpoint(path: str | Path) -> Checkpoint:
    """
    Raises:
        DataFormatError: If the file is not valid JSON.
        CheckpointVersionError: If the schema version is not the current one.
        CheckpointValidationError: If arrays disagree with the dimensions.
    """
    raw = _load_json(path)
    version = raw.get("schema_version") if isinstance(raw, dict) else None
    if version != schema_version():
        raise CheckpointVersionError(
            details={"path": str(path), "found": version, "expected": schema_version()}
        )
    data = validated(
        CheckpointSerializer,
        raw,
        CheckpointValidationError,
        "Invalid checkpoint",
        path=str(path),
    )
    C, M, L = data["C"], data["M"], data["L"]
    if len(data["U"]) != C * M or len(data["A"]) != C * C * L:
        raise CheckpointValidationError(
            "Array lengths do not match C·M and C·C·L",
            details={
                "path": str(path),
                "U": len(data["U"]),
                "A": len(data["A"]),
                "C": C,
                "M": M,
                "L": L,
            },
        )
    try:
        basis = KernelBasis.from_dict(data["kernel"])
        if basis.L != L:
            raise CheckpointValidationError("Kernel count differs from L")
        params = ModelParams(
            np.array(data["U"]).reshape(C, M),
            np.array(data["A"]).reshape(C, C, L),
            basis,
        )
    except CheckpointValidationError:
        raise
    except HawkesError as exc:
        raise CheckpointValidationError(
            exc.message, details={**exc.details, "path": str(path)}
        ) from exc
    return Checkpoint(params, dict(data["provenance"]), version)


def read_checkpoint(path: str | Path) -> ModelParams:
    return load_checkpoint(path).params


# ----------------------------------------------------------------------
# Plans, reports, recommendations
# ----------------------------------------------------------------------


def write_plan(path: str | Path, plan: SuperpositionPlan) -> None:
    _dump_json(path, plan.to_json())


def read_plan(path: str | Path) -> SuperpositionPlan:
    folders = validated(
        PlanSerializer,
        {"folders": _load_json(path)},
        DataFormatError,
        "Invalid plan file",
        path=str(path),
    )["folders"]
    return SuperpositionPlan.from_json(folders)


def report_frame(report: FitReport) -> pd.DataFrame:
    """Report rows, without measured seconds unless wall-clock outputs are on."""
    frame = report.to_frame()
    return frame if wallclock_enabled() else frame.drop(columns=["seconds"])


def write_frame(path: str | Path, frame: pd.DataFrame) -> None:
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="nan")


def write_report(path: str | Path, report: FitReport) -> None:
    write_frame(path, report_frame(report))
    logger.info(f"Wrote {len(report)} epoch records to {path}")


def write_recommendations(
    path: str | Path, ranked: Mapping[int, Sequence[int]]
) -> None:
    rows = [
        {"user": int(user), "rank": rank, "entity": int(entity)}
        for user in sorted(ranked)
        for rank, entity in enumerate(ranked[user], start=1)
    ]
    pd.DataFrame(rows, columns=RECOMMENDATION_COLUMNS).to_csv(path, index=False)


def read_recommendations(path: str | Path) -> dict[int, list[int]]:
    frame = pd.read_csv(path)
    missing = [c for c in RECOMMENDATION_COLUMNS if c not in frame.columns]
    if missing:
        raise DataFormatError(
            "Recommendations file lacks columns",
            details={"path": str(path), "missing": missing},
        )
    frame = frame.sort_values(["user", "rank"], kind="stable")
    return {
        int(user): [int(c) for c in rows["entity"]]
        for user, rows in frame.groupby("user", sort=True)
    }


def write_truth_sets(path: str | Path, truth: Mapping[int, Any]) -> None:
    _dump_json(path, {str(u): sorted(int(c) for c in truth[u]) for u in sorted(truth)})


def read_truth_sets(path: str | Path) -> dict[int, frozenset[int]]:
    raw = _load_json(path)
    if not isinstance(raw, dict):
        raise DataFormatError(
            "Truth file must map users to entity lists", details={"path": str(path)}
        )
    try:
        return {int(u): frozenset(int(c) for c in items) for u, items in raw.items()}
    except (TypeError, ValueError) as exc:
        raise DataFormatError(
            "Truth file must map users to entity lists",
            details={"path": str(path), "reason": str(exc)},
        ) from exc
