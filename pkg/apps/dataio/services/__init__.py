"""
Data IO services: events, checkpoints, plans, reports and recommendations.
"""

from apps.dataio.services.formats import (
    Checkpoint,
    EventLog,
    config_hash,
    load_checkpoint,
    read_checkpoint,
    read_event_file,
    read_events,
    read_plan,
    read_recommendations,
    read_truth_sets,
    report_frame,
    wallclock_enabled,
    write_checkpoint,
    write_events,
    write_frame,
    write_plan,
    write_recommendations,
    write_report,
    write_truth_sets,
)

__all__ = [
    "Checkpoint",
    "EventLog",
    "config_hash",
    "load_checkpoint",
    "read_checkpoint",
    "read_event_file",
    "read_events",
    "read_plan",
    "read_recommendations",
    "read_truth_sets",
    "report_frame",
    "wallclock_enabled",
    "write_checkpoint",
    "write_events",
    "write_frame",
    "write_plan",
    "write_recommendations",
    "write_report",
    "write_truth_sets",
]
