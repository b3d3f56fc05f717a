"""
Simulation services module.

Exports the synthetic-protocol configuration and the branching simulator.
"""

from apps.simulation.services.simulator import (
    SimConfig,
    generate_params,
    planted_params,
    simulate_dataset,
    simulate_sequence,
    spawn_children,
)

__all__ = [
    "SimConfig",
    "generate_params",
    "planted_params",
    "simulate_dataset",
    "simulate_sequence",
    "spawn_children",
]
