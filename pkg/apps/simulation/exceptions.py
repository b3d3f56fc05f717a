"""
Simulation exceptions with standardized error codes.
"""

from apps.hawkes.exceptions import HawkesError


class SimulationError(HawkesError):
    """Base simulation error."""

    error_code = "SIMULATION_ERROR"

    @property
    def default_message(self) -> str:
        return "Simulation failed"


class StationarityError(SimulationError):
    """Parameters describe an explosive (nonstationary) process."""

    error_code = "NONSTATIONARY_PARAMETERS"
    exit_code = 1

    @property
    def default_message(self) -> str:
        return "Branching matrix has spectral radius >= 1"


class SimConfigError(SimulationError):
    """Simulation configuration is invalid."""

    error_code = "VALIDATION_FAILED"
    exit_code = 1

    @property
    def default_message(self) -> str:
        return "Simulation configuration is invalid"
