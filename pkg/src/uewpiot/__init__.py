"""UAV-powered IoT toolkit: link budgets, tour planning, mission simulation."""

from .errors import (
    CapabilityError,
    ConfigurationError,
    GeometryError,
    InfeasibilityError,
    UewpiotError,
)
from .linkbudget import (
    AntennaArray,
    EhCircuit,
    LinkGeometry,
    RadioEnvironment,
    achievable_data_rate_bps,
    achievable_eh_distance_m,
    array_gain_db,
    eh_input_threshold_dbm,
    expected_path_loss_db,
    free_space_path_loss_db,
    harvested_power_dbm,
    los_probability,
    noise_power_dbm,
    received_power_dbm,
    shannon_rate_bps,
    upa_physical_size_m,
    wavelength_m,
)
from .missionsim import (
    MissionReport,
    MissionScenario,
    PhaseSchedule,
    TdmaSlot,
    optimize_powering,
    powering_phase,
    required_tx,
    simulate_mission,
    tdma_schedule,
    wake_up,
)
from .planner import (
    NodeField,
    StrategyComparison,
    TourPlan,
    WpcGroup,
    compare_strategies,
    coverage_radius_m,
    form_wpc_groups,
    generate_nodes,
    plan_tour,
    tour_length_m,
)

__version__ = "0.1.0"

__all__ = [
    "AntennaArray",
    "CapabilityError",
    "ConfigurationError",
    "EhCircuit",
    "GeometryError",
    "InfeasibilityError",
    "LinkGeometry",
    "MissionReport",
    "MissionScenario",
    "NodeField",
    "PhaseSchedule",
    "RadioEnvironment",
    "StrategyComparison",
    "TdmaSlot",
    "TourPlan",
    "UewpiotError",
    "WpcGroup",
    "achievable_data_rate_bps",
    "achievable_eh_distance_m",
    "array_gain_db",
    "compare_strategies",
    "coverage_radius_m",
    "eh_input_threshold_dbm",
    "expected_path_loss_db",
    "form_wpc_groups",
    "free_space_path_loss_db",
    "generate_nodes",
    "harvested_power_dbm",
    "los_probability",
    "noise_power_dbm",
    "optimize_powering",
    "plan_tour",
    "powering_phase",
    "received_power_dbm",
    "required_tx",
    "shannon_rate_bps",
    "simulate_mission",
    "tdma_schedule",
    "tour_length_m",
    "upa_physical_size_m",
    "wake_up",
    "wavelength_m",
]
