"""Wake/power/transmit mission simulation along a planned tour.

The UAV flies a closed tour over traversal points. At each hover stop it
wakes the group with an omnidirectional wake-up signal, beams wireless
power for a duration tau, then collects each activated node's payload in
back-to-back TDMA slots. Per group, tau is chosen to minimize a joint
energy-and-latency cost subject to every node harvesting enough energy
for its own transmission and to a per-group latency cap.

Nodes are energy neutral: a node transmits at exactly the power it
harvests, so its required powering time equals its own slot duration and
the binding node is the slowest one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import linkbudget as lb
from . import planner
from .errors import ConfigurationError, InfeasibilityError


@dataclass(frozen=True)
class MissionScenario:
    """Full mission parameterization over one node field."""

    field: planner.NodeField
    env: lb.RadioEnvironment
    array: lb.AntennaArray
    circuit: lb.EhCircuit
    wpt_power_w: float = 10.0
    wur_power_w: float = 1.0
    wur_wake_threshold_dbm: float = -50.0
    payload_bits: float = 10e6
    bandwidth_hz: float = 15e6
    noise_figure_db: float = lb.CALIBRATED_NOISE_FIGURE_DB
    latency_cap_s: float = 30.0
    cost_weight_energy: float = 0.01  # per Joule
    cost_weight_time: float = 1.0  # per second
    hover_power_w: float = 150.0
    cruise_speed_mps: float = 10.0
    height_m: float = 10.0
    wake_duration_s: float = 0.1
    eh_distance_m: float | None = None  # None: derive from the link budget

    def __post_init__(self) -> None:
        for name in ("wpt_power_w", "wur_power_w", "hover_power_w", "cruise_speed_mps"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"{name} must be positive")
        if self.cost_weight_energy < 0 or self.cost_weight_time < 0:
            raise ConfigurationError("cost weights must be >= 0")
        if self.cost_weight_energy == 0 and self.cost_weight_time == 0:
            raise ConfigurationError("at least one cost weight must be positive")
        if self.latency_cap_s <= 0:
            raise ConfigurationError("latency cap must be positive")
        if self.payload_bits < 0:
            raise ConfigurationError("payload must be >= 0 bits")
        if self.height_m < 0:
            raise ConfigurationError("hover height must be >= 0")
        if self.wake_duration_s < 0:
            raise ConfigurationError("wake duration must be >= 0")

    def node_geometry(self, uav_xy, node_index: int) -> lb.LinkGeometry:
        """Geometry from the hover point above ``uav_xy`` to a node."""
        node = self.field.positions[node_index]
        ground = math.hypot(node[0] - uav_xy[0], node[1] - uav_xy[1])
        return lb.LinkGeometry.from_ground(self.height_m, ground)


@dataclass(frozen=True)
class TdmaSlot:
    node_index: int
    start_s: float  # offset from the start of the data phase
    duration_s: float


@dataclass(frozen=True)
class PhaseSchedule:
    """Timing of one hover stop: wake, powering, then TDMA data slots."""

    wake_s: float
    powering_s: float
    slots: tuple[TdmaSlot, ...]

    @property
    def data_s(self) -> float:
        return sum(slot.duration_s for slot in self.slots)

    @property
    def service_s(self) -> float:
        return self.wake_s + self.powering_s + self.data_s


@dataclass(frozen=True)
class NodeService:
    """Link-budget snapshot for one activated node at its hover stop."""

    node_index: int
    slant_m: float
    harvested_power_dbm: float
    harvested_power_w: float
    rate_bps: float
    tx_power_w: float
    tx_time_s: float
    required_energy_j: float


@dataclass(frozen=True)
class PoweringSolution:
    """Optimal powering duration and schedule for one group."""

    tau_s: float
    data_s: float
    cost: float
    schedule: PhaseSchedule
    services: tuple[NodeService, ...]


def wake_up(scenario: MissionScenario, uav_xy, group: planner.WpcGroup) -> frozenset[int]:
    """Nodes whose received wake-up power meets the wake threshold.

    The wake-up radio is omnidirectional (no array gain); activation uses
    a >= comparison, so a node exactly at the threshold wakes.
    """
    activated = set()
    wur_tx_dbm = lb.watts_to_dbm(scenario.wur_power_w)
    for index in sorted(group.member_indices):
        geom = scenario.node_geometry(uav_xy, index)
        received = wur_tx_dbm - lb.expected_path_loss_db(scenario.env, geom)
        if received >= scenario.wur_wake_threshold_dbm:
            activated.add(index)
    return frozenset(activated)


def powering_phase(
    scenario: MissionScenario, uav_xy, members, powering_s: float
) -> dict[int, float]:
    """Energy harvested by each member over a powering phase of ``powering_s``."""
    if powering_s < 0:
        raise ConfigurationError("powering duration must be >= 0")
    energies = {}
    for index in sorted(members):
        geom = scenario.node_geometry(uav_xy, index)
        dbm = lb.harvested_power_dbm(
            scenario.wpt_power_w, scenario.array, scenario.circuit, scenario.env, geom
        )
        energies[index] = lb.dbm_to_watts(dbm) * powering_s
    return energies


def required_tx(payload_bits: float, rate_bps: float, tx_power_w: float) -> tuple[float, float]:
    """Transmit time and energy for a payload: (bits/rate, power * time)."""
    if payload_bits == 0:
        return 0.0, 0.0
    if rate_bps <= 0:
        raise InfeasibilityError(
            f"cannot deliver {payload_bits} bits over a zero-rate link"
        )
    tx_time = payload_bits / rate_bps
    return tx_time, tx_power_w * tx_time


def tdma_schedule(tx_times: dict[int, float]) -> tuple[TdmaSlot, ...]:
    """Back-to-back slots in ascending node-index order, starting at 0."""
    slots = []
    start = 0.0
    for index in sorted(tx_times):
        duration = tx_times[index]
        if duration < 0:
            raise ConfigurationError("slot durations must be >= 0")
        slots.append(TdmaSlot(index, start, duration))
        start += duration
    return tuple(slots)


def _node_service(scenario: MissionScenario, uav_xy, index: int) -> NodeService:
    geom = scenario.node_geometry(uav_xy, index)
    harvested_dbm = lb.harvested_power_dbm(
        scenario.wpt_power_w, scenario.array, scenario.circuit, scenario.env, geom
    )
    harvested_w = lb.dbm_to_watts(harvested_dbm)
    rate = lb.achievable_data_rate_bps(
        geom,
        scenario.env,
        scenario.array,
        scenario.circuit,
        scenario.bandwidth_hz,
        scenario.noise_figure_db,
        wpt_power_w=scenario.wpt_power_w,
    )
    tx_power_w = harvested_w  # energy-neutral node
    tx_time, energy = required_tx(scenario.payload_bits, rate, tx_power_w)
    return NodeService(
        node_index=index,
        slant_m=geom.slant_distance_m,
        harvested_power_dbm=harvested_dbm,
        harvested_power_w=harvested_w,
        rate_bps=rate,
        tx_power_w=tx_power_w,
        tx_time_s=tx_time,
        required_energy_j=energy,
    )


def powering_cost(scenario: MissionScenario, tau_s: float, data_s: float) -> float:
    """Joint energy-and-latency cost of one hover stop.

    cost = w_E * (P_wpt * tau + P_hover * (tau + T_data))
         + w_T * (tau + T_data)
    """
    service = tau_s + data_s
    energy = scenario.wpt_power_w * tau_s + scenario.hover_power_w * service
    return scenario.cost_weight_energy * energy + scenario.cost_weight_time * service


def optimize_powering(
    scenario: MissionScenario, uav_xy, activated
) -> PoweringSolution:
    """Smallest feasible powering duration, its cost, and the slot schedule.

    Each node must harvest at least the energy its own transmission
    spends: harvested_power * tau >= tx_power * tx_time. The cost is
    nondecreasing in tau, so the optimum is the largest per-node
    requirement. Raises when even that tau breaks the latency cap,
    naming the binding node.
    """
    members = sorted(activated)
    if not members:
        raise ConfigurationError("cannot optimize powering for an empty group")
    services = tuple(_node_service(scenario, uav_xy, i) for i in members)

    tau = 0.0
    binding = members[0]
    for svc in services:
        required_tau = svc.required_energy_j / svc.harvested_power_w
        if required_tau > tau:
            tau = required_tau
            binding = svc.node_index
    data_s = sum(svc.tx_time_s for svc in services)

    if tau + data_s > scenario.latency_cap_s:
        raise InfeasibilityError(
            f"group latency {tau + data_s:.4f} s exceeds cap {scenario.latency_cap_s} s "
            f"(binding node {binding})"
        )

    slots = tdma_schedule({svc.node_index: svc.tx_time_s for svc in services})
    schedule = PhaseSchedule(scenario.wake_duration_s, tau, slots)
    return PoweringSolution(
        tau_s=tau,
        data_s=data_s,
        cost=powering_cost(scenario, tau, data_s),
        schedule=schedule,
        services=services,
    )


@dataclass(frozen=True)
class NodeOutcome:
    node_index: int
    group_id: int
    slant_m: float
    harvested_energy_j: float
    tx_power_w: float
    tx_time_s: float
    bits_delivered: float


@dataclass(frozen=True)
class GroupOutcome:
    group_id: int
    traversal_index: int
    member_count: int
    activated_count: int
    feasible: bool
    diagnostic: str
    schedule: PhaseSchedule
    powering_s: float
    data_s: float
    latency_s: float  # powering + data, the capped quantity
    supplied_energy_j: float  # radiated wake-up + powering energy
    cost: float


@dataclass(frozen=True)
class MissionReport:
    """Per-node, per-group, and whole-mission outcomes."""

    eh_distance_m: float
    coverage_radius_m: float
    tour: planner.TourPlan
    groups: tuple[GroupOutcome, ...]
    nodes: tuple[NodeOutcome, ...]
    flight_time_s: float
    service_time_s: float
    mission_time_s: float
    wpt_energy_j: float
    wur_energy_j: float
    hover_energy_j: float
    cruise_energy_j: float
    uav_energy_j: float

    @property
    def total_bits_delivered(self) -> float:
        return sum(node.bits_delivered for node in self.nodes)


def simulate_mission(scenario: MissionScenario) -> MissionReport:
    """Run the full wake/power/transmit mission over the scenario's field.

    Groups whose latency requirement cannot be met are skipped with a
    diagnostic (their wake attempt still costs time and energy) and their
    nodes deliver nothing; the mission continues. Deterministic given the
    scenario, including the field's seed.
    """
    eh_distance = scenario.eh_distance_m
    if eh_distance is None:
        eh_distance = lb.achievable_eh_distance_m(
            scenario.wpt_power_w,
            scenario.array,
            scenario.circuit,
            scenario.env,
            scenario.height_m,
        )
        if eh_distance is None:
            raise InfeasibilityError(
                "harvester threshold is unreachable even directly overhead "
                f"at height {scenario.height_m} m"
            )
    radius = planner.coverage_radius_m(scenario.height_m, eh_distance)
    groups = planner.form_wpc_groups(scenario.field, radius)
    traversal_points = scenario.field.positions[[g.traversal_index for g in groups]]
    tour = planner.plan_tour(traversal_points, mode="heuristic")

    visit_order = tour.visit_order

    # Group ids are the planner's formation indices; the outcome list is in
    # tour visit order.
    node_outcomes: dict[int, NodeOutcome] = {}
    group_outcomes = []
    for group_id in visit_order:
        group = groups[group_id]
        uav_xy = scenario.field.positions[group.traversal_index]
        activated = wake_up(scenario, uav_xy, group)
        empty_schedule = PhaseSchedule(scenario.wake_duration_s, 0.0, ())
        wake_energy = scenario.wur_power_w * scenario.wake_duration_s

        if not activated:
            outcome = GroupOutcome(
                group_id=group_id,
                traversal_index=group.traversal_index,
                member_count=len(group.member_indices),
                activated_count=0,
                feasible=False,
                diagnostic="no nodes activated by the wake-up signal",
                schedule=empty_schedule,
                powering_s=0.0,
                data_s=0.0,
                latency_s=0.0,
                supplied_energy_j=wake_energy,
                cost=0.0,
            )
        else:
            try:
                solution = optimize_powering(scenario, uav_xy, activated)
            except InfeasibilityError as exc:
                outcome = GroupOutcome(
                    group_id=group_id,
                    traversal_index=group.traversal_index,
                    member_count=len(group.member_indices),
                    activated_count=len(activated),
                    feasible=False,
                    diagnostic=str(exc),
                    schedule=empty_schedule,
                    powering_s=0.0,
                    data_s=0.0,
                    latency_s=0.0,
                    supplied_energy_j=wake_energy,
                    cost=0.0,
                )
            else:
                outcome = GroupOutcome(
                    group_id=group_id,
                    traversal_index=group.traversal_index,
                    member_count=len(group.member_indices),
                    activated_count=len(activated),
                    feasible=True,
                    diagnostic="",
                    schedule=solution.schedule,
                    powering_s=solution.tau_s,
                    data_s=solution.data_s,
                    latency_s=solution.tau_s + solution.data_s,
                    supplied_energy_j=wake_energy + scenario.wpt_power_w * solution.tau_s,
                    cost=solution.cost,
                )
                for svc in solution.services:
                    node_outcomes[svc.node_index] = NodeOutcome(
                        node_index=svc.node_index,
                        group_id=group_id,
                        slant_m=svc.slant_m,
                        harvested_energy_j=svc.harvested_power_w * solution.tau_s,
                        tx_power_w=svc.tx_power_w,
                        tx_time_s=svc.tx_time_s,
                        bits_delivered=scenario.payload_bits,
                    )
        group_outcomes.append(outcome)
        for index in sorted(group.member_indices):
            if index not in node_outcomes:
                node_outcomes[index] = NodeOutcome(
                    node_index=index,
                    group_id=group_id,
                    slant_m=scenario.node_geometry(uav_xy, index).slant_distance_m,
                    harvested_energy_j=0.0,
                    tx_power_w=0.0,
                    tx_time_s=0.0,
                    bits_delivered=0.0,
                )

    flight_time = tour.length_m / scenario.cruise_speed_mps
    service_time = sum(g.schedule.wake_s + g.latency_s for g in group_outcomes)
    wpt_energy = sum(scenario.wpt_power_w * g.powering_s for g in group_outcomes)
    wur_energy = sum(scenario.wur_power_w * g.schedule.wake_s for g in group_outcomes)
    hover_energy = scenario.hover_power_w * service_time
    cruise_energy = scenario.hover_power_w * flight_time  # same propulsion draw en route

    return MissionReport(
        eh_distance_m=eh_distance,
        coverage_radius_m=radius,
        tour=tour,
        groups=tuple(group_outcomes),
        nodes=tuple(node_outcomes[i] for i in sorted(node_outcomes)),
        flight_time_s=flight_time,
        service_time_s=service_time,
        mission_time_s=flight_time + service_time,
        wpt_energy_j=wpt_energy,
        wur_energy_j=wur_energy,
        hover_energy_j=hover_energy,
        cruise_energy_j=cruise_energy,
        uav_energy_j=wpt_energy + wur_energy + hover_energy + cruise_energy,
    )
