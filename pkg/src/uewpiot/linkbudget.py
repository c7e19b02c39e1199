"""Air-to-ground wireless power link budget.

Received and harvested power, achievable energy-harvesting range, and
uplink data rate over a probabilistic LoS/NLoS channel with planar-array
beamforming gain. All powers travel in dBm, distances in meters,
frequencies in Hz.

The channel is expected-value only: free-space path loss plus an excess
loss blended between a LoS and an NLoS figure by an elevation-angle
sigmoid. Two parameter presets ship with the package:

* ``RadioEnvironment.suburban`` - the textbook suburban sigmoid and
  excess losses (a=4.88, b=0.43, 0.1/21 dB).
* ``RadioEnvironment.calibrated`` - the shipped operating defaults,
  tuned (see ``demos/calibrate_defaults.py``) so that a 32-element,
  400 MHz, 10 W downlink at 10 m hover height reaches its -20 dBm
  harvester threshold at ~13 m slant range, and the matching 900 MHz
  uplink at 10 m delivers ~65 Mbps in 15 MHz.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigurationError, GeometryError

SPEED_OF_LIGHT = 3.0e8  # m/s, kept at the exact round value by convention

THERMAL_NOISE_DBM_PER_HZ = -174.0

# Harvester input-power thresholds per carrier band.
BAND_THRESHOLDS_DBM = {
    400e6: -20.0,
    900e6: -23.0,
    2.4e9: -50.0,
}

DEFAULT_CONVERSION_EFFICIENCY = 0.3

# Textbook suburban A2G sigmoid and excess losses.
SUBURBAN_LOS_A = 4.88
SUBURBAN_LOS_B = 0.43
SUBURBAN_EXCESS_LOS_DB = 0.1
SUBURBAN_EXCESS_NLOS_DB = 21.0

# Shipped operating defaults; values produced by demos/calibrate_defaults.py.
CALIBRATED_EXCESS_LOS_DB = 23.06
CALIBRATED_EXCESS_NLOS_DB = 34.0
CALIBRATED_NOISE_FIGURE_DB = 5.0


def watts_to_dbm(power_w: float) -> float:
    if power_w <= 0:
        raise ConfigurationError(f"power must be positive, got {power_w} W")
    return 10.0 * math.log10(power_w * 1e3)


def dbm_to_watts(power_dbm: float) -> float:
    return 10.0 ** (power_dbm / 10.0) * 1e-3


@dataclass(frozen=True)
class RadioEnvironment:
    """Carrier and A2G channel parameterization.

    ``los_a`` (dimensionless) and ``los_b`` (per degree) shape the
    elevation-angle sigmoid; ``excess_loss_los_db`` and
    ``excess_loss_nlos_db`` are the extra losses on top of free-space
    path loss for the two link states.
    """

    carrier_frequency_hz: float
    los_a: float = SUBURBAN_LOS_A
    los_b: float = SUBURBAN_LOS_B
    excess_loss_los_db: float = CALIBRATED_EXCESS_LOS_DB
    excess_loss_nlos_db: float = CALIBRATED_EXCESS_NLOS_DB
    speed_of_light: float = SPEED_OF_LIGHT

    def __post_init__(self) -> None:
        if self.carrier_frequency_hz <= 0:
            raise ConfigurationError(
                f"carrier frequency must be positive, got {self.carrier_frequency_hz}"
            )
        if self.los_a <= 0 or self.los_b <= 0:
            raise ConfigurationError("LoS sigmoid parameters must be positive")
        if self.excess_loss_los_db < 0:
            raise ConfigurationError("LoS excess loss must be nonnegative")
        if self.excess_loss_nlos_db < self.excess_loss_los_db:
            # A lighter NLoS than LoS loss would make range finding non-monotone.
            raise ConfigurationError(
                "NLoS excess loss must be >= LoS excess loss "
                f"({self.excess_loss_nlos_db} < {self.excess_loss_los_db})"
            )
        if self.speed_of_light <= 0:
            raise ConfigurationError("speed of light must be positive")

    @classmethod
    def suburban(cls, carrier_frequency_hz: float) -> "RadioEnvironment":
        """Textbook suburban channel parameters."""
        return cls(
            carrier_frequency_hz,
            los_a=SUBURBAN_LOS_A,
            los_b=SUBURBAN_LOS_B,
            excess_loss_los_db=SUBURBAN_EXCESS_LOS_DB,
            excess_loss_nlos_db=SUBURBAN_EXCESS_NLOS_DB,
        )

    @classmethod
    def calibrated(cls, carrier_frequency_hz: float) -> "RadioEnvironment":
        """Shipped operating defaults (see module docstring)."""
        return cls(
            carrier_frequency_hz,
            los_a=SUBURBAN_LOS_A,
            los_b=SUBURBAN_LOS_B,
            excess_loss_los_db=CALIBRATED_EXCESS_LOS_DB,
            excess_loss_nlos_db=CALIBRATED_EXCESS_NLOS_DB,
        )


@dataclass(frozen=True)
class AntennaArray:
    """Uniform planar array on the UAV; gain depends only on element count."""

    elements_n: int
    rows: int
    cols: int
    spacing_wavelengths: float = 0.5

    def __post_init__(self) -> None:
        if self.elements_n < 1 or self.rows < 1 or self.cols < 1:
            raise ConfigurationError("element counts must be >= 1")
        if self.rows * self.cols != self.elements_n:
            raise ConfigurationError(
                f"rows*cols must equal elements_n ({self.rows}x{self.cols} != {self.elements_n})"
            )
        if self.spacing_wavelengths <= 0:
            raise ConfigurationError("element spacing must be positive")

    @classmethod
    def with_elements(cls, elements_n: int, spacing_wavelengths: float = 0.5) -> "AntennaArray":
        """Near-square layout for the given element count (32 -> 4x8)."""
        if elements_n < 1:
            raise ConfigurationError("element count must be >= 1")
        rows = 1
        for k in range(1, int(math.isqrt(elements_n)) + 1):
            if elements_n % k == 0:
                rows = k
        return cls(elements_n, rows, elements_n // rows, spacing_wavelengths)


@dataclass(frozen=True)
class EhCircuit:
    """Energy-harvester front end: input threshold and RF-to-DC efficiency."""

    band_hz: float
    input_threshold_dbm: float
    conversion_efficiency: float = DEFAULT_CONVERSION_EFFICIENCY

    def __post_init__(self) -> None:
        if self.band_hz <= 0:
            raise ConfigurationError("band must be positive")
        if not 0 < self.conversion_efficiency <= 1:
            raise ConfigurationError(
                f"conversion efficiency must be in (0, 1], got {self.conversion_efficiency}"
            )

    @classmethod
    def for_band(
        cls,
        band_hz: float,
        conversion_efficiency: float = DEFAULT_CONVERSION_EFFICIENCY,
    ) -> "EhCircuit":
        """Circuit with the configured per-band input threshold."""
        try:
            threshold = BAND_THRESHOLDS_DBM[band_hz]
        except KeyError:
            raise ConfigurationError(
                f"no input threshold configured for band {band_hz} Hz; "
                "pass input_threshold_dbm explicitly"
            ) from None
        return cls(band_hz, threshold, conversion_efficiency)


@dataclass(frozen=True)
class LinkGeometry:
    """UAV-to-node geometry: hover height H and straight-line slant range d."""

    uav_height_m: float
    slant_distance_m: float

    def __post_init__(self) -> None:
        if self.uav_height_m < 0:
            raise GeometryError(f"hover height must be >= 0, got {self.uav_height_m}")
        if self.slant_distance_m < self.uav_height_m:
            raise GeometryError(
                f"slant distance {self.slant_distance_m} m is below hover height "
                f"{self.uav_height_m} m"
            )

    @classmethod
    def overhead(cls, distance_m: float) -> "LinkGeometry":
        """Node directly below the UAV (elevation 90 degrees)."""
        return cls(uav_height_m=distance_m, slant_distance_m=distance_m)

    @classmethod
    def from_ground(cls, uav_height_m: float, ground_distance_m: float) -> "LinkGeometry":
        if ground_distance_m < 0:
            raise GeometryError("ground distance must be >= 0")
        return cls(uav_height_m, math.hypot(uav_height_m, ground_distance_m))

    @property
    def ground_distance_m(self) -> float:
        return math.sqrt(
            max(self.slant_distance_m**2 - self.uav_height_m**2, 0.0)
        )

    @property
    def elevation_angle_deg(self) -> float:
        if self.slant_distance_m == 0:
            return 90.0  # degenerate zero-range link, treated as overhead
        return math.degrees(math.asin(self.uav_height_m / self.slant_distance_m))


def wavelength_m(env: RadioEnvironment) -> float:
    """Carrier wavelength c/f."""
    return env.speed_of_light / env.carrier_frequency_hz


def upa_physical_size_m(
    env: RadioEnvironment,
    rows: int,
    cols: int,
    spacing_wavelengths: float = 0.5,
) -> tuple[float, float]:
    """Physical aperture of a rows x cols planar array.

    Each dimension spans (count - 1) inter-element gaps of
    ``spacing_wavelengths`` wavelengths; a single element has zero extent.
    """
    if rows < 1 or cols < 1:
        raise ConfigurationError("rows and cols must be >= 1")
    lam = wavelength_m(env)
    return ((rows - 1) * spacing_wavelengths * lam, (cols - 1) * spacing_wavelengths * lam)


def array_gain_db(array: AntennaArray) -> float:
    """Beamforming gain 10*log10(N) for ideal steering; 0 dB for one element."""
    return 10.0 * math.log10(array.elements_n)


def los_probability(env: RadioEnvironment, geom: LinkGeometry) -> float:
    """Line-of-sight probability 1 / (1 + a*exp(-b*(theta - a))).

    ``theta`` is the elevation angle in degrees; the sigmoid rises from
    near the NLoS regime at grazing angles toward 1 overhead.
    """
    theta = geom.elevation_angle_deg
    return 1.0 / (1.0 + env.los_a * math.exp(-env.los_b * (theta - env.los_a)))


def free_space_path_loss_db(distance_m: float, frequency_hz: float) -> float:
    """FSPL(dB) = 20*log10(4*pi*d*f/c)."""
    if distance_m <= 0:
        raise GeometryError(f"distance must be positive, got {distance_m} m")
    return 20.0 * math.log10(4.0 * math.pi * distance_m * frequency_hz / SPEED_OF_LIGHT)


def expected_path_loss_db(env: RadioEnvironment, geom: LinkGeometry) -> float:
    """Expected path loss: FSPL plus the probability-blended excess loss.

    PL = FSPL(d, f) + P_LoS * eta_LoS + (1 - P_LoS) * eta_NLoS

    Strictly increasing in slant distance at fixed hover height, since
    FSPL grows and the LoS probability falls with d.
    """
    if geom.slant_distance_m == 0:
        raise GeometryError("zero slant distance: path loss is singular")
    p_los = los_probability(env, geom)
    fspl = free_space_path_loss_db(geom.slant_distance_m, env.carrier_frequency_hz)
    return fspl + p_los * env.excess_loss_los_db + (1.0 - p_los) * env.excess_loss_nlos_db


def received_power_dbm(
    transmit_power_w: float,
    array: AntennaArray,
    env: RadioEnvironment,
    geom: LinkGeometry,
) -> float:
    """RF power arriving at the node input: P_tx + array gain - path loss."""
    return watts_to_dbm(transmit_power_w) + array_gain_db(array) - expected_path_loss_db(env, geom)


def harvested_power_dbm(
    transmit_power_w: float,
    array: AntennaArray,
    circuit: EhCircuit,
    env: RadioEnvironment,
    geom: LinkGeometry,
) -> float:
    """DC power after RF-to-DC conversion: received + 10*log10(efficiency)."""
    received = received_power_dbm(transmit_power_w, array, env, geom)
    return received + 10.0 * math.log10(circuit.conversion_efficiency)


def eh_input_threshold_dbm(circuit: EhCircuit) -> float:
    """Harvester input-power threshold for the circuit's band."""
    return circuit.input_threshold_dbm


def achievable_eh_distance_m(
    transmit_power_w: float,
    array: AntennaArray,
    circuit: EhCircuit,
    env: RadioEnvironment,
    uav_height_m: float,
    threshold_dbm: float | None = None,
) -> float | None:
    """Largest slant range at which harvested power still meets the threshold.

    Bisects the strictly decreasing harvested-power curve at fixed hover
    height. Returns None when the threshold is already missed at the
    closest approach (directly overhead).
    """
    if uav_height_m < 0:
        raise GeometryError("hover height must be >= 0")
    if threshold_dbm is None:
        threshold_dbm = circuit.input_threshold_dbm

    def harvested(d: float) -> float:
        return harvested_power_dbm(
            transmit_power_w, array, circuit, env, LinkGeometry(uav_height_m, d)
        )

    lo = max(uav_height_m, 1e-3)
    if harvested(lo) < threshold_dbm:
        return None
    hi = max(lo * 2.0, 1.0)
    while harvested(hi) >= threshold_dbm:
        hi *= 2.0
    for _ in range(200):
        if hi - lo <= 1e-6:
            break
        mid = 0.5 * (lo + hi)
        if harvested(mid) >= threshold_dbm:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def noise_power_dbm(bandwidth_hz: float, noise_figure_db: float = 9.0) -> float:
    """Thermal noise floor -174 dBm/Hz + 10*log10(B) + NF."""
    if bandwidth_hz <= 0:
        raise ConfigurationError(f"bandwidth must be positive, got {bandwidth_hz}")
    return THERMAL_NOISE_DBM_PER_HZ + 10.0 * math.log10(bandwidth_hz) + noise_figure_db


def shannon_rate_bps(bandwidth_hz: float, snr_linear: float) -> float:
    """Shannon capacity B*log2(1 + SNR)."""
    if bandwidth_hz <= 0:
        raise ConfigurationError(f"bandwidth must be positive, got {bandwidth_hz}")
    if snr_linear < 0:
        raise ConfigurationError("SNR must be >= 0")
    return bandwidth_hz * math.log2(1.0 + snr_linear)


def achievable_data_rate_bps(
    geom: LinkGeometry,
    env: RadioEnvironment,
    array: AntennaArray,
    circuit: EhCircuit,
    bandwidth_hz: float,
    noise_figure_db: float,
    wpt_power_w: float = 10.0,
) -> float:
    """Uplink rate when the node transmits at its harvested power.

    The node's transmit power equals the power it harvests from the
    downlink (energy-neutral operation); the uplink reuses the same
    expected path loss and array gain by reciprocity.
    """
    node_tx_dbm = harvested_power_dbm(wpt_power_w, array, circuit, env, geom)
    uplink_rx_dbm = node_tx_dbm + array_gain_db(array) - expected_path_loss_db(env, geom)
    snr_db = uplink_rx_dbm - noise_power_dbm(bandwidth_hz, noise_figure_db)
    return shannon_rate_bps(bandwidth_hz, 10.0 ** (snr_db / 10.0))
