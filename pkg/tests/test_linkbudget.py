"""Link budget unit tests.

Expected values are computed inside the tests from first principles
(hand link budget, closed-form inversions) rather than copied from the
implementation, so the tests stay independent of the code under test.
"""
import math

import numpy as np
import pytest

from uewpiot import (
    AntennaArray,
    ConfigurationError,
    EhCircuit,
    GeometryError,
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

C = 3.0e8


def hand_path_loss_db(d, h, f, e_los, e_nlos, a=4.88, b=0.43):
    """Independent hand computation of the blended expected path loss."""
    theta = math.degrees(math.asin(h / d))
    p_los = 1.0 / (1.0 + a * math.exp(-b * (theta - a)))
    fspl = 20.0 * math.log10(4.0 * math.pi * d * f / C)
    return fspl + p_los * e_los + (1.0 - p_los) * e_nlos


def hand_harvested_dbm(p_w, n, d, h, f, eta, e_los, e_nlos):
    return (10.0 * math.log10(p_w * 1e3) + 10.0 * math.log10(n)
            - hand_path_loss_db(d, h, f, e_los, e_nlos) + 10.0 * math.log10(eta))


SUBURBAN_400 = RadioEnvironment.suburban(400e6)
CALIBRATED_400 = RadioEnvironment.calibrated(400e6)
ARRAY_32 = AntennaArray.with_elements(32)
CIRCUIT_400 = EhCircuit.for_band(400e6)


# --- wavelength and array geometry ------------------------------------------

def test_wavelength():
    assert wavelength_m(RadioEnvironment.suburban(400e6)) == pytest.approx(0.75)
    assert wavelength_m(RadioEnvironment.suburban(2.4e9)) == pytest.approx(0.125)


def test_nonpositive_frequency_rejected():
    with pytest.raises(ConfigurationError):
        RadioEnvironment.suburban(0.0)
    with pytest.raises(ConfigurationError):
        RadioEnvironment.suburban(-1e9)


@pytest.mark.parametrize(
    "freq,expected",
    [
        (400e6, (1.125, 2.625)),
        (900e6, (0.5, 7.0 / 6.0)),
        (2.4e9, (0.1875, 0.4375)),
    ],
)
def test_upa_size_reference_points(freq, expected):
    env = RadioEnvironment.suburban(freq)
    size = upa_physical_size_m(env, 4, 8)
    assert size[0] == pytest.approx(expected[0], abs=1e-12)
    assert size[1] == pytest.approx(expected[1], abs=1e-12)


def test_upa_size_formula_and_single_element():
    env = RadioEnvironment.suburban(400e6)
    lam = 0.75
    for rows, cols in [(1, 1), (2, 3), (4, 8), (7, 5)]:
        w, l = upa_physical_size_m(env, rows, cols)
        assert w == (rows - 1) * 0.5 * lam
        assert l == (cols - 1) * 0.5 * lam
    assert upa_physical_size_m(env, 1, 1) == (0.0, 0.0)


def test_array_gain():
    assert array_gain_db(AntennaArray.with_elements(1)) == 0.0
    assert array_gain_db(AntennaArray.with_elements(16)) == pytest.approx(
        10.0 * math.log10(16.0)
    )
    assert array_gain_db(AntennaArray.with_elements(32)) == pytest.approx(
        10.0 * math.log10(32.0)
    )


def test_array_layout_validation():
    assert AntennaArray.with_elements(32).rows * AntennaArray.with_elements(32).cols == 32
    assert (AntennaArray.with_elements(32).rows, AntennaArray.with_elements(32).cols) == (4, 8)
    with pytest.raises(ConfigurationError):
        AntennaArray(6, 2, 2)
    with pytest.raises(ConfigurationError):
        AntennaArray.with_elements(0)


# --- geometry ----------------------------------------------------------------

def test_geometry_triangle_identity():
    geom = LinkGeometry(uav_height_m=10.0, slant_distance_m=13.0)
    assert geom.ground_distance_m**2 + 10.0**2 == pytest.approx(13.0**2)
    assert geom.elevation_angle_deg == pytest.approx(math.degrees(math.asin(10.0 / 13.0)))


def test_geometry_constructors():
    assert LinkGeometry.overhead(5.0).elevation_angle_deg == pytest.approx(90.0)
    geom = LinkGeometry.from_ground(3.0, 4.0)
    assert geom.slant_distance_m == pytest.approx(5.0)


def test_geometry_rejects_slant_below_height():
    with pytest.raises(GeometryError):
        LinkGeometry(uav_height_m=10.0, slant_distance_m=9.0)
    with pytest.raises(GeometryError):
        LinkGeometry(uav_height_m=-1.0, slant_distance_m=5.0)


# --- LoS probability ----------------------------------------------------------

def test_los_probability_reference_angles():
    # Oracle: direct sigmoid evaluation at a=4.88, b=0.43.
    def sigmoid(theta):
        return 1.0 / (1.0 + 4.88 * math.exp(-0.43 * (theta - 4.88)))

    env = SUBURBAN_400
    assert los_probability(env, LinkGeometry.overhead(10.0)) >= 0.9999
    ten_deg = LinkGeometry(uav_height_m=10.0 * math.sin(math.radians(10.0)),
                           slant_distance_m=10.0)
    assert los_probability(env, ten_deg) == pytest.approx(sigmoid(10.0), abs=1e-9)
    assert sigmoid(10.0) == pytest.approx(0.6494, abs=5e-4)
    flat = LinkGeometry(uav_height_m=0.0, slant_distance_m=10.0)
    assert los_probability(env, flat) == pytest.approx(sigmoid(0.0), abs=1e-9)
    assert sigmoid(0.0) == pytest.approx(0.0245, abs=5e-4)


def test_los_probability_bounded_and_nondecreasing():
    env = SUBURBAN_400
    previous = 0.0
    for theta in np.linspace(0.0, 90.0, 91):
        geom = LinkGeometry(uav_height_m=10.0 * math.sin(math.radians(theta)),
                            slant_distance_m=10.0)
        p = los_probability(env, geom)
        assert 0.0 < p < 1.0
        assert p >= previous
        previous = p


# --- path loss ----------------------------------------------------------------

def test_expected_path_loss_overhead():
    # At 90 degrees elevation the blend collapses to FSPL + LoS excess.
    env = SUBURBAN_400
    geom = LinkGeometry.overhead(10.0)
    fspl = 20.0 * math.log10(4.0 * math.pi * 10.0 * 400e6 / C)
    assert fspl == pytest.approx(44.48, abs=0.01)
    assert expected_path_loss_db(env, geom) == pytest.approx(fspl + 0.1, abs=1e-4)


def test_expected_path_loss_hand_value():
    env = SUBURBAN_400
    geom = LinkGeometry(uav_height_m=10.0, slant_distance_m=25.0)
    assert expected_path_loss_db(env, geom) == pytest.approx(
        hand_path_loss_db(25.0, 10.0, 400e6, 0.1, 21.0), abs=1e-12
    )


def test_expected_path_loss_strictly_increasing_in_distance():
    env = SUBURBAN_400
    losses = [
        expected_path_loss_db(env, LinkGeometry(10.0, d))
        for d in np.linspace(10.0, 200.0, 100)
    ]
    assert all(b > a for a, b in zip(losses, losses[1:]))


def test_expected_path_loss_floor():
    # Blended loss never drops below FSPL plus the LoS excess.
    env = SUBURBAN_400
    for d in (10.0, 30.0, 120.0):
        geom = LinkGeometry(10.0, d)
        fspl = free_space_path_loss_db(d, 400e6)
        assert expected_path_loss_db(env, geom) >= fspl + 0.1


def test_path_loss_geometry_errors():
    with pytest.raises(GeometryError):
        expected_path_loss_db(SUBURBAN_400, LinkGeometry(0.0, 0.0))
    with pytest.raises(GeometryError):
        LinkGeometry(10.0, 9.0)


# --- received / harvested power ------------------------------------------------

def test_harvested_equals_received_at_unit_efficiency():
    circuit = EhCircuit(400e6, -20.0, conversion_efficiency=1.0)
    geom = LinkGeometry(10.0, 20.0)
    received = received_power_dbm(10.0, ARRAY_32, SUBURBAN_400, geom)
    harvested = harvested_power_dbm(10.0, ARRAY_32, circuit, SUBURBAN_400, geom)
    assert harvested == received


def test_harvested_offset_at_efficiency_0p3():
    geom = LinkGeometry(10.0, 20.0)
    received = received_power_dbm(10.0, ARRAY_32, SUBURBAN_400, geom)
    harvested = harvested_power_dbm(10.0, ARRAY_32, CIRCUIT_400, SUBURBAN_400, geom)
    assert harvested - received == pytest.approx(10.0 * math.log10(0.3), abs=1e-12)
    assert 10.0 * math.log10(0.3) == pytest.approx(-5.229, abs=5e-4)


def test_harvested_reference_point_suburban():
    # 10 W, 32 elements, overhead at 10 m, 400 MHz, efficiency 0.3.
    geom = LinkGeometry.overhead(10.0)
    received = received_power_dbm(10.0, ARRAY_32, SUBURBAN_400, geom)
    harvested = harvested_power_dbm(10.0, ARRAY_32, CIRCUIT_400, SUBURBAN_400, geom)
    assert received == pytest.approx(
        hand_harvested_dbm(10.0, 32, 10.0, 10.0, 400e6, 1.0, 0.1, 21.0), abs=1e-12
    )
    assert received == pytest.approx(10.47, abs=0.01)
    assert harvested == pytest.approx(5.24, abs=0.01)


def test_identity_random_cases():
    rng = np.random.default_rng(7)
    for _ in range(500):
        f = rng.choice([400e6, 900e6, 2.4e9])
        env = RadioEnvironment.calibrated(f)
        eta = float(rng.uniform(0.05, 1.0))
        circuit = EhCircuit(f, -20.0, conversion_efficiency=eta)
        n = int(rng.integers(1, 65))
        array = AntennaArray.with_elements(n)
        h = float(rng.uniform(0.0, 50.0))
        d = h + float(rng.uniform(0.01, 150.0))
        geom = LinkGeometry(h, d)
        p = float(rng.uniform(0.1, 50.0))
        received = received_power_dbm(p, array, env, geom)
        harvested = harvested_power_dbm(p, array, circuit, env, geom)
        assert harvested == pytest.approx(received + 10.0 * math.log10(eta), abs=1e-12)


def test_array_gain_spacing_exact():
    geom = LinkGeometry(10.0, 25.0)
    for n1, n2 in [(1, 16), (16, 32), (1, 32), (8, 64)]:
        h1 = harvested_power_dbm(
            10.0, AntennaArray.with_elements(n1), CIRCUIT_400, CALIBRATED_400, geom
        )
        h2 = harvested_power_dbm(
            10.0, AntennaArray.with_elements(n2), CIRCUIT_400, CALIBRATED_400, geom
        )
        assert h2 - h1 == pytest.approx(10.0 * math.log10(n2 / n1), abs=1e-9)


def test_frequency_ordering_over_configured_bands():
    # Lower carrier, same geometry and gain: at least as much received power.
    geom = LinkGeometry(10.0, 20.0)
    received = [
        received_power_dbm(10.0, ARRAY_32, RadioEnvironment.calibrated(f), geom)
        for f in (400e6, 900e6, 2.4e9)
    ]
    assert received[0] >= received[1] >= received[2]


# --- thresholds and EH distance -------------------------------------------------

def test_band_thresholds():
    assert eh_input_threshold_dbm(EhCircuit.for_band(400e6)) == -20.0
    assert eh_input_threshold_dbm(EhCircuit.for_band(900e6)) == -23.0
    assert eh_input_threshold_dbm(EhCircuit.for_band(2.4e9)) == -50.0


def test_unknown_band_rejected():
    with pytest.raises(ConfigurationError):
        EhCircuit.for_band(5.8e9)
    # but an explicit threshold is always accepted
    assert EhCircuit(5.8e9, -40.0).input_threshold_dbm == -40.0


def test_efficiency_bounds():
    with pytest.raises(ConfigurationError):
        EhCircuit(400e6, -20.0, conversion_efficiency=0.0)
    with pytest.raises(ConfigurationError):
        EhCircuit(400e6, -20.0, conversion_efficiency=1.5)


def test_eh_distance_infeasible_at_closest_approach():
    circuit = EhCircuit(400e6, 60.0)  # absurdly high threshold
    assert achievable_eh_distance_m(10.0, ARRAY_32, circuit, CALIBRATED_400, 10.0) is None


def test_eh_distance_free_space_matches_closed_form():
    # Zero excess losses reduce the channel to pure FSPL, which inverts in
    # closed form: d* = (c / (4 pi f)) * 10^((P + G + 10log10(eta) - thr) / 20).
    env = RadioEnvironment(400e6, excess_loss_los_db=0.0, excess_loss_nlos_db=0.0)
    circuit = EhCircuit(400e6, -20.0, conversion_efficiency=0.3)
    budget = (10.0 * math.log10(10.0 * 1e3) + 10.0 * math.log10(32.0)
              + 10.0 * math.log10(0.3) - (-20.0))
    oracle = C / (4.0 * math.pi * 400e6) * 10.0 ** (budget / 20.0)
    assert oracle == pytest.approx(184.9, abs=0.1)
    found = achievable_eh_distance_m(10.0, ARRAY_32, circuit, env, 0.0)
    assert found == pytest.approx(oracle, abs=1e-3)


def test_eh_distance_root_consistency():
    circuit = CIRCUIT_400
    found = achievable_eh_distance_m(10.0, ARRAY_32, circuit, CALIBRATED_400, 10.0)
    assert found is not None
    at_root = harvested_power_dbm(
        10.0, ARRAY_32, circuit, CALIBRATED_400, LinkGeometry(10.0, found)
    )
    beyond = harvested_power_dbm(
        10.0, ARRAY_32, circuit, CALIBRATED_400, LinkGeometry(10.0, found + 0.01)
    )
    assert abs(at_root - circuit.input_threshold_dbm) <= 0.01
    assert beyond < circuit.input_threshold_dbm


def test_eh_distance_calibrated_band():
    found = achievable_eh_distance_m(10.0, ARRAY_32, CIRCUIT_400, CALIBRATED_400, 10.0)
    assert 10.0 <= found <= 16.0


def test_non_monotone_channel_rejected():
    with pytest.raises(ConfigurationError):
        RadioEnvironment(400e6, excess_loss_los_db=5.0, excess_loss_nlos_db=2.0)


# --- noise and data rate ---------------------------------------------------------

def test_noise_power():
    assert noise_power_dbm(1.0, 0.0) == -174.0
    assert noise_power_dbm(15e6, 9.0) == pytest.approx(
        -174.0 + 10.0 * math.log10(15e6) + 9.0
    )
    assert noise_power_dbm(15e6, 9.0) == pytest.approx(-93.24, abs=0.01)
    with pytest.raises(ConfigurationError):
        noise_power_dbm(0.0, 9.0)


def test_shannon_rate():
    assert shannon_rate_bps(15e6, 0.0) == 0.0
    assert shannon_rate_bps(15e6, 3.0) == pytest.approx(30e6)


def test_rate_calibrated_operating_point():
    env = RadioEnvironment.calibrated(900e6)
    circuit = EhCircuit.for_band(900e6)
    rate = achievable_data_rate_bps(
        LinkGeometry.overhead(10.0), env, ARRAY_32, circuit, 15e6, 5.0
    )
    assert 50e6 <= rate <= 100e6


def test_rate_monotonicities():
    env = CALIBRATED_400
    circuit = CIRCUIT_400

    def rate(d=15.0, n=32, bw=15e6):
        return achievable_data_rate_bps(
            LinkGeometry(10.0, d), env, AntennaArray.with_elements(n), circuit, bw, 5.0
        )

    rates_d = [rate(d=d) for d in np.linspace(10.0, 100.0, 30)]
    assert all(b < a for a, b in zip(rates_d, rates_d[1:]))
    rates_n = [rate(n=n) for n in (1, 2, 8, 16, 32, 64)]
    assert all(b > a for a, b in zip(rates_n, rates_n[1:]))
    rates_b = [rate(bw=bw) for bw in (1e6, 5e6, 15e6, 40e6)]
    assert all(b > a for a, b in zip(rates_b, rates_b[1:]))
