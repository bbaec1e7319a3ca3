#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "aerosense/config.hpp"
#include "aerosense/errors.hpp"
#include "aerosense/rtpc.hpp"
#include "doctest.h"

using namespace aerosense;

namespace {

std::filesystem::path scenario_path(const char* name) {
    return std::filesystem::path(AEROSENSE_SCENARIO_DIR) / name;
}

SimScenario load_named(const char* name) {
    return load_scenario(KeyValueConfig::load(scenario_path(name)));
}

LinkScenario quiet_link(double hub_m) {
    LinkScenario s;
    s.hub_distance_m = hub_m;
    s.shadowing_sigma_db = 0.0;
    return s;
}

// Peak output amplitude of the filter for a unit sine at the given
// frequency, after the transient has settled.
double sine_gain(Biquad filter, double freq_hz, double fs_hz) {
    const int settle = 2000;
    const int measure = static_cast<int>(std::ceil(2.0 * fs_hz / freq_hz));
    double peak = 0.0;
    for (int n = 0; n < settle + measure; ++n) {
        double y = filter.step(std::sin(2.0 * std::numbers::pi * freq_hz *
                                        n / fs_hz));
        if (n >= settle) peak = std::max(peak, std::abs(y));
    }
    return peak;
}

}  // namespace

TEST_CASE("blade-tip distance swings exactly two rotor radii") {
    LinkScenario s;
    s.hub_distance_m = 43.0;
    s.rotor_radius_m = 6.5;
    s.rot_speed_rpm = 40.0;

    CHECK(instantaneous_distance(s, 0.0) == doctest::Approx(49.5));
    // 40 rpm: one revolution per 1.5 s, so the nearest pass is at 0.75 s.
    CHECK(instantaneous_distance(s, 0.75) == doctest::Approx(36.5));

    double lo = 1e9, hi = 0.0;
    for (int i = 0; i < 3000; ++i) {
        double d = instantaneous_distance(s, i * 0.001);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    CHECK(hi - lo == doctest::Approx(13.0).epsilon(1e-4));
    CHECK(lo >= 36.5);
    CHECK(hi <= 49.5);
}

TEST_CASE("zero radius means a static link") {
    LinkScenario s = quiet_link(200.0);
    s.rot_speed_rpm = 15.0;
    for (double t : {0.0, 0.3, 1.7, 12.0})
        CHECK(instantaneous_distance(s, t) == doctest::Approx(200.0));
}

TEST_CASE("received power follows log-distance loss") {
    LinkScenario s = quiet_link(100.0);
    s.path_loss_exponent = 2.0;

    double at_100 = rx_power_dbm(s, 0.0, 100.0, 0.0);
    double at_200 = rx_power_dbm(s, 0.0, 200.0, 0.0);
    CHECK(at_100 - at_200 == doctest::Approx(20.0 * std::log10(2.0)));

    // At the 1 m reference point only the fixed terms remain.
    CHECK(rx_power_dbm(s, 20.0, 1.0, 0.0) ==
          doctest::Approx(20.0 + s.base_antenna_gain_dbi - s.reference_loss_db));

    CHECK(rx_power_dbm(s, 0.0, 100.0, 3.5) == doctest::Approx(at_100 + 3.5));
    CHECK_THROWS_AS(rx_power_dbm(s, 0.0, 0.0, 0.0), config_error);
}

TEST_CASE("zero shadowing sigma burns no random draws") {
    LinkScenario s = quiet_link(100.0);
    GaussianRng a(42), b(42);
    (void)rx_power_dbm(s, 10.0, 100.0, a);
    CHECK(a.uniform() == b.uniform());

    s.shadowing_sigma_db = 2.0;
    GaussianRng c(42), d(42);
    (void)rx_power_dbm(s, 10.0, 100.0, c);
    CHECK(c.uniform() != d.uniform());
}

TEST_CASE("packet error curve is logistic in rssi") {
    CHECK(per_from_rssi(-72.0, -72.0, 1.5) == doctest::Approx(0.5));
    CHECK(per_from_rssi(-66.0, -72.0, 1.5) ==
          doctest::Approx(1.0 / (1.0 + std::exp(4.0))));
    double prev = 1.0;
    for (double rssi = -100.0; rssi <= -40.0; rssi += 0.5) {
        double per = per_from_rssi(rssi, -72.0, 1.5);
        CHECK(per < prev);
        CHECK(per > 0.0);
        CHECK(per < 1.0);
        prev = per;
    }
    CHECK_THROWS_AS(per_from_rssi(-70.0, -72.0, 0.0), config_error);
}

TEST_CASE("uplink rssi estimate shifts by the power difference") {
    CHECK(estimate_base_rssi(-60.0, 10.0) == doctest::Approx(-70.0));
    CHECK(estimate_base_rssi(-60.0, 20.0) == doctest::Approx(-60.0));
    CHECK(estimate_base_rssi(-55.5, -20.0) == doctest::Approx(-95.5));
}

TEST_CASE("power selection lands the target on the grid") {
    ControllerConfig cfg;

    // -66 target, 20 dBm beacon: a -50 dBm downlink needs exactly 4 dBm.
    CHECK(select_tx_power(-50.0, 0.0, cfg) == doctest::Approx(4.0));
    // Fractional need rounds up to the next grid point.
    CHECK(select_tx_power(-50.5, 0.0, cfg) == doctest::Approx(5.0));
    // Boost is added to the target.
    CHECK(select_tx_power(-50.0, 8.0, cfg) == doctest::Approx(12.0));
    // Clamping, both ends.
    CHECK(select_tx_power(-90.0, 0.0, cfg) == doctest::Approx(cfg.max_tx_dbm));
    CHECK(select_tx_power(-20.0, 0.0, cfg) == doctest::Approx(-20.0));
    CHECK(select_tx_power(-10.0, 0.0, cfg) == doctest::Approx(cfg.min_tx_dbm));

    cfg.power_grid_db = 2.0;
    CHECK(select_tx_power(-50.5, 0.0, cfg) == doctest::Approx(6.0));
    CHECK(select_tx_power(-50.0, 0.0, cfg) == doctest::Approx(4.0));

    cfg.power_grid_db = 0.0;
    CHECK_THROWS_AS(select_tx_power(-50.0, 0.0, cfg), config_error);
}

TEST_CASE("rssi filter passes slow swings and rejects fast fading") {
    auto f = Biquad::lowpass(1.0, 50.0);

    SUBCASE("dc gain is unity once primed") {
        f.prime(-60.0);
        for (int i = 0; i < 200; ++i)
            CHECK(f.step(-60.0) == doctest::Approx(-60.0).epsilon(1e-9));
    }

    SUBCASE("first sample primes the state") {
        CHECK(f.step(-43.7) == doctest::Approx(-43.7).epsilon(1e-9));
    }

    SUBCASE("passband and stopband") {
        // Analog prototype: |H| = 1/sqrt(1 + (f/fc)^4).
        CHECK(sine_gain(f, 0.2, 50.0) > 0.95);
        CHECK(sine_gain(f, 10.0, 50.0) < std::pow(10.0, -35.0 / 20.0));
    }

    SUBCASE("cutoff above nyquist is rejected") {
        CHECK_THROWS_AS(Biquad::lowpass(1.0, 1.9), config_error);
        CHECK_THROWS_AS(Biquad::lowpass(0.0, 50.0), config_error);
    }
}

TEST_CASE("boost rises one step when per crosses the high mark") {
    ControllerConfig cfg;
    BoostController ctrl(cfg);

    ctrl.on_per_report(0.2);
    CHECK(ctrl.boost_db() == doctest::Approx(4.0));
    // Staying above the mark is not a new crossing.
    ctrl.on_per_report(0.3);
    ctrl.on_per_report(0.15);
    CHECK(ctrl.boost_db() == doctest::Approx(4.0));
    // Drop below, cross again.
    ctrl.on_per_report(0.08);
    ctrl.on_per_report(0.2);
    CHECK(ctrl.boost_db() == doctest::Approx(8.0));
}

TEST_CASE("six clean reports in a row step the boost back down") {
    ControllerConfig cfg;
    BoostController ctrl(cfg);
    ctrl.on_per_report(0.2);  // boost 4

    for (int i = 0; i < 5; ++i) ctrl.on_per_report(0.01);
    CHECK(ctrl.consecutive_low() == 5);
    CHECK(ctrl.boost_db() == doctest::Approx(4.0));

    ctrl.on_per_report(0.06);  // resets the streak
    CHECK(ctrl.consecutive_low() == 0);
    for (int i = 0; i < 5; ++i) ctrl.on_per_report(0.01);
    CHECK(ctrl.boost_db() == doctest::Approx(4.0));
    ctrl.on_per_report(0.01);  // sixth in a row
    CHECK(ctrl.boost_db() == doctest::Approx(2.0));
    CHECK(ctrl.consecutive_low() == 0);
}

TEST_CASE("queue high watermark boosts and arms a recheck") {
    ControllerConfig cfg;
    BoostController ctrl(cfg);

    ctrl.on_queue_sample(0.6, 1.0);
    CHECK(ctrl.boost_db() == doctest::Approx(4.0));
    REQUIRE(ctrl.pending_recheck().has_value());
    CHECK(*ctrl.pending_recheck() == doctest::Approx(1.1));

    // Early timer does nothing.
    ctrl.on_timer(1.05, 0.6);
    CHECK(ctrl.boost_db() == doctest::Approx(4.0));

    // Still backed up at the recheck: boost again, re-arm.
    ctrl.on_timer(1.1, 0.6);
    CHECK(ctrl.boost_db() == doctest::Approx(8.0));
    REQUIRE(ctrl.pending_recheck().has_value());
    CHECK(*ctrl.pending_recheck() == doctest::Approx(1.2));

    // Drained by the next recheck: disarm without boosting.
    ctrl.on_timer(1.21, 0.3);
    CHECK(ctrl.boost_db() == doctest::Approx(8.0));
    CHECK_FALSE(ctrl.pending_recheck().has_value());
}

TEST_CASE("critical watermark takes the large step") {
    ControllerConfig cfg;
    BoostController ctrl(cfg);

    ctrl.on_queue_sample(0.9, 0.0);
    CHECK(ctrl.boost_db() == doctest::Approx(8.0));
    CHECK_FALSE(ctrl.pending_recheck().has_value());

    // No re-trigger while it stays critical.
    ctrl.on_queue_sample(0.95, 0.02);
    CHECK(ctrl.boost_db() == doctest::Approx(8.0));
}

TEST_CASE("draining below the low watermark steps the boost down") {
    ControllerConfig cfg;
    BoostController ctrl(cfg);
    ctrl.on_queue_sample(0.9, 0.0);  // boost 8

    ctrl.on_queue_sample(0.2, 0.02);
    CHECK(ctrl.boost_db() == doctest::Approx(6.0));
    // Already below: no repeated decrease.
    ctrl.on_queue_sample(0.1, 0.04);
    CHECK(ctrl.boost_db() == doctest::Approx(6.0));
}

TEST_CASE("boost saturates at its cap and floor") {
    ControllerConfig cfg;
    BoostController ctrl(cfg);

    for (int i = 0; i < 15; ++i) {
        ctrl.on_per_report(0.2);
        ctrl.on_per_report(0.06);  // re-arm the edge without a low streak
    }
    CHECK(ctrl.boost_db() == doctest::Approx(cfg.boost_max_db));

    for (int i = 0; i < 40; ++i) {
        ctrl.on_queue_sample(0.3, i * 0.1);
        ctrl.on_queue_sample(0.2, i * 0.1 + 0.05);
    }
    CHECK(ctrl.boost_db() == doctest::Approx(0.0));
}

TEST_CASE("radio power map interpolates and clamps") {
    auto map = RadioPowerMap::default_map();
    CHECK(map.watts(-20.0) == doctest::Approx(0.008));
    CHECK(map.watts(20.0) == doctest::Approx(0.095));
    CHECK(map.watts(2.5) == doctest::Approx(0.014250));
    CHECK(map.watts(-30.0) == doctest::Approx(0.008));
    CHECK(map.watts(25.0) == doctest::Approx(0.095));
    CHECK_THROWS_AS(RadioPowerMap{}.watts(0.0), config_error);
}

TEST_CASE("simulation is deterministic for a fixed seed") {
    auto sc = load_named("aventa.scenario");
    ControllerConfig cfg;
    auto a = simulate(sc.link, cfg, 5.0);
    auto b = simulate(sc.link, cfg, 5.0);

    REQUIRE(a.trace.size() == b.trace.size());
    REQUIRE(a.trace.size() == 250);  // 5 s at 20 ms events
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].rssi_aero_dbm == b.trace[i].rssi_aero_dbm);
        CHECK(a.trace[i].tx_power_dbm == b.trace[i].tx_power_dbm);
        CHECK(a.trace[i].radio_energy_j == b.trace[i].radio_energy_j);
        CHECK(a.trace[i].queue_fill == b.trace[i].queue_fill);
    }
    CHECK(a.summary.total_radio_energy_j == b.summary.total_radio_energy_j);

    auto seeded = sc.link;
    seeded.rng_seed += 1;
    auto c = simulate(seeded, cfg, 5.0);
    CHECK(c.trace[0].rssi_aero_dbm != a.trace[0].rssi_aero_dbm);
}

TEST_CASE("selected power grows with distance on quiet static links") {
    ControllerConfig cfg;
    double prev_tx = -1e9;
    for (double hub : {30.0, 60.0, 120.0, 240.0, 480.0}) {
        LinkScenario s = quiet_link(hub);
        s.offered_load_bps = 100e3;  // light load, boost stays put
        auto r = simulate(s, cfg, 1.0);
        double tx = r.trace.back().tx_power_dbm;
        CHECK(tx >= prev_tx);
        prev_tx = tx;
        for (const auto& row : r.trace)
            CHECK(row.tx_power_dbm == doctest::Approx(r.trace[0].tx_power_dbm));
    }
    CHECK(prev_tx == doctest::Approx(20.0));  // far end hits the clamp
}

TEST_CASE("filtering strips fast fading from the power decisions") {
    auto sc = load_named("dtu10mw.scenario");
    auto r = simulate(sc.link, ControllerConfig{}, sc.duration_s);

    double tv_raw = 0.0, tv_filtered = 0.0;
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        tv_raw += std::abs(r.trace[i].rssi_aero_dbm -
                           r.trace[i - 1].rssi_aero_dbm);
        tv_filtered += std::abs(r.trace[i].rssi_filtered_dbm -
                                r.trace[i - 1].rssi_filtered_dbm);
    }
    CHECK(tv_filtered < 0.3 * tv_raw);
}

TEST_CASE("fixed-max policy pins the transmit power") {
    auto sc = load_named("aventa.scenario");
    ControllerConfig cfg;
    auto r = simulate(sc.link, cfg, 2.0, PowerPolicy::FixedMax);
    for (const auto& row : r.trace)
        CHECK(row.tx_power_dbm == doctest::Approx(cfg.max_tx_dbm));
}

TEST_CASE("bundled scenarios: adaptive power never costs more energy") {
    ControllerConfig cfg;
    for (const char* name : {"aventa.scenario", "dtu10mw.scenario",
                             "static-200m.scenario", "static-438m.scenario"}) {
        CAPTURE(name);
        auto sc = load_named(name);
        auto adaptive = simulate(sc.link, cfg, sc.duration_s, PowerPolicy::Rtpc);
        auto pinned = simulate(sc.link, cfg, sc.duration_s, PowerPolicy::FixedMax);
        CHECK(adaptive.summary.total_radio_energy_j <=
              pinned.summary.total_radio_energy_j);
        CHECK(adaptive.summary.mean_per <= 0.15);
    }
}

TEST_CASE("static ranges hit their calibration throughput bands") {
    ControllerConfig cfg;

    auto near = load_named("static-200m.scenario");
    auto r200 = simulate(near.link, cfg, near.duration_s);
    CHECK(r200.summary.mean_goodput_bps > 1.2e6 * 0.85);
    CHECK(r200.summary.mean_goodput_bps < 1.2e6 * 1.15);

    auto far = load_named("static-438m.scenario");
    auto r438 = simulate(far.link, cfg, far.duration_s);
    CHECK(r438.summary.mean_goodput_bps > 850e3 * 0.85);
    CHECK(r438.summary.mean_goodput_bps < 850e3 * 1.15);
}

TEST_CASE("scenario files reject typos and missing anchors") {
    auto good = KeyValueConfig::parse(
        "hub_distance_m = 100\nbuffer_kb = 2\nseed = 9\n");
    auto sc = load_scenario(good);
    CHECK(sc.link.hub_distance_m == doctest::Approx(100.0));
    CHECK(sc.link.buffer_bytes == doctest::Approx(2048.0));
    CHECK(sc.link.rng_seed == 9);
    CHECK(sc.duration_s == doctest::Approx(30.0));

    try {
        load_scenario(KeyValueConfig::parse(
            "hub_distance_m = 100\nhub_distnace_m = 100\n"));
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("hub_distnace_m") != std::string::npos);
    }

    CHECK_THROWS_AS(load_scenario(KeyValueConfig::parse("rotor_radius_m = 5\n")),
                    config_error);
}

TEST_CASE("impossible scenarios are refused") {
    ControllerConfig cfg;
    LinkScenario s = quiet_link(100.0);

    CHECK_THROWS_AS(simulate(s, cfg, 0.0), config_error);
    CHECK_THROWS_AS(simulate(s, cfg, 0.005), config_error);

    s.rotor_radius_m = 100.0;
    CHECK_THROWS_AS(simulate(s, cfg, 1.0), config_error);
    s.rotor_radius_m = 0.0;

    s.protocol_efficiency = 0.0;
    CHECK_THROWS_AS(simulate(s, cfg, 1.0), config_error);
    s.protocol_efficiency = 1.5;
    CHECK_THROWS_AS(simulate(s, cfg, 1.0), config_error);
}
