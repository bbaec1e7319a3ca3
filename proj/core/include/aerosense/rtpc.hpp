#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace aerosense {

// Radio link between a blade-mounted node and a ground base station. The
// node rides a circle of rotor_radius about the hub in the vertical plane
// containing the base station, so the line-of-sight distance swings by
// exactly 2 * rotor_radius peak to peak.
struct LinkScenario {
    double hub_distance_m = 100.0;   // base station to hub
    double rotor_radius_m = 0.0;
    double rot_speed_rpm = 0.0;
    double path_loss_exponent = 2.46;
    double reference_loss_db = 40.2;  // at 1 m
    double shadowing_sigma_db = 0.0;
    double base_tx_power_dbm = 20.0;  // base station transmits fixed
    double base_antenna_gain_dbi = 17.5;
    double phy_rate_bps = 2e6;
    double protocol_efficiency = 0.6;
    double connection_interval_s = 0.02;
    std::uint64_t rng_seed = 1;
    double offered_load_bps = 850e3;
    double buffer_bytes = 256e3;
    double per_midpoint_dbm = -72.0;  // logistic packet-error curve
    double per_slope_db = 1.5;
};

struct BoostSteps {
    double normal_db = 4.0;
    double critical_db = 8.0;
    double decrease_db = 2.0;
};

struct QueueThresholds {
    double low = 0.25;  // fractions of the buffer
    double high = 0.50;
    double critical = 0.85;
};

struct ControllerConfig {
    double rx_target_dbm = -66.0;
    double per_high = 0.10;
    double per_low = 0.05;
    int low_events = 6;
    QueueThresholds queue;
    BoostSteps boost;
    double recheck_delay_s = 0.1;
    double filter_cutoff_hz = 1.0;
    double power_grid_db = 1.0;   // selections round up to this grid
    double min_tx_dbm = -20.0;
    double max_tx_dbm = 20.0;
    double boost_max_db = 40.0;
};

// Deterministic Gaussian source: mt19937_64 plus Box-Muller, so traces are
// reproducible for a given seed independent of library distributions.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}
    double uniform();   // [0, 1)
    double gaussian();  // standard normal
private:
    std::mt19937_64 engine_;
};

double instantaneous_distance(const LinkScenario& scenario, double t);

// Log-distance path loss with the base station antenna gain; shadow_db is
// the caller-drawn shadowing term.
double rx_power_dbm(const LinkScenario& scenario, double tx_dbm,
                    double distance_m, double shadow_db);
double rx_power_dbm(const LinkScenario& scenario, double tx_dbm,
                    double distance_m, GaussianRng& rng);

// Logistic packet error rate, decreasing in RSSI.
double per_from_rssi(double rssi_dbm, double midpoint_dbm, double slope_db);

// Downlink-to-uplink RSSI translation for a base station transmitting at
// 20 dBm: what the base would see if the node transmitted at tx_aero.
double estimate_base_rssi(double rssi_aero_dbm, double tx_aero_dbm);

// Unity-DC-gain second-order Butterworth low-pass biquad.
class Biquad {
public:
    static Biquad lowpass(double cutoff_hz, double sample_rate_hz);
    double step(double x);
    // Seeds the state as if the input had held x forever (no power-on
    // transient).
    void prime(double x);
    double b0 = 0, b1 = 0, b2 = 0, a1 = 0, a2 = 0;

private:
    double x1_ = 0, x2_ = 0, y1_ = 0, y2_ = 0;
    bool primed_ = false;
};

// Feed-forward selection: the lowest grid power that should land the
// filtered uplink at rx_target + boost, clamped to the configured range.
// base_tx_dbm is the known beacon power behind the downlink measurement.
double select_tx_power(double filtered_rssi_dbm, double boost_db,
                       const ControllerConfig& config,
                       double base_tx_dbm = 20.0);

// Reactive boost state machine over PER reports, queue samples, and the
// 100 ms recheck timer.
class BoostController {
public:
    explicit BoostController(const ControllerConfig& config) : config_(config) {}

    void on_per_report(double per);
    void on_queue_sample(double fill_fraction, double now_s);
    void on_timer(double now_s, double fill_fraction);
    std::optional<double> pending_recheck() const { return recheck_at_; }

    double boost_db() const { return boost_db_; }
    int consecutive_low() const { return low_count_; }

private:
    void raise(double db);
    void lower();

    const ControllerConfig config_;
    double boost_db_ = 0.0;
    int low_count_ = 0;
    double last_per_ = 0.0;
    double last_fill_ = 0.0;
    std::optional<double> recheck_at_;
};

struct TraceRow {
    double t = 0;
    double distance_m = 0;
    double rssi_aero_dbm = 0;
    double rssi_filtered_dbm = 0;
    double tx_power_dbm = 0;
    double boost_db = 0;
    double per = 0;
    double goodput_bps = 0;
    double queue_fill = 0;     // fraction of buffer
    double radio_energy_j = 0; // this event
};

struct SimSummary {
    double duration_s = 0;
    double mean_goodput_bps = 0;
    double mean_per = 0;
    double mean_tx_dbm = 0;
    double total_radio_energy_j = 0;
    double delivered_bytes = 0;
    double dropped_bytes = 0;
    double energy_per_byte_j = 0;
};

struct SimResult {
    std::vector<TraceRow> trace;
    SimSummary summary;
};

enum class PowerPolicy { Rtpc, FixedMax };

// Piecewise-linear dBm -> watts map for the whole radio while transmitting.
// Anchored so the small-turbine scenario lands near 80 nJ per delivered
// byte; a calibration, not a measurement.
struct RadioPowerMap {
    std::vector<std::pair<double, double>> points;  // (dBm, W), sorted
    double watts(double dbm) const;
    static RadioPowerMap default_map();
};

SimResult simulate(const LinkScenario& scenario, const ControllerConfig& config,
                   double duration_s, PowerPolicy policy = PowerPolicy::Rtpc,
                   const RadioPowerMap& power_map = RadioPowerMap::default_map());

class KeyValueConfig;

// A link description plus the default run length, as stored in .scenario
// files. Rejects unknown keys so typos fail loudly.
struct SimScenario {
    LinkScenario link;
    double duration_s = 30.0;
};

SimScenario load_scenario(const KeyValueConfig& cfg);

}  // namespace aerosense
