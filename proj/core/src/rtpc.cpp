#include "aerosense/rtpc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aerosense/config.hpp"
#include "aerosense/errors.hpp"

namespace aerosense {

double GaussianRng::uniform() {
    // 53-bit mantissa draw; [0, 1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianRng::gaussian() {
    double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

double instantaneous_distance(const LinkScenario& scenario, double t) {
    double d = scenario.hub_distance_m;
    double r = scenario.rotor_radius_m;
    double omega = scenario.rot_speed_rpm * 2.0 * std::numbers::pi / 60.0;
    // Node on a circle of radius r about the hub, in the vertical plane
    // through the base station. Swings between d - r and d + r.
    double sq = d * d + r * r + 2.0 * d * r * std::cos(omega * t);
    return std::sqrt(std::max(sq, 0.0));
}

double rx_power_dbm(const LinkScenario& scenario, double tx_dbm,
                    double distance_m, double shadow_db) {
    if (distance_m <= 0.0)
        throw config_error("rx_power_dbm: distance must be positive");
    double path_loss = scenario.reference_loss_db +
                       10.0 * scenario.path_loss_exponent * std::log10(distance_m);
    return tx_dbm + scenario.base_antenna_gain_dbi - path_loss + shadow_db;
}

double rx_power_dbm(const LinkScenario& scenario, double tx_dbm,
                    double distance_m, GaussianRng& rng) {
    double shadow = scenario.shadowing_sigma_db > 0.0
                        ? scenario.shadowing_sigma_db * rng.gaussian()
                        : 0.0;
    return rx_power_dbm(scenario, tx_dbm, distance_m, shadow);
}

double per_from_rssi(double rssi_dbm, double midpoint_dbm, double slope_db) {
    if (slope_db <= 0.0)
        throw config_error("per_from_rssi: slope must be positive");
    return 1.0 / (1.0 + std::exp((rssi_dbm - midpoint_dbm) / slope_db));
}

double estimate_base_rssi(double rssi_aero_dbm, double tx_aero_dbm) {
    // The channel is reciprocal and the base transmits at 20 dBm, so the
    // measured downlink RSSI shifts by the difference in transmit powers.
    return rssi_aero_dbm + tx_aero_dbm - 20.0;
}

Biquad Biquad::lowpass(double cutoff_hz, double sample_rate_hz) {
    if (cutoff_hz <= 0.0)
        throw config_error("biquad: cutoff must be positive");
    if (sample_rate_hz < 2.0 * cutoff_hz)
        throw config_error("biquad: sample rate below Nyquist for cutoff");
    double w0 = 2.0 * std::numbers::pi * cutoff_hz / sample_rate_hz;
    double q = 1.0 / std::numbers::sqrt2;  // Butterworth
    double alpha = std::sin(w0) / (2.0 * q);
    double cw = std::cos(w0);
    double a0 = 1.0 + alpha;

    Biquad f;
    f.b0 = (1.0 - cw) / 2.0 / a0;
    f.b1 = (1.0 - cw) / a0;
    f.b2 = f.b0;
    f.a1 = -2.0 * cw / a0;
    f.a2 = (1.0 - alpha) / a0;
    return f;
}

void Biquad::prime(double x) {
    // DC gain is unity, so steady state is output == input.
    x1_ = x2_ = x;
    y1_ = y2_ = x;
    primed_ = true;
}

double Biquad::step(double x) {
    if (!primed_) prime(x);
    double y = b0 * x + b1 * x1_ + b2 * x2_ - a1 * y1_ - a2 * y2_;
    x2_ = x1_;
    x1_ = x;
    y2_ = y1_;
    y1_ = y;
    return y;
}

double select_tx_power(double filtered_rssi_dbm, double boost_db,
                       const ControllerConfig& config, double base_tx_dbm) {
    // Invert the reciprocity estimate: pick the lowest power whose
    // predicted uplink RSSI reaches the boosted target.
    double needed = config.rx_target_dbm + boost_db + base_tx_dbm - filtered_rssi_dbm;
    double grid = config.power_grid_db;
    if (grid <= 0.0)
        throw config_error("select_tx_power: power grid must be positive");
    double snapped = std::ceil(needed / grid - 1e-9) * grid;
    return std::clamp(snapped, config.min_tx_dbm, config.max_tx_dbm);
}

void BoostController::raise(double db) {
    boost_db_ = std::min(boost_db_ + db, config_.boost_max_db);
}

void BoostController::lower() {
    boost_db_ = std::max(boost_db_ - config_.boost.decrease_db, 0.0);
}

void BoostController::on_per_report(double per) {
    if (per > config_.per_high) {
        if (last_per_ <= config_.per_high) raise(config_.boost.normal_db);
    }
    if (per < config_.per_low) {
        if (++low_count_ >= config_.low_events) {
            lower();
            low_count_ = 0;
        }
    } else {
        low_count_ = 0;
    }
    last_per_ = per;
}

void BoostController::on_queue_sample(double fill_fraction, double now_s) {
    double prev = last_fill_;
    last_fill_ = fill_fraction;
    if (fill_fraction > config_.queue.critical && prev <= config_.queue.critical) {
        raise(config_.boost.critical_db);
        return;
    }
    if (fill_fraction > config_.queue.high && prev <= config_.queue.high) {
        raise(config_.boost.normal_db);
        recheck_at_ = now_s + config_.recheck_delay_s;
        return;
    }
    if (fill_fraction < config_.queue.low && prev >= config_.queue.low) lower();
}

void BoostController::on_timer(double now_s, double fill_fraction) {
    if (!recheck_at_ || now_s < *recheck_at_) return;
    if (fill_fraction > config_.queue.high) {
        raise(config_.boost.normal_db);
        recheck_at_ = now_s + config_.recheck_delay_s;  // still backed up
    } else {
        recheck_at_.reset();
    }
}

double RadioPowerMap::watts(double dbm) const {
    if (points.empty())
        throw config_error("radio power map: no points");
    if (dbm <= points.front().first) return points.front().second;
    if (dbm >= points.back().first) return points.back().second;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (dbm <= points[i].first) {
            auto [x0, y0] = points[i - 1];
            auto [x1, y1] = points[i];
            return y0 + (y1 - y0) * (dbm - x0) / (x1 - x0);
        }
    }
    return points.back().second;
}

RadioPowerMap RadioPowerMap::default_map() {
    return RadioPowerMap{{
        {-20.0, 0.008},
        {-10.0, 0.0095},
        {0.0, 0.0125},
        {5.0, 0.016},
        {10.0, 0.024},
        {15.0, 0.045},
        {20.0, 0.095},
    }};
}

namespace {

void validate(const LinkScenario& s, double duration_s) {
    if (duration_s <= 0.0)
        throw config_error("simulate: duration must be positive");
    if (s.hub_distance_m <= 0.0)
        throw config_error("scenario: hub_distance_m must be positive");
    if (s.rotor_radius_m < 0.0)
        throw config_error("scenario: rotor_radius_m must be non-negative");
    if (s.rotor_radius_m >= s.hub_distance_m)
        throw config_error("scenario: rotor radius must stay below hub distance");
    if (s.rot_speed_rpm < 0.0)
        throw config_error("scenario: rot_speed_rpm must be non-negative");
    if (s.path_loss_exponent <= 0.0)
        throw config_error("scenario: path_loss_exponent must be positive");
    if (s.shadowing_sigma_db < 0.0)
        throw config_error("scenario: shadowing_sigma_db must be non-negative");
    if (s.phy_rate_bps <= 0.0)
        throw config_error("scenario: phy_rate_bps must be positive");
    if (s.protocol_efficiency <= 0.0 || s.protocol_efficiency > 1.0)
        throw config_error("scenario: protocol_efficiency must be in (0, 1]");
    if (s.connection_interval_s <= 0.0)
        throw config_error("scenario: connection_interval_s must be positive");
    if (s.offered_load_bps < 0.0)
        throw config_error("scenario: offered_load_bps must be non-negative");
    if (s.buffer_bytes <= 0.0)
        throw config_error("scenario: buffer_bytes must be positive");
    if (s.per_slope_db <= 0.0)
        throw config_error("scenario: per_slope_db must be positive");
}

}  // namespace

SimResult simulate(const LinkScenario& scenario, const ControllerConfig& config,
                   double duration_s, PowerPolicy policy,
                   const RadioPowerMap& power_map) {
    validate(scenario, duration_s);

    double interval = scenario.connection_interval_s;
    auto events = static_cast<std::size_t>(std::llround(duration_s / interval));
    if (events == 0)
        throw config_error("simulate: duration shorter than one connection event");

    Biquad filter = Biquad::lowpass(config.filter_cutoff_hz, 1.0 / interval);
    BoostController controller(config);
    GaussianRng rng(scenario.rng_seed);

    double buffer_bits = scenario.buffer_bytes * 8.0;
    double backlog_bits = 0.0;
    double delivered_bits = 0.0;
    double dropped_bits = 0.0;

    SimResult result;
    result.trace.reserve(events);
    double per_sum = 0.0, tx_sum = 0.0, energy_sum = 0.0;

    for (std::size_t i = 0; i < events; ++i) {
        double t = static_cast<double>(i) * interval;
        double dist = instantaneous_distance(scenario, t);

        // Downlink beacon from the base station, measured at the node.
        double rssi_aero =
            rx_power_dbm(scenario, scenario.base_tx_power_dbm, dist, rng);
        double filtered = filter.step(rssi_aero);

        controller.on_timer(t, backlog_bits / buffer_bits);

        double boost = controller.boost_db();
        double tx = policy == PowerPolicy::FixedMax
                        ? config.max_tx_dbm
                        : select_tx_power(filtered, boost, config,
                                          scenario.base_tx_power_dbm);

        // Uplink as seen by the base, with its own shadowing draw.
        double rssi_base = rx_power_dbm(scenario, tx, dist, rng);
        double per = per_from_rssi(rssi_base, scenario.per_midpoint_dbm,
                                   scenario.per_slope_db);
        controller.on_per_report(per);

        backlog_bits += scenario.offered_load_bps * interval;
        if (backlog_bits > buffer_bits) {
            dropped_bits += backlog_bits - buffer_bits;
            backlog_bits = buffer_bits;
        }

        double goodput = scenario.phy_rate_bps * scenario.protocol_efficiency *
                         (1.0 - per);
        double capacity_bits = goodput * interval;
        double sent;
        double airtime;
        if (capacity_bits <= 0.0) {
            sent = 0.0;
            airtime = backlog_bits > 0.0 ? 1.0 : 0.0;
        } else {
            sent = std::min(backlog_bits, capacity_bits);
            airtime = sent / capacity_bits;
        }
        backlog_bits -= sent;
        delivered_bits += sent;

        double energy = power_map.watts(tx) * interval * airtime;

        double fill = backlog_bits / buffer_bits;
        controller.on_queue_sample(fill, t);

        result.trace.push_back({t, dist, rssi_aero, filtered, tx, boost, per,
                                sent / interval, fill, energy});
        per_sum += per;
        tx_sum += tx;
        energy_sum += energy;
    }

    auto n = static_cast<double>(events);
    result.summary.duration_s = n * interval;
    result.summary.mean_goodput_bps = delivered_bits / result.summary.duration_s;
    result.summary.mean_per = per_sum / n;
    result.summary.mean_tx_dbm = tx_sum / n;
    result.summary.total_radio_energy_j = energy_sum;
    result.summary.delivered_bytes = delivered_bits / 8.0;
    result.summary.dropped_bytes = dropped_bits / 8.0;
    result.summary.energy_per_byte_j =
        delivered_bits > 0.0 ? energy_sum / (delivered_bits / 8.0) : 0.0;
    return result;
}

SimScenario load_scenario(const KeyValueConfig& cfg) {
    cfg.require_known_keys({
        "hub_distance_m", "rotor_radius_m", "rot_speed_rpm",
        "path_loss_exponent", "reference_loss_db", "shadowing_sigma_db",
        "base_tx_power_dbm", "base_antenna_gain_dbi", "phy_rate_bps",
        "protocol_efficiency", "connection_interval_s", "seed",
        "offered_load_bps", "buffer_kb", "per_midpoint_dbm", "per_slope_db",
        "duration_s",
    });

    SimScenario out;
    LinkScenario& s = out.link;
    if (!cfg.has("hub_distance_m"))
        throw config_error("scenario: missing required key hub_distance_m");
    s.hub_distance_m = cfg.get_double("hub_distance_m", 0.0);
    s.rotor_radius_m = cfg.get_double("rotor_radius_m", s.rotor_radius_m);
    s.rot_speed_rpm = cfg.get_double("rot_speed_rpm", s.rot_speed_rpm);
    s.path_loss_exponent =
        cfg.get_double("path_loss_exponent", s.path_loss_exponent);
    s.reference_loss_db = cfg.get_double("reference_loss_db", s.reference_loss_db);
    s.shadowing_sigma_db =
        cfg.get_double("shadowing_sigma_db", s.shadowing_sigma_db);
    s.base_tx_power_dbm = cfg.get_double("base_tx_power_dbm", s.base_tx_power_dbm);
    s.base_antenna_gain_dbi =
        cfg.get_double("base_antenna_gain_dbi", s.base_antenna_gain_dbi);
    s.phy_rate_bps = cfg.get_double("phy_rate_bps", s.phy_rate_bps);
    s.protocol_efficiency =
        cfg.get_double("protocol_efficiency", s.protocol_efficiency);
    s.connection_interval_s =
        cfg.get_double("connection_interval_s", s.connection_interval_s);
    s.rng_seed = static_cast<std::uint64_t>(
        cfg.get_int("seed", static_cast<std::int64_t>(s.rng_seed)));
    s.offered_load_bps = cfg.get_double("offered_load_bps", s.offered_load_bps);
    s.buffer_bytes = cfg.get_double("buffer_kb", s.buffer_bytes / 1024.0) * 1024.0;
    s.per_midpoint_dbm = cfg.get_double("per_midpoint_dbm", s.per_midpoint_dbm);
    s.per_slope_db = cfg.get_double("per_slope_db", s.per_slope_db);
    out.duration_s = cfg.get_double("duration_s", out.duration_s);
    return out;
}

}  // namespace aerosense
