#include "aerosense/energy.hpp"

#include <cmath>

#include "aerosense/errors.hpp"

namespace aerosense {

EnergyProfile EnergyProfile::from_overhead(double overhead, double p_tx_w,
                                           double th_tx_bps) {
    if (!(overhead >= 0.0))
        throw config_error("energy profile: overhead must be non-negative");
    EnergyProfile profile;
    profile.p_tx_w = p_tx_w;
    profile.th_tx_bps = th_tx_bps;
    profile.th_cpr_bps = th_tx_bps;
    profile.p_cpr_w = overhead * p_tx_w;
    return profile;
}

double EnergyProfile::overhead() const {
    return (p_cpr_w * th_tx_bps) / (p_tx_w * th_cpr_bps);
}

double energy_no_compression(const EnergyProfile& profile, double s_orig_bits) {
    return profile.p_tx_w * s_orig_bits / profile.th_tx_bps;
}

double energy_with_compression(const EnergyProfile& profile,
                               double s_orig_bits, double cr) {
    if (!(cr > 0.0)) throw config_error("energy: compression ratio must be positive");
    return profile.p_cpr_w * s_orig_bits / profile.th_cpr_bps +
           profile.p_tx_w * s_orig_bits / (cr * profile.th_tx_bps);
}

std::optional<double> becr(const EnergyProfile& profile) {
    const double overhead = profile.overhead();
    if (overhead >= 1.0) return std::nullopt;
    return 1.0 / (1.0 - overhead);
}

double pes(const EnergyProfile& profile, double cr) {
    if (!(cr > 0.0)) throw config_error("energy: compression ratio must be positive");
    const auto break_even = becr(profile);
    const double inv_becr = break_even ? 1.0 / *break_even : 1.0 - profile.overhead();
    return inv_becr - 1.0 / cr;
}

double average_power_w(const PowerBudget& budget) {
    if (!(budget.duty_cycle >= 0.0) || budget.duty_cycle > 1.0)
        throw config_error("power budget: duty cycle must be in [0, 1]");
    return budget.duty_cycle * budget.active_w +
           (1.0 - budget.duty_cycle) * budget.sleep_w;
}

double estimate_lifetime_days(const PowerBudget& budget) {
    const double avg = average_power_w(budget);
    if (!(avg > 0.0)) throw config_error("power budget: average power is zero");
    return budget.battery_wh / avg / 24.0;
}

Sustainability self_sustainable(const SolarModel& solar,
                                const PowerBudget& budget) {
    if (!(solar.efficiency > 0.0) || solar.efficiency > 1.0)
        throw config_error("solar model: efficiency must be in (0, 1]");
    if (!(solar.irradiance_w_per_cm2 > 0.0))
        throw config_error("solar model: irradiance must be positive");

    Sustainability result;
    result.harvested_w = solar.panel_area_cm2 * solar.irradiance_w_per_cm2 *
                         solar.efficiency;
    const double demand = solar.margin * average_power_w(budget);
    result.sustainable = result.harvested_w >= demand;
    result.suggested_area_cm2 = std::ceil(
        demand / (solar.irradiance_w_per_cm2 * solar.efficiency));
    return result;
}

namespace presets {

namespace {

// Back-derived from the published break-even ratios: small turbine
// 1.28 / 1.46 / 1.35, large turbine 1.072 / 1.104 / 1.086 for the
// lossless-pressure, spectral, and ADPCM pipelines respectively.
struct OverheadRow {
    const char* codec;
    double small_turbine;
    double large_turbine;
};
constexpr OverheadRow kOverheads[] = {
    {"pressure", 0.21875, 0.0673},
    {"fft-hpf", 0.3151, 0.0945},
    {"adpcm", 0.2593, 0.0790},
};

bool is_small(const std::string& turbine) {
    if (turbine == "aventa") return true;
    if (turbine == "dtu10mw") return false;
    throw config_error("unknown turbine preset: " + turbine);
}

}  // namespace

EnergyProfile profile(const std::string& turbine, const std::string& codec) {
    const bool small = is_small(turbine);
    for (const auto& row : kOverheads) {
        if (codec == row.codec)
            return EnergyProfile::from_overhead(small ? row.small_turbine
                                                      : row.large_turbine);
    }
    throw config_error("unknown codec preset: " + codec);
}

PowerBudget budget(const std::string& turbine) {
    PowerBudget b;
    b.active_w = is_small(turbine) ? 0.142 : 0.135;
    return b;
}

SolarModel solar_median() {
    SolarModel m;
    m.irradiance_w_per_cm2 = kIrradianceMedian;
    return m;
}

SolarModel solar_p95() {
    SolarModel m;
    m.irradiance_w_per_cm2 = kIrradianceP95;
    return m;
}

}  // namespace presets

}  // namespace aerosense
