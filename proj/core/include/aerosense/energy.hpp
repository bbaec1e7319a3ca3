#pragma once

#include <optional>
#include <string>

namespace aerosense {

// Power/throughput profile of a compress-then-transmit pipeline.
struct EnergyProfile {
    double p_cpr_w = 0.0;    // compression power draw
    double th_cpr_bps = 1.0; // compression throughput
    double p_tx_w = 0.0;     // radio power draw
    double th_tx_bps = 1.0;  // radio throughput

    // Builds a profile with the given compression/transmission overhead
    // ratio (p_cpr * th_tx) / (p_tx * th_cpr); only the ratio matters for
    // break-even math, the absolute watts are representative.
    static EnergyProfile from_overhead(double overhead, double p_tx_w = 0.1,
                                       double th_tx_bps = 1.2e6);
    double overhead() const;
};

// Joules to ship s_orig bits uncompressed / compressed at ratio cr.
double energy_no_compression(const EnergyProfile& profile, double s_orig_bits);
double energy_with_compression(const EnergyProfile& profile,
                               double s_orig_bits, double cr);

// Break-even compression ratio: the CR above which compressing saves
// energy. Empty when overhead >= 1 (compression can never pay off).
std::optional<double> becr(const EnergyProfile& profile);

// Power-equivalent saving at ratio cr: 1/BECR - 1/cr (negative below
// break-even). Fraction, not percent.
double pes(const EnergyProfile& profile, double cr);

struct PowerBudget {
    double battery_wh = 32.0;
    double duty_cycle = 0.083;
    double active_w = 0.0;
    double sleep_w = 3e-6 * 3.7;  // 3 uA leakage at 3.7 V
};

double average_power_w(const PowerBudget& budget);
double estimate_lifetime_days(const PowerBudget& budget);

struct SolarModel {
    double panel_area_cm2 = 111.0;
    double irradiance_w_per_cm2 = 0.0;
    double efficiency = 0.8;
    double margin = 1.0;
};

struct Sustainability {
    bool sustainable = false;
    double harvested_w = 0.0;
    double suggested_area_cm2 = 0.0;  // rounded up
};
Sustainability self_sustainable(const SolarModel& solar,
                                const PowerBudget& budget);

// Named presets for the two reference deployments. Codec overheads are
// back-derived from the published break-even ratios; budgets carry the
// measured active power. Throws config_error for unknown names.
namespace presets {

inline constexpr double kIrradianceMedian = 207e-6;  // W/cm^2
inline constexpr double kIrradianceP95 = 27.5e-6;

EnergyProfile profile(const std::string& turbine, const std::string& codec);
PowerBudget budget(const std::string& turbine);
SolarModel solar_median();
SolarModel solar_p95();

}  // namespace presets

}  // namespace aerosense
