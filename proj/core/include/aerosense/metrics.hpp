#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "aerosense/packet.hpp"

namespace aerosense {

// RMSE / MAE normalized by the original's value range. Throws when the
// original is constant (normalization undefined) or lengths differ.
double nrmse(std::span<const double> original, std::span<const double> recon);
double nmae(std::span<const double> original, std::span<const double> recon);
double nrmse(std::span<const std::int32_t> original,
             std::span<const std::int32_t> recon);
double nmae(std::span<const std::int32_t> original,
            std::span<const std::int32_t> recon);

// Mean absolute percentage error of spectral magnitudes over bins where the
// original exceeds the floor. floor_magnitude <= 0 selects the default,
// 1e-6 * max original magnitude. Throws when no bin clears the floor.
double spectral_mape(std::span<const std::complex<double>> original,
                     std::span<const std::complex<double>> recon,
                     double floor_magnitude = 0.0);

// Share of the original's top-k strict local maxima with no reconstructed
// peak within +-tolerance bins. Magnitude ties prefer the lower bin. When
// fewer than k maxima exist, k shrinks and the effective value is reported.
struct PeakMismatch {
    double mismatch_pct = 0.0;
    int k_effective = 0;
};
PeakMismatch peak_location_mismatch(std::span<const std::complex<double>> original,
                                    std::span<const std::complex<double>> recon,
                                    int k = 10, int tolerance = 1);

struct MetricReport {
    std::string dataset;
    std::string codec;
    double cr = 0.0;
    double nrmse = 0.0;
    double nmae = 0.0;
    double mape_pct = 0.0;
    double peak_mismatch_pct = 0.0;
};

inline constexpr const char* kMetricCsvHeader =
    "dataset,codec,cr,nrmse,nmae,mape_pct,peak_mismatch_pct";
std::string metric_csv_row(const MetricReport& report);

}  // namespace aerosense
