#include "aerosense/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aerosense/errors.hpp"

namespace aerosense {

namespace {

double value_range(std::span<const double> x) {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return *hi - *lo;
}

void check_pair(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw config_error("metrics: sequence lengths differ");
    if (a.empty()) throw config_error("metrics: empty sequences");
}

std::vector<double> widen(std::span<const std::int32_t> x) {
    return {x.begin(), x.end()};
}

// Strict local maxima of |coefficients|, strongest first, magnitude ties
// broken toward the lower bin.
std::vector<std::size_t> top_peaks(std::span<const std::complex<double>> spec,
                                   std::size_t k) {
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < spec.size(); ++i) {
        const double m = std::abs(spec[i]);
        if (m > std::abs(spec[i - 1]) && m > std::abs(spec[i + 1]))
            peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](std::size_t a, std::size_t b) {
                         const double ma = std::abs(spec[a]);
                         const double mb = std::abs(spec[b]);
                         if (ma != mb) return ma > mb;
                         return a < b;
                     });
    if (peaks.size() > k) peaks.resize(k);
    return peaks;
}

}  // namespace

double nrmse(std::span<const double> original, std::span<const double> recon) {
    check_pair(original, recon);
    const double range = value_range(original);
    if (range == 0.0)
        throw config_error("nrmse: original is constant, normalization undefined");
    double sq = 0.0;
    for (std::size_t i = 0; i < original.size(); ++i) {
        const double e = original[i] - recon[i];
        sq += e * e;
    }
    return std::sqrt(sq / static_cast<double>(original.size())) / range;
}

double nmae(std::span<const double> original, std::span<const double> recon) {
    check_pair(original, recon);
    const double range = value_range(original);
    if (range == 0.0)
        throw config_error("nmae: original is constant, normalization undefined");
    double abs_sum = 0.0;
    for (std::size_t i = 0; i < original.size(); ++i)
        abs_sum += std::abs(original[i] - recon[i]);
    return abs_sum / static_cast<double>(original.size()) / range;
}

double nrmse(std::span<const std::int32_t> original,
             std::span<const std::int32_t> recon) {
    const auto a = widen(original);
    const auto b = widen(recon);
    return nrmse(std::span<const double>{a}, std::span<const double>{b});
}

double nmae(std::span<const std::int32_t> original,
            std::span<const std::int32_t> recon) {
    const auto a = widen(original);
    const auto b = widen(recon);
    return nmae(std::span<const double>{a}, std::span<const double>{b});
}

double spectral_mape(std::span<const std::complex<double>> original,
                     std::span<const std::complex<double>> recon,
                     double floor_magnitude) {
    if (original.size() != recon.size())
        throw config_error("spectral mape: spectrum lengths differ");
    if (floor_magnitude <= 0.0) {
        double peak = 0.0;
        for (const auto& c : original) peak = std::max(peak, std::abs(c));
        floor_magnitude = 1e-6 * peak;
    }

    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < original.size(); ++i) {
        const double mo = std::abs(original[i]);
        if (mo <= floor_magnitude) continue;
        sum += std::abs(mo - std::abs(recon[i])) / mo;
        ++n;
    }
    if (n == 0)
        throw config_error("spectral mape: no bin above the magnitude floor");
    return 100.0 * sum / static_cast<double>(n);
}

PeakMismatch peak_location_mismatch(std::span<const std::complex<double>> original,
                                    std::span<const std::complex<double>> recon,
                                    int k, int tolerance) {
    if (original.size() != recon.size())
        throw config_error("peak mismatch: spectrum lengths differ");
    if (k < 1) throw config_error("peak mismatch: k must be positive");
    if (tolerance < 0) throw config_error("peak mismatch: negative tolerance");

    const auto orig_peaks = top_peaks(original, static_cast<std::size_t>(k));
    const auto recon_peaks = top_peaks(recon, static_cast<std::size_t>(k));

    PeakMismatch result;
    result.k_effective = static_cast<int>(orig_peaks.size());
    if (orig_peaks.empty()) return result;

    int missing = 0;
    for (std::size_t p : orig_peaks) {
        const bool matched =
            std::any_of(recon_peaks.begin(), recon_peaks.end(),
                        [&](std::size_t q) {
                            const auto d = (p > q) ? p - q : q - p;
                            return d <= static_cast<std::size_t>(tolerance);
                        });
        if (!matched) ++missing;
    }
    result.mismatch_pct =
        100.0 * missing / static_cast<double>(result.k_effective);
    return result;
}

std::string metric_csv_row(const MetricReport& report) {
    std::ostringstream out;
    out << report.dataset << ',' << report.codec << ',' << report.cr << ','
        << report.nrmse << ',' << report.nmae << ',' << report.mape_pct << ','
        << report.peak_mismatch_pct;
    return out.str();
}

}  // namespace aerosense
