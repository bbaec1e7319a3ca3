#include "aerosense/fft.hpp"

#include <cmath>
#include <numbers>

#include "aerosense/errors.hpp"

namespace aerosense {

namespace {

bool is_pow2(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw config_error("fft: length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle =
            (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen{std::cos(angle), std::sin(angle)};
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        for (auto& v : a) v /= static_cast<double>(n);
    }
}

SpectralBlock forward_spectrum(std::span<const double> x,
                               std::uint32_t sample_rate) {
    if (!is_pow2(x.size()))
        throw config_error("fft: block length must be a power of two");
    std::vector<std::complex<double>> a(x.begin(), x.end());
    fft_inplace(a, false);

    SpectralBlock spectrum;
    spectrum.n_fft = static_cast<std::uint32_t>(x.size());
    spectrum.sample_rate = sample_rate;
    spectrum.coefficients.assign(a.begin(), a.begin() + x.size() / 2 + 1);
    // Real input: the DC and Nyquist bins carry no imaginary part; zero the
    // rounding dust so downstream code can rely on it.
    spectrum.coefficients.front().imag(0.0);
    spectrum.coefficients.back().imag(0.0);
    return spectrum;
}

SpectralBlock forward_spectrum(std::span<const std::int32_t> x,
                               std::uint32_t sample_rate) {
    std::vector<double> xd(x.begin(), x.end());
    return forward_spectrum(std::span<const double>{xd}, sample_rate);
}

std::vector<double> inverse_spectrum(const SpectralBlock& spectrum) {
    const std::size_t n = spectrum.n_fft;
    if (!is_pow2(n)) throw config_error("fft: n_fft must be a power of two");
    if (spectrum.coefficients.size() != n / 2 + 1)
        throw codec_error("fft: half-spectrum size does not match n_fft");

    std::vector<std::complex<double>> a(n);
    for (std::size_t k = 0; k <= n / 2; ++k) a[k] = spectrum.coefficients[k];
    for (std::size_t k = n / 2 + 1; k < n; ++k)
        a[k] = std::conj(spectrum.coefficients[n - k]);
    fft_inplace(a, true);

    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = a[t].real();
    return x;
}

std::size_t high_pass_cutoff_bin(double cutoff_hz, std::uint32_t n_fft,
                                 std::uint32_t sample_rate) {
    if (sample_rate == 0) throw config_error("high-pass: sample rate must be positive");
    if (!(cutoff_hz >= 0.0) || cutoff_hz >= sample_rate / 2.0)
        throw config_error("high-pass: cutoff must be in [0, rate/2)");
    return static_cast<std::size_t>(
        std::ceil(cutoff_hz * static_cast<double>(n_fft) /
                  static_cast<double>(sample_rate)));
}

}  // namespace aerosense
