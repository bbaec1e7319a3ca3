#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace aerosense {

// Half-spectrum of a real block: bins 0..n_fft/2 of an unnormalized forward
// transform. Bins 0 and n_fft/2 are purely real.
struct SpectralBlock {
    std::uint32_t n_fft = 0;
    std::uint32_t sample_rate = 0;
    std::vector<std::complex<double>> coefficients;  // size n_fft/2 + 1
};

// Radix-2 transform; input length must be a power of two.
SpectralBlock forward_spectrum(std::span<const double> x,
                               std::uint32_t sample_rate);
SpectralBlock forward_spectrum(std::span<const std::int32_t> x,
                               std::uint32_t sample_rate);

// Inverse with 1/N scaling; returns the real time-domain block.
std::vector<double> inverse_spectrum(const SpectralBlock& spectrum);

// First retained bin index for a high-pass cutoff: ceil(cutoff * N / rate).
// Bins [k0, N/2] survive.
std::size_t high_pass_cutoff_bin(double cutoff_hz, std::uint32_t n_fft,
                                 std::uint32_t sample_rate);

// In-place complex transform used by the real wrappers; exposed for tests.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

}  // namespace aerosense
