#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aerosense/bitstream.hpp"
#include "aerosense/block.hpp"
#include "aerosense/fft.hpp"
#include "aerosense/packet.hpp"

namespace aerosense {

// Lossy spectral codec: per block and channel, transform, drop everything
// below the high-pass cutoff, and quantize the surviving interleaved
// (re, im) values in fixed-size bands with a shared per-band step. Steps
// live on a quarter-octave grid and are stored as signed 8-bit exponent
// codes, delta + run-length compressed.
struct FftHpfConfig {
    double cr_target = 4.0;      // index width d = round(bit_depth / cr_target)
    double cutoff_hz = 100.0;
    std::uint16_t band_size = 32;  // complex bins per band
};

inline constexpr std::int8_t kZeroBandSentinel = -128;

// 2^(code / 4).
double step_from_code(int code);

// Smallest quarter-octave code whose step covers the band: at least
// ceil(4 * log2(raw_step)), bumped further until round(mag / step) fits the
// index range, so every coefficient lands within step/2. Throws when the
// code leaves the signed 8-bit range.
int snap_step_code(double raw_step, double band_mag, int levels);

struct BandQuant {
    std::int8_t step_code = kZeroBandSentinel;
    std::vector<std::int32_t> indices;  // empty for an all-zero band
};

// Mid-tread quantization of one band of interleaved values with d index
// bits. An all-zero band collapses to the sentinel code.
BandQuant band_quantize(std::span<const double> values, int d);

// First code raw 8 bits; then per delta a Rice(M=2) token stream where
// token 0 marks a run of >= 3 zero deltas (followed by Rice(M=2) of
// run_length - 3) and token zigzag(delta) + 1 is an ordinary delta.
void step_table_encode(std::span<const std::int8_t> codes, BitCursor& out);
std::vector<std::int8_t> step_table_decode(BitCursor& in, std::size_t count);

CompressedPacket encode_audio_fft_hpf(const SampleBlock& block,
                                      const FftHpfConfig& config = {});
SampleBlock decode_audio_fft_hpf(const CompressedPacket& packet);

// Decode with the intermediate products exposed: the dequantized spectra
// the reconstruction came from and each channel's band step codes.
struct FftHpfDecoded {
    SampleBlock block;
    std::vector<SpectralBlock> spectra;
    std::vector<std::vector<std::int8_t>> step_codes;
};
FftHpfDecoded decode_audio_fft_hpf_detail(const CompressedPacket& packet);

struct FftHpfHeader {
    std::uint16_t channels = 0;
    std::uint16_t n_fft = 0;
    std::uint8_t bit_depth = 0;
    std::uint8_t quant_bits = 0;
    std::uint16_t cutoff_hz = 0;
    std::uint16_t band_size = 0;
    std::uint32_t sample_rate = 0;
};
FftHpfHeader parse_fft_hpf_header(const CompressedPacket& packet);

}  // namespace aerosense
