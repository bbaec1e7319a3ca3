#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "aerosense/audio_codec.hpp"
#include "aerosense/block.hpp"
#include "aerosense/capture.hpp"
#include "aerosense/pressure_codec.hpp"
#include "aerosense_cli/container.hpp"

namespace aerosense::cli {

struct CompressOptions {
    CodecId codec = CodecId::PressureLl;
    // 0 picks 4096 for pressure captures and 16384 for audio.
    std::uint32_t block_samples = 0;
    PressureCodecConfig pressure;
    FftHpfConfig audio;
    std::optional<int> adpcm_shift;
    int jobs = 1;
};

struct CompressOutcome {
    Container container;
    std::vector<double> block_crs;
    double mean_cr = 0.0;
};

// Splits the capture into equal power-of-two blocks, padding the tail by
// repeating each channel's last sample; pad_samples_out gets the per-channel
// pad length recorded in the container trailer.
std::vector<SampleBlock> split_blocks(const Capture& capture,
                                      std::uint32_t block_samples,
                                      std::uint32_t& pad_samples_out);

std::uint32_t default_block_samples(CaptureKind kind);

// Encodes every block (in parallel when jobs > 1; output order is still the
// block order) and bundles the packets with the capture metadata trailer.
CompressOutcome compress_capture(const Capture& capture,
                                 const CompressOptions& options);

// Inverse of compress_capture: decodes each packet, concatenates blocks, and
// strips the recorded tail padding. Decode errors name the packet index.
Capture decompress_container(const Container& container);

}  // namespace aerosense::cli
