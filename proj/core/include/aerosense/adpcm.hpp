#pragma once

#include <cstdint>
#include <optional>

#include "aerosense/block.hpp"
#include "aerosense/packet.hpp"

namespace aerosense {

// 4-bit IMA ADPCM over a 16-bit working domain. Wider inputs are
// arithmetic-right-shifted into it (shift recorded in the header), so the
// code rate is exactly 16/4 regardless of source depth.
struct AdpcmState {
    std::int16_t predicted = 0;
    std::uint8_t step_index = 0;
};

std::uint8_t adpcm_encode_sample(AdpcmState& state, int sample16);
std::int16_t adpcm_decode_sample(AdpcmState& state, std::uint8_t code);

// Default shift is max(0, bit_depth - 16).
CompressedPacket adpcm_encode(const SampleBlock& block,
                              std::optional<int> shift_override = {});
// Header carries no sample rate; pass it through when known.
SampleBlock adpcm_decode(const CompressedPacket& packet,
                         std::uint32_t sample_rate = 0);

}  // namespace aerosense
