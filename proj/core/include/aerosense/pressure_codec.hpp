#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aerosense/block.hpp"
#include "aerosense/packet.hpp"

namespace aerosense {

// Lossless multichannel codec for slow sensor streams: optional
// inter-channel differencing, fixed-order temporal prediction, zigzag, and
// per-channel Rice coding with an escape for outliers. Channels that would
// expand are stored verbatim at bit_depth bits per sample.
struct PressureCodecConfig {
    int predictor_order = 1;   // 0, 1, or 2
    double rice_fraction = 0.5;
};

struct PressureChannelInfo {
    bool inter_channel = false;  // residual against the previous channel
    bool raw_fallback = false;   // verbatim samples, mutually exclusive
    std::uint8_t rice_m = 0;
};

// Fixed-order prediction residuals; the first `order` samples fall back to
// the highest lower-order predictor available (order 2 starts with the
// sample itself, then a first difference).
std::vector<std::int64_t> temporal_predict(std::span<const std::int64_t> x,
                                           int order);
std::vector<std::int64_t> temporal_unpredict(std::span<const std::int64_t> r,
                                             int order);

// Difference against the previous channel, applied per channel only when it
// strictly lowers the first-derivative magnitude sum. Channel 0 is never
// differenced.
struct InterChannelResult {
    std::vector<std::vector<std::int64_t>> channels;
    std::vector<bool> applied;
};
InterChannelResult inter_channel_transform(const SampleBlock& block);

CompressedPacket encode_pressure_block(const SampleBlock& block,
                                       const PressureCodecConfig& config = {});
// The pinned header carries no sample rate; callers that know it pass it
// through so the decoded block compares equal to the source.
SampleBlock decode_pressure_block(const CompressedPacket& packet,
                                  std::uint32_t sample_rate = 0);

std::vector<PressureChannelInfo> pressure_channel_info(
    const CompressedPacket& packet);

// Verbatim packet: payload is bit-identical to the block serialization.
CompressedPacket encode_raw_block(const SampleBlock& block,
                                  std::uint8_t kind = 0);
SampleBlock decode_raw_block(const CompressedPacket& packet);
std::uint32_t raw_block_rate(const CompressedPacket& packet);
std::uint8_t raw_block_kind(const CompressedPacket& packet);

}  // namespace aerosense
