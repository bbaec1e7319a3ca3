#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace aerosense {

// One block of multichannel integer samples, stored channel-major.
// Every sample must fit bit_depth signed bits; samples_per_channel must be
// a power of two >= 64 (and <= 32768 so it fits the u16 packet headers).
struct SampleBlock {
    std::uint16_t channels = 0;
    std::uint16_t samples_per_channel = 0;
    std::uint8_t bit_depth = 0;
    std::uint32_t sample_rate = 0;
    std::vector<std::int32_t> data;  // channel-major: data[c * samples + t]

    static SampleBlock create(std::uint16_t channels,
                              std::uint16_t samples_per_channel,
                              std::uint8_t bit_depth, std::uint32_t sample_rate,
                              std::vector<std::int32_t> data);

    std::span<const std::int32_t> channel(std::size_t c) const {
        return {data.data() + c * samples_per_channel, samples_per_channel};
    }
    std::span<std::int32_t> channel(std::size_t c) {
        return {data.data() + c * samples_per_channel, samples_per_channel};
    }

    bool operator==(const SampleBlock&) const = default;
};

// Inclusive-signed range check for a bit_depth-bit sample.
bool sample_fits_depth(std::int64_t value, int bit_depth);

// Channel-major serialization: each sample sign-extended to ceil(D/8)
// little-endian bytes.
std::vector<std::uint8_t> serialize_block_samples(const SampleBlock& block);
void deserialize_block_samples(std::span<const std::uint8_t> bytes,
                               SampleBlock& block);

// Byte count of the serialized form (the S_orig used for compression ratios).
std::uint64_t block_raw_bytes(const SampleBlock& block);

// One class of sensor in a node's payload configuration. An entry may also
// describe an opaque aggregate stream (count 1, bit_depth 1, rate = bps).
struct SensorEntry {
    std::string kind;
    std::uint32_t count = 0;
    std::uint32_t sample_rate = 0;  // Hz
    std::uint8_t bit_depth = 0;
};

struct SensorSuite {
    std::vector<SensorEntry> entries;

    // The payload configuration of the reference node: 10 microphones at
    // 16 kHz / 24-bit, 40 barometers at 100 Hz / 24-bit, and the combined
    // IMU + differential-pressure aggregate at 96 kbps.
    static SensorSuite default_suite();
};

// Sum over entries of count * rate * depth, in bits per second.
// Throws config_error on accumulator overflow.
std::uint64_t compute_raw_bandwidth(const SensorSuite& suite);
std::uint64_t entry_bandwidth(const SensorEntry& entry);

}  // namespace aerosense
