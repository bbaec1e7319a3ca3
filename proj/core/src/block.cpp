#include "aerosense/block.hpp"

#include "aerosense/errors.hpp"

namespace aerosense {

namespace {

bool is_pow2(std::uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

bool sample_fits_depth(std::int64_t value, int bit_depth) {
    const std::int64_t hi = (std::int64_t{1} << (bit_depth - 1)) - 1;
    const std::int64_t lo = -(std::int64_t{1} << (bit_depth - 1));
    return value >= lo && value <= hi;
}

SampleBlock SampleBlock::create(std::uint16_t channels,
                                std::uint16_t samples_per_channel,
                                std::uint8_t bit_depth,
                                std::uint32_t sample_rate,
                                std::vector<std::int32_t> data) {
    if (channels == 0) throw config_error("block: channel count must be positive");
    if (!is_pow2(samples_per_channel) || samples_per_channel < 64 ||
        samples_per_channel > 32768)
        throw config_error(
            "block: samples per channel must be a power of two in [64, 32768]");
    if (bit_depth < 1 || bit_depth > 32)
        throw config_error("block: bit depth must be in [1, 32]");
    if (data.size() !=
        static_cast<std::size_t>(channels) * samples_per_channel)
        throw config_error("block: data size does not match channels * samples");
    for (std::int32_t v : data)
        if (!sample_fits_depth(v, bit_depth))
            throw config_error("block: sample outside signed bit-depth range");
    return SampleBlock{channels, samples_per_channel, bit_depth, sample_rate,
                       std::move(data)};
}

std::uint64_t block_raw_bytes(const SampleBlock& block) {
    const std::uint64_t bytes_per_sample = (block.bit_depth + 7u) / 8u;
    return std::uint64_t{block.channels} * block.samples_per_channel *
           bytes_per_sample;
}

std::vector<std::uint8_t> serialize_block_samples(const SampleBlock& block) {
    const int bps = (block.bit_depth + 7) / 8;
    std::vector<std::uint8_t> out;
    out.reserve(block.data.size() * static_cast<std::size_t>(bps));
    for (std::int32_t v : block.data) {
        auto u = static_cast<std::uint32_t>(v);
        for (int i = 0; i < bps; ++i) out.push_back((u >> (8 * i)) & 0xFF);
    }
    return out;
}

void deserialize_block_samples(std::span<const std::uint8_t> bytes,
                               SampleBlock& block) {
    const int bps = (block.bit_depth + 7) / 8;
    const std::size_t count =
        static_cast<std::size_t>(block.channels) * block.samples_per_channel;
    if (bytes.size() != count * static_cast<std::size_t>(bps))
        throw codec_error("block samples: payload size mismatch");

    block.data.resize(count);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t u = 0;
        for (int b = 0; b < bps; ++b)
            u |= static_cast<std::uint32_t>(bytes[pos++]) << (8 * b);
        // Sign-extend from the serialized byte width.
        const int shift = 32 - 8 * bps;
        block.data[i] =
            static_cast<std::int32_t>(static_cast<std::int32_t>(u << shift) >> shift);
    }
}

SensorSuite SensorSuite::default_suite() {
    return SensorSuite{{
        {"microphone", 10, 16000, 24},
        {"barometer", 40, 100, 24},
        {"imu+differential", 1, 96000, 1},
    }};
}

std::uint64_t entry_bandwidth(const SensorEntry& entry) {
    std::uint64_t bps = 0;
    if (__builtin_mul_overflow(std::uint64_t{entry.count}, entry.sample_rate,
                               &bps) ||
        __builtin_mul_overflow(bps, std::uint64_t{entry.bit_depth}, &bps))
        throw config_error("sensor suite: bandwidth overflows 64-bit accumulator");
    return bps;
}

std::uint64_t compute_raw_bandwidth(const SensorSuite& suite) {
    std::uint64_t total = 0;
    for (const auto& entry : suite.entries) {
        if (__builtin_add_overflow(total, entry_bandwidth(entry), &total))
            throw config_error(
                "sensor suite: bandwidth overflows 64-bit accumulator");
    }
    return total;
}

}  // namespace aerosense
