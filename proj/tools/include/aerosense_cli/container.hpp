#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "aerosense/packet.hpp"

namespace aerosense::cli {

// On-disk bundle of compressed blocks: "ASNS" magic, version byte, packet
// count, then u32 length-prefixed packets. A fixed 16-byte "ASMT" trailer
// carries what the per-packet headers cannot: how many padding samples the
// last block holds, the capture sample rate, and the sensor kind.
inline constexpr std::uint8_t kContainerVersion = 1;

struct Container {
    std::vector<CompressedPacket> packets;
    std::uint32_t pad_samples = 0;
    std::uint32_t sample_rate = 0;
    std::uint8_t kind = 0;
};

std::vector<std::uint8_t> serialize_container(const Container& container);

// Throws codec_error naming the first bad packet index on corruption, and
// rejects any container version other than kContainerVersion.
Container parse_container(std::span<const std::uint8_t> bytes);

void write_container(const std::filesystem::path& path, const Container& container);
Container read_container(const std::filesystem::path& path);

}  // namespace aerosense::cli
