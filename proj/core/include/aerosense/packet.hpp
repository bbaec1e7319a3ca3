#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace aerosense {

inline constexpr char kPacketMagic[4] = {'A', 'S', 'C', '1'};
inline constexpr std::uint8_t kPacketVersion = 1;

enum class CodecId : std::uint8_t {
    Raw = 0,
    PressureLl = 1,  // lossless predictive + Rice
    FftHpf = 2,      // lossy spectral high-pass
    Adpcm = 3,       // 4-bit IMA baseline
};

// A self-describing compressed block: codec-specific header, byte-aligned
// payload, and the source block's serialized size for ratio accounting.
struct CompressedPacket {
    CodecId codec = CodecId::Raw;
    std::vector<std::uint8_t> header;
    std::vector<std::uint8_t> payload;
    std::uint64_t original_size = 0;  // bytes

    std::uint64_t stored_size() const { return header.size() + payload.size(); }
    double compression_ratio() const {
        return static_cast<double>(original_size) /
               static_cast<double>(stored_size());
    }

    std::vector<std::uint8_t> to_bytes() const;
    // Splits a serialized packet at its codec-specific header boundary and
    // validates magic, version, and codec id.
    static CompressedPacket from_bytes(std::span<const std::uint8_t> bytes);
};

// Little-endian field helpers shared by the codec headers.
void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v);
void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v);
std::uint16_t get_u16(std::span<const std::uint8_t> in, std::size_t pos);
std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t pos);

}  // namespace aerosense
