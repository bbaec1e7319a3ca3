#include "aerosense/packet.hpp"

#include <cstring>

#include "aerosense/errors.hpp"

namespace aerosense {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(v & 0xFF);
    out.push_back((v >> 8) & 0xFF);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

std::uint16_t get_u16(std::span<const std::uint8_t> in, std::size_t pos) {
    if (pos + 2 > in.size()) throw truncated_error("packet: truncated u16 field");
    return static_cast<std::uint16_t>(in[pos] | (in[pos + 1] << 8));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t pos) {
    if (pos + 4 > in.size()) throw truncated_error("packet: truncated u32 field");
    return static_cast<std::uint32_t>(in[pos]) |
           (static_cast<std::uint32_t>(in[pos + 1]) << 8) |
           (static_cast<std::uint32_t>(in[pos + 2]) << 16) |
           (static_cast<std::uint32_t>(in[pos + 3]) << 24);
}

std::vector<std::uint8_t> CompressedPacket::to_bytes() const {
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + payload.size());
    out.insert(out.end(), header.begin(), header.end());
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

CompressedPacket CompressedPacket::from_bytes(
    std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 12) throw truncated_error("packet: shorter than any header");
    if (std::memcmp(bytes.data(), kPacketMagic, 4) != 0)
        throw codec_error("packet: bad magic");
    if (bytes[4] != kPacketVersion)
        throw codec_error("packet: unsupported version " +
                          std::to_string(bytes[4]));

    const auto codec = static_cast<CodecId>(bytes[5]);
    const std::uint16_t channels = get_u16(bytes, 6);
    const std::uint16_t samples = get_u16(bytes, 8);  // N for the FFT codec
    if (channels == 0) throw codec_error("packet: zero channel count");

    std::size_t header_len = 0;
    std::uint64_t original = 0;
    const std::uint64_t count = std::uint64_t{channels} * samples;
    switch (codec) {
        case CodecId::Raw: {
            header_len = 16;
            if (bytes.size() < header_len) throw truncated_error("packet: truncated header");
            original = count * ((bytes[10] + 7u) / 8u);
            break;
        }
        case CodecId::PressureLl: {
            header_len = 12 + 2u * channels;
            if (bytes.size() < header_len) throw truncated_error("packet: truncated header");
            original = count * ((bytes[10] + 7u) / 8u);
            break;
        }
        case CodecId::FftHpf: {
            header_len = 20;
            if (bytes.size() < header_len) throw truncated_error("packet: truncated header");
            original = count * ((bytes[10] + 7u) / 8u);
            break;
        }
        case CodecId::Adpcm: {
            header_len = 12 + 3u * channels;
            if (bytes.size() < header_len) throw truncated_error("packet: truncated header");
            original = count * 2;  // ratios quoted against the 16-bit working domain
            break;
        }
        default:
            throw codec_error("packet: unknown codec id " +
                              std::to_string(bytes[5]));
    }

    CompressedPacket packet;
    packet.codec = codec;
    packet.header.assign(bytes.begin(), bytes.begin() + header_len);
    packet.payload.assign(bytes.begin() + header_len, bytes.end());
    packet.original_size = original;
    return packet;
}

}  // namespace aerosense
