#include "aerosense_cli/container.hpp"

#include <fstream>
#include <string>

#include "aerosense/errors.hpp"

namespace aerosense::cli {

namespace {
constexpr char kMagic[4] = {'A', 'S', 'N', 'S'};
constexpr char kTrailerMagic[4] = {'A', 'S', 'M', 'T'};
constexpr std::size_t kTrailerSize = 16;
}  // namespace

std::vector<std::uint8_t> serialize_container(const Container& container) {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kContainerVersion);
    put_u32(out, static_cast<std::uint32_t>(container.packets.size()));
    for (const auto& packet : container.packets) {
        auto bytes = packet.to_bytes();
        put_u32(out, static_cast<std::uint32_t>(bytes.size()));
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    out.insert(out.end(), kTrailerMagic, kTrailerMagic + 4);
    put_u32(out, container.pad_samples);
    put_u32(out, container.sample_rate);
    out.push_back(container.kind);
    out.push_back(kContainerVersion);
    out.push_back(0);
    out.push_back(0);
    return out;
}

Container parse_container(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 9 || !std::equal(kMagic, kMagic + 4, bytes.begin()))
        throw codec_error("container: bad magic");
    if (bytes[4] != kContainerVersion)
        throw codec_error("container: unsupported version " +
                          std::to_string(int(bytes[4])));
    std::uint32_t count = get_u32(bytes, 5);

    Container container;
    container.packets.reserve(count);
    std::size_t pos = 9;
    for (std::uint32_t i = 0; i < count; ++i) {
        auto at = std::to_string(i);
        if (bytes.size() - pos < 4)
            throw truncated_error("container: packet " + at + ": missing length");
        std::uint32_t len = get_u32(bytes, pos);
        pos += 4;
        if (bytes.size() - pos < len)
            throw truncated_error("container: packet " + at + ": truncated body");
        try {
            container.packets.push_back(
                CompressedPacket::from_bytes(bytes.subspan(pos, len)));
        } catch (const std::exception& e) {
            throw codec_error("container: packet " + at + ": " + e.what());
        }
        pos += len;
    }

    if (pos == bytes.size()) return container;  // no trailer, defaults hold
    if (bytes.size() - pos != kTrailerSize ||
        !std::equal(kTrailerMagic, kTrailerMagic + 4, bytes.begin() + pos))
        throw codec_error("container: trailing bytes are not a metadata trailer");
    container.pad_samples = get_u32(bytes, pos + 4);
    container.sample_rate = get_u32(bytes, pos + 8);
    container.kind = bytes[pos + 12];
    return container;
}

void write_container(const std::filesystem::path& path, const Container& container) {
    auto bytes = serialize_container(container);
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw codec_error("container: cannot open " + path.string() + " for writing");
    file.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!file) throw codec_error("container: write failed for " + path.string());
}

Container read_container(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw codec_error("container: cannot open " + path.string());
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(file),
                                    std::istreambuf_iterator<char>()};
    return parse_container(bytes);
}

}  // namespace aerosense::cli
