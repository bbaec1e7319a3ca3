#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace aerosense {

enum class CaptureKind : std::uint8_t { Pressure = 0, Audio = 1 };

const char* capture_kind_name(CaptureKind kind);
CaptureKind capture_kind_from_name(const std::string& name);

// A full recording: channel-major samples of arbitrary length, read from
// either the CSV form (`# channels=N rate=R depth=D kind=...` header, one
// row per sample instant) or the binary form ("ASRW" header).
struct Capture {
    CaptureKind kind = CaptureKind::Pressure;
    std::uint16_t channels = 0;
    std::uint32_t sample_rate = 0;
    std::uint8_t bit_depth = 0;
    std::vector<std::int32_t> data;  // channel-major

    std::size_t samples_per_channel() const {
        return channels == 0 ? 0 : data.size() / channels;
    }
};

// Sniffs CSV vs binary by the leading bytes.
Capture read_capture(const std::filesystem::path& path);

void write_capture_csv(const std::filesystem::path& path, const Capture& capture);
void write_capture_csv(std::ostream& out, const Capture& capture);
void write_capture_binary(const std::filesystem::path& path,
                          const Capture& capture);

}  // namespace aerosense
