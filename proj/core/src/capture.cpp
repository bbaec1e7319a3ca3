#include "aerosense/capture.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "aerosense/block.hpp"
#include "aerosense/errors.hpp"

namespace aerosense {

namespace {

constexpr char kRawMagic[4] = {'A', 'S', 'R', 'W'};
constexpr std::uint8_t kRawVersion = 1;

std::int32_t parse_int_field(std::string_view field, const char* what) {
    std::int32_t value = 0;
    const auto* begin = field.data();
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw codec_error(std::string("capture csv: bad ") + what + ": " +
                          std::string(field));
    return value;
}

void validate_capture_shape(const Capture& c) {
    if (c.channels == 0) throw codec_error("capture: zero channels");
    if (c.bit_depth < 1 || c.bit_depth > 32)
        throw codec_error("capture: bit depth out of range");
    if (c.data.size() % c.channels != 0)
        throw codec_error("capture: sample count not divisible by channels");
    for (std::int32_t v : c.data)
        if (!sample_fits_depth(v, c.bit_depth))
            throw codec_error("capture: sample outside bit-depth range");
}

Capture read_capture_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("# ", 0) != 0)
        throw codec_error("capture csv: missing `# channels=...` header line");

    Capture capture;
    bool have_channels = false, have_rate = false, have_depth = false;
    std::istringstream fields(header.substr(2));
    std::string field;
    while (fields >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos)
            throw codec_error("capture csv: malformed header field: " + field);
        const std::string key = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (key == "channels") {
            capture.channels = static_cast<std::uint16_t>(
                parse_int_field(value, "channel count"));
            have_channels = true;
        } else if (key == "rate") {
            capture.sample_rate =
                static_cast<std::uint32_t>(parse_int_field(value, "rate"));
            have_rate = true;
        } else if (key == "depth") {
            capture.bit_depth =
                static_cast<std::uint8_t>(parse_int_field(value, "depth"));
            have_depth = true;
        } else if (key == "kind") {
            capture.kind = capture_kind_from_name(value);
        } else {
            throw codec_error("capture csv: unknown header field: " + key);
        }
    }
    if (!have_channels || !have_rate || !have_depth)
        throw codec_error("capture csv: header needs channels, rate, and depth");
    if (capture.channels == 0)
        throw codec_error("capture csv: zero channels");

    std::vector<std::vector<std::int32_t>> columns(capture.channels);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t pos = 0, column = 0;
        while (true) {
            const auto comma = line.find(',', pos);
            const auto field_view =
                std::string_view(line).substr(pos, comma == std::string::npos
                                                       ? std::string::npos
                                                       : comma - pos);
            if (column >= capture.channels)
                throw codec_error("capture csv: row " + std::to_string(rows + 1) +
                                  " has too many columns");
            columns[column++].push_back(parse_int_field(field_view, "sample"));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (column != capture.channels)
            throw codec_error("capture csv: row " + std::to_string(rows + 1) +
                              " has " + std::to_string(column) + " columns, expected " +
                              std::to_string(capture.channels));
        ++rows;
    }

    capture.data.reserve(rows * capture.channels);
    for (const auto& column : columns)
        capture.data.insert(capture.data.end(), column.begin(), column.end());
    validate_capture_shape(capture);
    return capture;
}

Capture read_capture_binary(std::istream& in) {
    std::uint8_t header[18];
    in.read(reinterpret_cast<char*>(header), sizeof header);
    if (in.gcount() != sizeof header)
        throw truncated_error("capture binary: truncated header");
    if (std::memcmp(header, kRawMagic, 4) != 0)
        throw codec_error("capture binary: bad magic");
    if (header[4] != kRawVersion)
        throw codec_error("capture binary: unsupported version " +
                          std::to_string(header[4]));

    if (header[5] > 1)
        throw codec_error("capture binary: unknown kind byte " +
                          std::to_string(header[5]));

    Capture capture;
    capture.kind = static_cast<CaptureKind>(header[5]);
    capture.channels = static_cast<std::uint16_t>(header[6] | (header[7] << 8));
    capture.bit_depth = header[8];
    capture.sample_rate = static_cast<std::uint32_t>(header[10]) |
                          (static_cast<std::uint32_t>(header[11]) << 8) |
                          (static_cast<std::uint32_t>(header[12]) << 16) |
                          (static_cast<std::uint32_t>(header[13]) << 24);
    const std::uint32_t samples = static_cast<std::uint32_t>(header[14]) |
                                  (static_cast<std::uint32_t>(header[15]) << 8) |
                                  (static_cast<std::uint32_t>(header[16]) << 16) |
                                  (static_cast<std::uint32_t>(header[17]) << 24);
    if (capture.channels == 0)
        throw codec_error("capture binary: zero channels");
    if (capture.bit_depth < 1 || capture.bit_depth > 32)
        throw codec_error("capture binary: bit depth out of range");

    const int bps = (capture.bit_depth + 7) / 8;
    const std::size_t count = std::size_t{capture.channels} * samples;
    std::vector<std::uint8_t> bytes(count * static_cast<std::size_t>(bps));
    in.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size())
        throw truncated_error("capture binary: truncated sample data");

    capture.data.resize(count);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < count; ++i) {
        std::uint32_t u = 0;
        for (int b = 0; b < bps; ++b)
            u |= static_cast<std::uint32_t>(bytes[pos++]) << (8 * b);
        const int shift = 32 - 8 * bps;
        capture.data[i] = static_cast<std::int32_t>(
            static_cast<std::int32_t>(u << shift) >> shift);
    }
    validate_capture_shape(capture);
    return capture;
}

}  // namespace

const char* capture_kind_name(CaptureKind kind) {
    switch (kind) {
        case CaptureKind::Pressure: return "pressure";
        case CaptureKind::Audio: return "audio";
    }
    throw config_error("capture: unknown kind");
}

CaptureKind capture_kind_from_name(const std::string& name) {
    if (name == "pressure") return CaptureKind::Pressure;
    if (name == "audio") return CaptureKind::Audio;
    throw config_error("capture: unknown kind: " + name);
}

Capture read_capture(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open capture file: " + path.string());
    char magic[4] = {};
    in.read(magic, 4);
    if (in.gcount() == 4 && std::memcmp(magic, kRawMagic, 4) == 0) {
        in.seekg(0);
        return read_capture_binary(in);
    }
    in.clear();
    in.seekg(0);
    return read_capture_csv(in);
}

void write_capture_csv(std::ostream& out, const Capture& capture) {
    validate_capture_shape(capture);
    out << "# channels=" << capture.channels << " rate=" << capture.sample_rate
        << " depth=" << static_cast<int>(capture.bit_depth)
        << " kind=" << capture_kind_name(capture.kind) << "\n";
    const std::size_t samples = capture.samples_per_channel();
    for (std::size_t t = 0; t < samples; ++t) {
        for (std::size_t c = 0; c < capture.channels; ++c) {
            if (c > 0) out << ',';
            out << capture.data[c * samples + t];
        }
        out << '\n';
    }
}

void write_capture_csv(const std::filesystem::path& path,
                       const Capture& capture) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot create file: " + path.string());
    write_capture_csv(out, capture);
}

void write_capture_binary(const std::filesystem::path& path,
                          const Capture& capture) {
    validate_capture_shape(capture);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot create file: " + path.string());

    std::vector<std::uint8_t> header;
    header.insert(header.end(), kRawMagic, kRawMagic + 4);
    header.push_back(kRawVersion);
    header.push_back(static_cast<std::uint8_t>(capture.kind));
    header.push_back(capture.channels & 0xFF);
    header.push_back((capture.channels >> 8) & 0xFF);
    header.push_back(capture.bit_depth);
    header.push_back(0);  // reserved
    const auto samples = static_cast<std::uint32_t>(capture.samples_per_channel());
    for (int i = 0; i < 4; ++i)
        header.push_back((capture.sample_rate >> (8 * i)) & 0xFF);
    for (int i = 0; i < 4; ++i) header.push_back((samples >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(header.data()),
              static_cast<std::streamsize>(header.size()));

    const int bps = (capture.bit_depth + 7) / 8;
    std::vector<std::uint8_t> bytes;
    bytes.reserve(capture.data.size() * static_cast<std::size_t>(bps));
    for (std::int32_t v : capture.data) {
        auto u = static_cast<std::uint32_t>(v);
        for (int i = 0; i < bps; ++i) bytes.push_back((u >> (8 * i)) & 0xFF);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

}  // namespace aerosense
