#pragma once

#include <stdexcept>
#include <string>

namespace aerosense {

// Malformed, truncated, or out-of-range data in an encode/decode path.
struct codec_error : std::runtime_error {
    explicit codec_error(const std::string& what) : std::runtime_error(what) {}
};

// Read past the end of a bitstream or byte buffer.
struct truncated_error : codec_error {
    explicit truncated_error(const std::string& what) : codec_error(what) {}
};

// Invalid configuration: bad parameter combinations, unknown config keys.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aerosense
