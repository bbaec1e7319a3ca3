#include "aerosense/bitstream.hpp"

#include <algorithm>
#include <stdexcept>

#include "aerosense/errors.hpp"

namespace aerosense {

BitCursor::BitCursor(std::vector<std::uint8_t> bytes)
    : buf_(std::move(bytes)), write_pos_(buf_.size() * 8) {}

void BitCursor::write_bits(std::uint64_t value, int n) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("write_bits: bit count must be in [1, 64]");
    if (n < 64 && (value >> n) != 0)
        throw std::invalid_argument("write_bits: value does not fit in bit count");

    while (n > 0) {
        const std::size_t byte = write_pos_ >> 3;
        const int offset = static_cast<int>(write_pos_ & 7);
        if (byte >= buf_.size()) buf_.push_back(0);

        const int take = std::min(8 - offset, n);
        const auto chunk = static_cast<std::uint8_t>(
            (value >> (n - take)) & ((1u << take) - 1));
        buf_[byte] |= static_cast<std::uint8_t>(chunk << (8 - offset - take));
        write_pos_ += static_cast<std::size_t>(take);
        n -= take;
    }
}

std::uint64_t BitCursor::read_bits(int n) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("read_bits: bit count must be in [1, 64]");
    if (bits_remaining() < static_cast<std::size_t>(n))
        throw truncated_error("read_bits: bitstream exhausted");

    std::uint64_t value = 0;
    while (n > 0) {
        const std::size_t byte = read_pos_ >> 3;
        const int offset = static_cast<int>(read_pos_ & 7);
        const int take = std::min(8 - offset, n);
        const auto chunk = static_cast<std::uint8_t>(
            (buf_[byte] >> (8 - offset - take)) & ((1u << take) - 1));
        value = (value << take) | chunk;
        read_pos_ += static_cast<std::size_t>(take);
        n -= take;
    }
    return value;
}

void BitCursor::align_write() {
    write_pos_ = (write_pos_ + 7) & ~std::size_t{7};
    buf_.resize((write_pos_ + 7) / 8, 0);
}

void BitCursor::align_read() {
    const std::size_t aligned = (read_pos_ + 7) & ~std::size_t{7};
    if (aligned > write_pos_)
        throw truncated_error("align_read: bitstream exhausted");
    read_pos_ = aligned;
}

}  // namespace aerosense
