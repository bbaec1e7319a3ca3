#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace aerosense {

// FIFO bit buffer. Writes append at the tail, reads consume from the head,
// so interleaved write/read sequences are well defined. Bits are packed
// MSB-first within each byte; multi-bit values are written most significant
// bit first.
class BitCursor {
public:
    BitCursor() = default;

    // Wraps an existing byte buffer for reading. The write position starts
    // at the end, so further writes append.
    explicit BitCursor(std::vector<std::uint8_t> bytes);

    // Appends the low n bits of value, 1 <= n <= 64. Bits of value above
    // position n must be zero; anything else is a caller bug.
    void write_bits(std::uint64_t value, int n);

    // Consumes the next n bits, 1 <= n <= 64. Throws truncated_error when
    // fewer than n bits remain.
    std::uint64_t read_bits(int n);

    // Pads the write position to a byte boundary with zero bits.
    void align_write();

    // Advances the read position to the next byte boundary.
    void align_read();

    std::size_t write_position() const { return write_pos_; }
    std::size_t read_position() const { return read_pos_; }
    std::size_t bits_remaining() const { return write_pos_ - read_pos_; }

    const std::vector<std::uint8_t>& bytes() const { return buf_; }
    std::vector<std::uint8_t> take_bytes() { return std::move(buf_); }

private:
    std::vector<std::uint8_t> buf_;
    std::size_t write_pos_ = 0;  // bit index of the next write
    std::size_t read_pos_ = 0;   // bit index of the next read
};

}  // namespace aerosense
