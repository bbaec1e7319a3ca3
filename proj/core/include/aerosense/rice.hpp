#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aerosense/bitstream.hpp"

namespace aerosense {

// Order-preserving map from signed to unsigned: 0,-1,1,-2,... -> 0,1,2,3,...
constexpr std::uint64_t zigzag_encode(std::int64_t v) {
    return (static_cast<std::uint64_t>(v) << 1) ^
           static_cast<std::uint64_t>(v >> 63);
}

constexpr std::int64_t zigzag_decode(std::uint64_t u) {
    return static_cast<std::int64_t>((u >> 1) ^ (~(u & 1) + 1));
}

struct RiceParams {
    int m = 0;        // remainder bit count, clamped to [0, 30]
    double f = 0.5;   // estimator bias fraction
};

// Quotients at or above this run length switch to a raw 32-bit escape.
inline constexpr int kRiceEscapeRun = 48;
inline constexpr int kRiceMaxParam = 30;

// M = clamp(max(0, floor(log2(mean + f))), 0, 30). Exact for any positive
// argument (uses the float exponent, not a log).
int estimate_rice_param(double mean, double f);

// Bit cost of one value under parameter m, escape included.
std::uint64_t rice_cost_bits(std::uint64_t value, int m);

// Unary quotient (q ones + terminating zero) followed by m remainder bits.
// A quotient >= 48 is emitted as 48 ones followed by the value as a raw
// 32-bit field; values >= 2^32 cannot take that path and throw.
void rice_encode(std::span<const std::uint64_t> values, int m, BitCursor& out);
void rice_encode_value(std::uint64_t value, int m, BitCursor& out);

std::vector<std::uint64_t> rice_decode(BitCursor& in, std::size_t count, int m);
std::uint64_t rice_decode_value(BitCursor& in, int m);

}  // namespace aerosense
