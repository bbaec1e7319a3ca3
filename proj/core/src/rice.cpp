#include "aerosense/rice.hpp"

#include <algorithm>
#include <cmath>

#include "aerosense/errors.hpp"

namespace aerosense {

int estimate_rice_param(double mean, double f) {
    const double arg = mean + f;
    if (!(arg >= 1.0)) return 0;  // log2 < 0, NaN, or negative all clamp to 0
    const int m = std::ilogb(arg);
    return std::clamp(m, 0, kRiceMaxParam);
}

std::uint64_t rice_cost_bits(std::uint64_t value, int m) {
    const std::uint64_t q = value >> m;
    if (q >= kRiceEscapeRun) return kRiceEscapeRun + 32;
    return q + 1 + static_cast<std::uint64_t>(m);
}

void rice_encode_value(std::uint64_t value, int m, BitCursor& out) {
    const std::uint64_t q = value >> m;
    if (q >= kRiceEscapeRun) {
        if (value > 0xFFFFFFFFull)
            throw codec_error("rice: value exceeds 32-bit escape range");
        for (int left = kRiceEscapeRun; left > 0; left -= 16)
            out.write_bits(0xFFFF, std::min(left, 16));
        out.write_bits(value, 32);
        return;
    }
    for (std::uint64_t left = q; left > 0;) {
        const int take = static_cast<int>(std::min<std::uint64_t>(left, 16));
        out.write_bits((1u << take) - 1, take);
        left -= static_cast<std::uint64_t>(take);
    }
    out.write_bits(0, 1);
    if (m > 0) out.write_bits(value & ((std::uint64_t{1} << m) - 1), m);
}

void rice_encode(std::span<const std::uint64_t> values, int m, BitCursor& out) {
    for (std::uint64_t v : values) rice_encode_value(v, m, out);
}

std::uint64_t rice_decode_value(BitCursor& in, int m) {
    std::uint64_t q = 0;
    while (q < kRiceEscapeRun && in.read_bits(1) == 1) ++q;
    if (q == kRiceEscapeRun) return in.read_bits(32);
    std::uint64_t value = q << m;
    if (m > 0) value |= in.read_bits(m);
    return value;
}

std::vector<std::uint64_t> rice_decode(BitCursor& in, std::size_t count, int m) {
    std::vector<std::uint64_t> values(count);
    for (auto& v : values) v = rice_decode_value(in, m);
    return values;
}

}  // namespace aerosense
