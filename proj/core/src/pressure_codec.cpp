#include "aerosense/pressure_codec.hpp"

#include <cmath>
#include <cstring>

#include "aerosense/bitstream.hpp"
#include "aerosense/errors.hpp"
#include "aerosense/rice.hpp"

namespace aerosense {

namespace {

constexpr std::uint8_t kFlagInterChannel = 0x01;
constexpr std::uint8_t kFlagRawFallback = 0x02;

std::uint64_t derivative_magnitude_sum(std::span<const std::int64_t> x) {
    std::uint64_t sum = 0;
    for (std::size_t t = 1; t < x.size(); ++t)
        sum += static_cast<std::uint64_t>(std::llabs(x[t] - x[t - 1]));
    return sum;
}

void write_header_common(std::vector<std::uint8_t>& h, CodecId codec,
                         std::uint16_t channels, std::uint16_t samples,
                         std::uint8_t depth) {
    h.insert(h.end(), kPacketMagic, kPacketMagic + 4);
    h.push_back(kPacketVersion);
    h.push_back(static_cast<std::uint8_t>(codec));
    put_u16(h, channels);
    put_u16(h, samples);
    h.push_back(depth);
}

}  // namespace

std::vector<std::int64_t> temporal_predict(std::span<const std::int64_t> x,
                                           int order) {
    if (order < 0 || order > 2)
        throw config_error("predictor order must be 0, 1, or 2");
    std::vector<std::int64_t> r(x.begin(), x.end());
    if (order >= 1) {
        for (std::size_t t = x.size(); t-- > 1;) r[t] = x[t] - x[t - 1];
    }
    if (order == 2) {
        for (std::size_t t = x.size(); t-- > 2;)
            r[t] = x[t] - 2 * x[t - 1] + x[t - 2];
    }
    return r;
}

std::vector<std::int64_t> temporal_unpredict(std::span<const std::int64_t> r,
                                             int order) {
    if (order < 0 || order > 2)
        throw config_error("predictor order must be 0, 1, or 2");
    std::vector<std::int64_t> x(r.begin(), r.end());
    if (order >= 1 && x.size() > 1) {
        x[1] = r[1] + x[0];
        for (std::size_t t = 2; t < x.size(); ++t) {
            x[t] = (order == 2) ? r[t] + 2 * x[t - 1] - x[t - 2]
                                : r[t] + x[t - 1];
        }
    }
    return x;
}

InterChannelResult inter_channel_transform(const SampleBlock& block) {
    InterChannelResult result;
    result.channels.resize(block.channels);
    result.applied.assign(block.channels, false);

    std::vector<std::int64_t> prev;
    for (std::size_t c = 0; c < block.channels; ++c) {
        const auto ch = block.channel(c);
        std::vector<std::int64_t> x(ch.begin(), ch.end());
        if (c > 0) {
            std::vector<std::int64_t> diff(x.size());
            for (std::size_t t = 0; t < x.size(); ++t) diff[t] = x[t] - prev[t];
            if (derivative_magnitude_sum(diff) < derivative_magnitude_sum(x)) {
                result.applied[c] = true;
                result.channels[c] = std::move(diff);
            }
        }
        if (!result.applied[c]) result.channels[c] = x;
        prev = std::move(x);
    }
    return result;
}

CompressedPacket encode_pressure_block(const SampleBlock& block,
                                       const PressureCodecConfig& config) {
    if (config.predictor_order < 0 || config.predictor_order > 2)
        throw config_error("pressure codec: predictor order must be 0, 1, or 2");
    if (!(config.rice_fraction >= 0.0))
        throw config_error("pressure codec: rice fraction must be non-negative");

    const int order = config.predictor_order;
    const auto inter = inter_channel_transform(block);

    struct ChannelPlan {
        PressureChannelInfo info;
        std::vector<std::uint64_t> mapped;
    };
    std::vector<ChannelPlan> plans(block.channels);

    const std::uint64_t raw_bits =
        std::uint64_t{block.samples_per_channel} * block.bit_depth;

    for (std::size_t c = 0; c < block.channels; ++c) {
        auto& plan = plans[c];
        const auto residuals = temporal_predict(inter.channels[c], order);

        plan.mapped.resize(residuals.size());
        bool escapable = true;
        for (std::size_t t = 0; t < residuals.size(); ++t) {
            plan.mapped[t] = zigzag_encode(residuals[t]);
            if (plan.mapped[t] > 0xFFFFFFFFull) escapable = false;
        }

        // The first `order` residuals are raw warm-up values, orders of
        // magnitude above the steady state; they would inflate M for the
        // whole channel, so the mean skips them.
        std::uint64_t sum = 0;
        const std::size_t skip =
            std::min<std::size_t>(order, plan.mapped.size());
        for (std::size_t t = skip; t < plan.mapped.size(); ++t)
            sum += plan.mapped[t];
        const std::size_t steady = plan.mapped.size() - skip;
        const double mean =
            steady > 0 ? static_cast<double>(sum) / static_cast<double>(steady)
                       : 0.0;
        const int m = estimate_rice_param(mean, config.rice_fraction);

        std::uint64_t cost = 0;
        for (std::uint64_t v : plan.mapped) {
            cost += rice_cost_bits(v, m);
            if ((v >> m) >= kRiceEscapeRun && v > 0xFFFFFFFFull)
                escapable = false;
        }

        if (!escapable || cost > raw_bits) {
            plan.info.raw_fallback = true;
        } else {
            plan.info.inter_channel = inter.applied[c];
            plan.info.rice_m = static_cast<std::uint8_t>(m);
        }
    }

    CompressedPacket packet;
    packet.codec = CodecId::PressureLl;
    packet.original_size = block_raw_bytes(block);

    auto& h = packet.header;
    write_header_common(h, CodecId::PressureLl, block.channels,
                        block.samples_per_channel, block.bit_depth);
    h.push_back(static_cast<std::uint8_t>(order));
    for (const auto& plan : plans) {
        std::uint8_t flags = 0;
        if (plan.info.inter_channel) flags |= kFlagInterChannel;
        if (plan.info.raw_fallback) flags |= kFlagRawFallback;
        h.push_back(flags);
        h.push_back(plan.info.rice_m);
    }

    BitCursor bits;
    for (std::size_t c = 0; c < block.channels; ++c) {
        const auto& plan = plans[c];
        if (plan.info.raw_fallback) {
            const std::uint64_t mask =
                block.bit_depth == 64 ? ~0ull
                                      : (std::uint64_t{1} << block.bit_depth) - 1;
            for (std::int32_t v : block.channel(c))
                bits.write_bits(static_cast<std::uint64_t>(
                                    static_cast<std::int64_t>(v)) &
                                    mask,
                                block.bit_depth);
        } else {
            rice_encode(plan.mapped, plan.info.rice_m, bits);
        }
    }
    bits.align_write();
    packet.payload = bits.take_bytes();
    return packet;
}

std::vector<PressureChannelInfo> pressure_channel_info(
    const CompressedPacket& packet) {
    if (packet.codec != CodecId::PressureLl)
        throw codec_error("pressure codec: packet has a different codec id");
    const auto& h = packet.header;
    const std::uint16_t channels = get_u16(h, 6);
    std::vector<PressureChannelInfo> infos(channels);
    for (std::size_t c = 0; c < channels; ++c) {
        const std::uint8_t flags = h[12 + 2 * c];
        infos[c].inter_channel = (flags & kFlagInterChannel) != 0;
        infos[c].raw_fallback = (flags & kFlagRawFallback) != 0;
        infos[c].rice_m = h[13 + 2 * c];
        if (infos[c].inter_channel && infos[c].raw_fallback)
            throw codec_error(
                "pressure codec: channel flags inter-channel and raw-fallback "
                "are mutually exclusive");
        if (infos[c].rice_m > kRiceMaxParam)
            throw codec_error("pressure codec: rice parameter out of range");
    }
    return infos;
}

SampleBlock decode_pressure_block(const CompressedPacket& packet,
                                  std::uint32_t sample_rate) {
    const auto& h = packet.header;
    if (h.size() < 12 || std::memcmp(h.data(), kPacketMagic, 4) != 0)
        throw codec_error("pressure codec: bad packet header");
    const std::uint16_t channels = get_u16(h, 6);
    const std::uint16_t samples = get_u16(h, 8);
    const std::uint8_t depth = h[10];
    const int order = h[11];
    if (order > 2)
        throw codec_error("pressure codec: predictor order out of range");
    const auto infos = pressure_channel_info(packet);

    BitCursor bits{packet.payload};
    std::vector<std::int32_t> data(std::size_t{channels} * samples);
    std::vector<std::int64_t> prev;

    for (std::size_t c = 0; c < channels; ++c) {
        std::vector<std::int64_t> x;
        if (infos[c].raw_fallback) {
            x.resize(samples);
            for (auto& v : x) {
                const std::uint64_t u = bits.read_bits(depth);
                const int shift = 64 - depth;
                v = static_cast<std::int64_t>(u << shift) >> shift;
            }
        } else {
            const auto mapped = rice_decode(bits, samples, infos[c].rice_m);
            std::vector<std::int64_t> residuals(mapped.size());
            for (std::size_t t = 0; t < mapped.size(); ++t)
                residuals[t] = zigzag_decode(mapped[t]);
            x = temporal_unpredict(residuals, order);
            if (infos[c].inter_channel) {
                if (c == 0)
                    throw codec_error(
                        "pressure codec: channel 0 cannot be inter-channel");
                for (std::size_t t = 0; t < x.size(); ++t) x[t] += prev[t];
            }
        }
        for (std::size_t t = 0; t < x.size(); ++t) {
            if (!sample_fits_depth(x[t], depth))
                throw codec_error(
                    "pressure codec: decoded sample outside bit-depth range");
            data[c * samples + t] = static_cast<std::int32_t>(x[t]);
        }
        prev = std::move(x);
    }

    return SampleBlock::create(channels, samples, depth, sample_rate,
                               std::move(data));
}

CompressedPacket encode_raw_block(const SampleBlock& block, std::uint8_t kind) {
    CompressedPacket packet;
    packet.codec = CodecId::Raw;
    packet.original_size = block_raw_bytes(block);
    auto& h = packet.header;
    write_header_common(h, CodecId::Raw, block.channels,
                        block.samples_per_channel, block.bit_depth);
    h.push_back(kind);
    put_u32(h, block.sample_rate);
    packet.payload = serialize_block_samples(block);
    return packet;
}

SampleBlock decode_raw_block(const CompressedPacket& packet) {
    const auto& h = packet.header;
    if (packet.codec != CodecId::Raw || h.size() != 16)
        throw codec_error("raw packet: bad header");
    SampleBlock block;
    block.channels = get_u16(h, 6);
    block.samples_per_channel = get_u16(h, 8);
    block.bit_depth = h[10];
    block.sample_rate = get_u32(h, 12);
    deserialize_block_samples(packet.payload, block);
    return SampleBlock::create(block.channels, block.samples_per_channel,
                               block.bit_depth, block.sample_rate,
                               std::move(block.data));
}

std::uint32_t raw_block_rate(const CompressedPacket& packet) {
    if (packet.codec != CodecId::Raw || packet.header.size() != 16)
        throw codec_error("raw packet: bad header");
    return get_u32(packet.header, 12);
}

std::uint8_t raw_block_kind(const CompressedPacket& packet) {
    if (packet.codec != CodecId::Raw || packet.header.size() != 16)
        throw codec_error("raw packet: bad header");
    return packet.header[11];
}

}  // namespace aerosense
