#include "aerosense/adpcm.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include "aerosense/errors.hpp"

namespace aerosense {

namespace {

constexpr std::array<int, 89> kStepTable = {
    7,     8,     9,     10,    11,    12,    13,    14,    16,    17,
    19,    21,    23,    25,    28,    31,    34,    37,    41,    45,
    50,    55,    60,    66,    73,    80,    88,    97,    107,   118,
    130,   143,   157,   173,   190,   209,   230,   253,   279,   307,
    337,   371,   408,   449,   494,   544,   598,   658,   724,   796,
    876,   963,   1060,  1166,  1282,  1411,  1552,  1707,  1878,  2066,
    2272,  2499,  2749,  3024,  3327,  3660,  4026,  4428,  4871,  5358,
    5894,  6484,  7132,  7845,  8630,  9493,  10442, 11487, 12635, 13899,
    15289, 16818, 18500, 20350, 22385, 24623, 27086, 29794, 32767};

constexpr std::array<int, 16> kIndexTable = {-1, -1, -1, -1, 2, 4, 6, 8,
                                             -1, -1, -1, -1, 2, 4, 6, 8};

int clamp16(int v) { return std::clamp(v, -32768, 32767); }

void apply_code(AdpcmState& state, std::uint8_t code) {
    const int step = kStepTable[state.step_index];
    int diff = step >> 3;
    if (code & 4) diff += step;
    if (code & 2) diff += step >> 1;
    if (code & 1) diff += step >> 2;
    const int predicted = (code & 8) ? state.predicted - diff
                                     : state.predicted + diff;
    state.predicted = static_cast<std::int16_t>(clamp16(predicted));
    state.step_index = static_cast<std::uint8_t>(
        std::clamp(state.step_index + kIndexTable[code], 0, 88));
}

}  // namespace

std::uint8_t adpcm_encode_sample(AdpcmState& state, int sample16) {
    const int step = kStepTable[state.step_index];
    int diff = sample16 - state.predicted;
    std::uint8_t code = 0;
    if (diff < 0) {
        code = 8;
        diff = -diff;
    }
    if (diff >= step) {
        code |= 4;
        diff -= step;
    }
    if (diff >= step >> 1) {
        code |= 2;
        diff -= step >> 1;
    }
    if (diff >= step >> 2) code |= 1;
    apply_code(state, code);
    return code;
}

std::int16_t adpcm_decode_sample(AdpcmState& state, std::uint8_t code) {
    apply_code(state, code & 0x0F);
    return state.predicted;
}

CompressedPacket adpcm_encode(const SampleBlock& block,
                              std::optional<int> shift_override) {
    const int shift =
        shift_override.value_or(std::max(0, block.bit_depth - 16));
    if (shift < 0 || shift > 16)
        throw config_error("adpcm: shift must be in [0, 16]");
    if (block.bit_depth - shift > 16)
        throw config_error("adpcm: shifted samples exceed the 16-bit domain");

    CompressedPacket packet;
    packet.codec = CodecId::Adpcm;
    packet.original_size =
        std::uint64_t{block.channels} * block.samples_per_channel * 2;

    auto& h = packet.header;
    h.insert(h.end(), kPacketMagic, kPacketMagic + 4);
    h.push_back(kPacketVersion);
    h.push_back(static_cast<std::uint8_t>(CodecId::Adpcm));
    put_u16(h, block.channels);
    put_u16(h, block.samples_per_channel);
    h.push_back(block.bit_depth);
    h.push_back(static_cast<std::uint8_t>(shift));

    std::vector<AdpcmState> states(block.channels);
    for (std::size_t c = 0; c < block.channels; ++c) {
        states[c].predicted =
            static_cast<std::int16_t>(block.channel(c)[0] >> shift);
        states[c].step_index = 0;
        put_u16(h, static_cast<std::uint16_t>(states[c].predicted));
        h.push_back(states[c].step_index);
    }

    auto& payload = packet.payload;
    payload.reserve(std::size_t{block.channels} *
                    ((block.samples_per_channel + 1) / 2));
    for (std::size_t c = 0; c < block.channels; ++c) {
        AdpcmState state = states[c];
        std::uint8_t pending = 0;
        bool half = false;
        for (std::int32_t v : block.channel(c)) {
            const std::uint8_t code =
                adpcm_encode_sample(state, v >> shift);
            if (!half) {
                pending = static_cast<std::uint8_t>(code << 4);
                half = true;
            } else {
                payload.push_back(pending | code);
                half = false;
            }
        }
        if (half) payload.push_back(pending);
    }
    return packet;
}

SampleBlock adpcm_decode(const CompressedPacket& packet,
                         std::uint32_t sample_rate) {
    const auto& h = packet.header;
    if (packet.codec != CodecId::Adpcm || h.size() < 12 ||
        std::memcmp(h.data(), kPacketMagic, 4) != 0)
        throw codec_error("adpcm: bad packet header");
    const std::uint16_t channels = get_u16(h, 6);
    const std::uint16_t samples = get_u16(h, 8);
    const std::uint8_t depth = h[10];
    const int shift = h[11];
    if (h.size() != 12 + 3u * channels)
        throw codec_error("adpcm: header size does not match channel count");

    const std::size_t bytes_per_channel = (samples + 1u) / 2u;
    if (packet.payload.size() != bytes_per_channel * channels)
        throw codec_error("adpcm: payload size does not match header");

    std::vector<std::int32_t> data(std::size_t{channels} * samples);
    for (std::size_t c = 0; c < channels; ++c) {
        AdpcmState state;
        state.predicted = static_cast<std::int16_t>(get_u16(h, 12 + 3 * c));
        state.step_index = h[14 + 3 * c];
        if (state.step_index > 88)
            throw codec_error("adpcm: step index out of range");

        const std::uint8_t* codes = packet.payload.data() + c * bytes_per_channel;
        for (std::size_t t = 0; t < samples; ++t) {
            const std::uint8_t byte = codes[t / 2];
            const std::uint8_t code = (t % 2 == 0) ? (byte >> 4) : (byte & 0x0F);
            const std::int16_t rec = adpcm_decode_sample(state, code);
            data[c * samples + t] = static_cast<std::int32_t>(rec) << shift;
        }
    }
    return SampleBlock::create(channels, samples, depth, sample_rate,
                               std::move(data));
}

}  // namespace aerosense
