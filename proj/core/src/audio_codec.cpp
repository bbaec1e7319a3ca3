#include "aerosense/audio_codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "aerosense/errors.hpp"
#include "aerosense/rice.hpp"

namespace aerosense {

namespace {

constexpr int kStepTableRiceM = 2;
constexpr int kMinStepCode = -127;  // -128 is the all-zero band sentinel
constexpr int kMaxStepCode = 127;

struct Layout {
    std::size_t k0 = 0;        // first retained bin
    std::size_t retained = 0;  // retained complex bins, k0..N/2
    std::size_t bands = 0;
    std::size_t band_values = 0;  // interleaved values per full band
};

Layout make_layout(std::uint16_t cutoff_hz, std::uint32_t n_fft,
                   std::uint32_t rate, std::uint16_t band_size) {
    Layout layout;
    layout.k0 = high_pass_cutoff_bin(cutoff_hz, n_fft, rate);
    layout.retained = n_fft / 2 - layout.k0 + 1;
    layout.band_values = 2u * band_size;
    layout.bands = (layout.retained + band_size - 1) / band_size;
    return layout;
}

std::int32_t clamp_to_depth(double v, int depth) {
    const auto hi = static_cast<double>((std::int64_t{1} << (depth - 1)) - 1);
    const auto lo = static_cast<double>(-(std::int64_t{1} << (depth - 1)));
    return static_cast<std::int32_t>(std::llround(std::clamp(v, lo, hi)));
}

}  // namespace

double step_from_code(int code) {
    return std::exp2(static_cast<double>(code) / 4.0);
}

int snap_step_code(double raw_step, double band_mag, int levels) {
    int code = static_cast<int>(std::ceil(4.0 * std::log2(raw_step)));
    code = std::max(code, kMinStepCode);
    const auto max_index = static_cast<double>(levels / 2 - 1);
    while (std::llround(band_mag / step_from_code(code)) >
           static_cast<long long>(max_index)) {
        if (++code > kMaxStepCode)
            throw codec_error("band quantizer: step code exceeds 8-bit range");
    }
    return code;
}

BandQuant band_quantize(std::span<const double> values, int d) {
    if (d < 1 || d > 24)
        throw config_error("band quantizer: index width must be in [1, 24]");

    double mag = 0.0;
    for (double v : values) mag = std::max(mag, std::abs(v));

    BandQuant q;
    if (mag == 0.0) return q;  // sentinel, no indices

    const int levels = 1 << d;
    const double raw_step = 2.0 * mag / static_cast<double>(levels);
    const int code = snap_step_code(raw_step, mag, levels);
    const double step = step_from_code(code);

    q.step_code = static_cast<std::int8_t>(code);
    q.indices.resize(values.size());
    const auto lo = static_cast<long long>(-(levels / 2));
    const auto hi = static_cast<long long>(levels / 2 - 1);
    for (std::size_t i = 0; i < values.size(); ++i)
        q.indices[i] = static_cast<std::int32_t>(
            std::clamp(std::llround(values[i] / step), lo, hi));
    return q;
}

void step_table_encode(std::span<const std::int8_t> codes, BitCursor& out) {
    if (codes.empty())
        throw config_error("step table: at least one band required");
    out.write_bits(static_cast<std::uint8_t>(codes[0]), 8);

    std::size_t i = 1;
    while (i < codes.size()) {
        const int delta = codes[i] - codes[i - 1];
        if (delta == 0) {
            std::size_t run = 1;
            while (i + run < codes.size() && codes[i + run] == codes[i + run - 1])
                ++run;
            if (run >= 3) {
                rice_encode_value(0, kStepTableRiceM, out);
                rice_encode_value(run - 3, kStepTableRiceM, out);
                i += run;
                continue;
            }
        }
        rice_encode_value(zigzag_encode(delta) + 1, kStepTableRiceM, out);
        ++i;
    }
}

std::vector<std::int8_t> step_table_decode(BitCursor& in, std::size_t count) {
    if (count == 0) throw config_error("step table: at least one band required");
    std::vector<std::int8_t> codes;
    codes.reserve(count);
    codes.push_back(static_cast<std::int8_t>(
        static_cast<std::uint8_t>(in.read_bits(8))));

    while (codes.size() < count) {
        const std::uint64_t token = rice_decode_value(in, kStepTableRiceM);
        if (token == 0) {
            const std::uint64_t run = rice_decode_value(in, kStepTableRiceM) + 3;
            if (codes.size() + run > count)
                throw codec_error("step table: zero run overflows band count");
            codes.insert(codes.end(), run, codes.back());
            continue;
        }
        const std::int64_t delta = zigzag_decode(token - 1);
        const std::int64_t next = codes.back() + delta;
        if (next < -128 || next > 127)
            throw codec_error("step table: delta leaves 8-bit code range");
        codes.push_back(static_cast<std::int8_t>(next));
    }
    return codes;
}

CompressedPacket encode_audio_fft_hpf(const SampleBlock& block,
                                      const FftHpfConfig& config) {
    if (!(config.cr_target >= 1.0))
        throw config_error("fft-hpf: cr target must be >= 1");
    const long d_raw = std::lround(block.bit_depth / config.cr_target);
    if (d_raw < 1)
        throw config_error("fft-hpf: cr target leaves less than one index bit");
    const int d = static_cast<int>(std::min(d_raw, 24l));
    if (config.band_size == 0)
        throw config_error("fft-hpf: band size must be positive");
    if (block.sample_rate == 0)
        throw config_error("fft-hpf: block needs a sample rate for the cutoff");
    const long cutoff_l = std::lround(config.cutoff_hz);
    if (cutoff_l < 0 || cutoff_l > 0xFFFF)
        throw config_error("fft-hpf: cutoff does not fit the header field");
    const auto cutoff = static_cast<std::uint16_t>(cutoff_l);

    const Layout layout = make_layout(cutoff, block.samples_per_channel,
                                      block.sample_rate, config.band_size);

    CompressedPacket packet;
    packet.codec = CodecId::FftHpf;
    packet.original_size = block_raw_bytes(block);

    auto& h = packet.header;
    h.insert(h.end(), kPacketMagic, kPacketMagic + 4);
    h.push_back(kPacketVersion);
    h.push_back(static_cast<std::uint8_t>(CodecId::FftHpf));
    put_u16(h, block.channels);
    put_u16(h, block.samples_per_channel);
    h.push_back(block.bit_depth);
    h.push_back(static_cast<std::uint8_t>(d));
    put_u16(h, cutoff);
    put_u16(h, config.band_size);
    put_u32(h, block.sample_rate);

    BitCursor bits;
    std::vector<double> values(2 * layout.retained);
    for (std::size_t c = 0; c < block.channels; ++c) {
        const auto spectrum = forward_spectrum(block.channel(c), block.sample_rate);
        for (std::size_t k = 0; k < layout.retained; ++k) {
            values[2 * k] = spectrum.coefficients[layout.k0 + k].real();
            values[2 * k + 1] = spectrum.coefficients[layout.k0 + k].imag();
        }

        std::vector<std::int8_t> codes(layout.bands);
        std::vector<BandQuant> quants(layout.bands);
        for (std::size_t b = 0; b < layout.bands; ++b) {
            const std::size_t begin = b * layout.band_values;
            const std::size_t end =
                std::min(begin + layout.band_values, values.size());
            quants[b] = band_quantize(
                std::span<const double>{values.data() + begin, end - begin}, d);
            codes[b] = quants[b].step_code;
        }

        step_table_encode(codes, bits);
        bits.align_write();
        for (const auto& q : quants) {
            const std::uint64_t mask = (std::uint64_t{1} << d) - 1;
            for (std::int32_t index : q.indices)
                bits.write_bits(static_cast<std::uint64_t>(
                                    static_cast<std::int64_t>(index)) &
                                    mask,
                                d);
        }
        bits.align_write();
    }
    packet.payload = bits.take_bytes();
    return packet;
}

FftHpfHeader parse_fft_hpf_header(const CompressedPacket& packet) {
    const auto& h = packet.header;
    if (packet.codec != CodecId::FftHpf || h.size() != 20 ||
        std::memcmp(h.data(), kPacketMagic, 4) != 0)
        throw codec_error("fft-hpf: bad packet header");
    FftHpfHeader header;
    header.channels = get_u16(h, 6);
    header.n_fft = get_u16(h, 8);
    header.bit_depth = h[10];
    header.quant_bits = h[11];
    header.cutoff_hz = get_u16(h, 12);
    header.band_size = get_u16(h, 14);
    header.sample_rate = get_u32(h, 16);
    if (header.quant_bits < 1 || header.quant_bits > 24)
        throw codec_error("fft-hpf: index width out of range");
    if (header.band_size == 0) throw codec_error("fft-hpf: zero band size");
    return header;
}

FftHpfDecoded decode_audio_fft_hpf_detail(const CompressedPacket& packet) {
    const FftHpfHeader header = parse_fft_hpf_header(packet);
    const Layout layout = make_layout(header.cutoff_hz, header.n_fft,
                                      header.sample_rate, header.band_size);
    const int d = header.quant_bits;

    FftHpfDecoded result;
    result.block.channels = header.channels;
    result.block.samples_per_channel = header.n_fft;
    result.block.bit_depth = header.bit_depth;
    result.block.sample_rate = header.sample_rate;
    result.block.data.resize(std::size_t{header.channels} * header.n_fft);

    BitCursor bits{packet.payload};
    for (std::size_t c = 0; c < header.channels; ++c) {
        const auto codes = step_table_decode(bits, layout.bands);
        bits.align_read();

        std::vector<double> values(2 * layout.retained, 0.0);
        for (std::size_t b = 0; b < layout.bands; ++b) {
            if (codes[b] == kZeroBandSentinel) continue;
            const double step = step_from_code(codes[b]);
            const std::size_t begin = b * layout.band_values;
            const std::size_t end =
                std::min(begin + layout.band_values, values.size());
            for (std::size_t i = begin; i < end; ++i) {
                const std::uint64_t u = bits.read_bits(d);
                const int shift = 64 - d;
                const auto index =
                    static_cast<std::int64_t>(u << shift) >> shift;
                values[i] = static_cast<double>(index) * step;
            }
        }
        bits.align_read();

        SpectralBlock spectrum;
        spectrum.n_fft = header.n_fft;
        spectrum.sample_rate = header.sample_rate;
        spectrum.coefficients.assign(header.n_fft / 2 + 1, {0.0, 0.0});
        for (std::size_t k = 0; k < layout.retained; ++k)
            spectrum.coefficients[layout.k0 + k] = {values[2 * k],
                                                    values[2 * k + 1]};

        const auto x = inverse_spectrum(spectrum);
        for (std::size_t t = 0; t < x.size(); ++t)
            result.block.data[c * header.n_fft + t] =
                clamp_to_depth(x[t], header.bit_depth);
        result.spectra.push_back(std::move(spectrum));
        result.step_codes.emplace_back(codes.begin(), codes.end());
    }

    result.block = SampleBlock::create(
        header.channels, header.n_fft, header.bit_depth, header.sample_rate,
        std::move(result.block.data));
    return result;
}

SampleBlock decode_audio_fft_hpf(const CompressedPacket& packet) {
    return decode_audio_fft_hpf_detail(packet).block;
}

}  // namespace aerosense
