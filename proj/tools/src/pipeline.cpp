#include "aerosense_cli/pipeline.hpp"

#include <atomic>
#include <exception>
#include <string>
#include <thread>

#include "aerosense/adpcm.hpp"
#include "aerosense/errors.hpp"

namespace aerosense::cli {

std::uint32_t default_block_samples(CaptureKind kind) {
    return kind == CaptureKind::Audio ? 16384u : 4096u;
}

std::vector<SampleBlock> split_blocks(const Capture& capture,
                                      std::uint32_t block_samples,
                                      std::uint32_t& pad_samples_out) {
    std::size_t total = capture.samples_per_channel();
    if (capture.channels == 0 || total == 0)
        throw config_error("split_blocks: empty capture");
    if (block_samples < 64 || block_samples > 32768 ||
        (block_samples & (block_samples - 1)) != 0)
        throw config_error(
            "split_blocks: block size must be a power of two in [64, 32768]");

    std::size_t blocks = (total + block_samples - 1) / block_samples;
    pad_samples_out =
        static_cast<std::uint32_t>(blocks * block_samples - total);

    std::vector<SampleBlock> out;
    out.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        std::size_t begin = b * block_samples;
        std::size_t have = std::min<std::size_t>(block_samples, total - begin);
        std::vector<std::int32_t> data;
        data.reserve(std::size_t{capture.channels} * block_samples);
        for (std::size_t c = 0; c < capture.channels; ++c) {
            const std::int32_t* channel = capture.data.data() + c * total;
            data.insert(data.end(), channel + begin, channel + begin + have);
            // Tail blocks hold the last real sample until the block boundary.
            data.insert(data.end(), block_samples - have, channel[total - 1]);
        }
        out.push_back(SampleBlock::create(
            capture.channels, static_cast<std::uint16_t>(block_samples),
            capture.bit_depth, capture.sample_rate, std::move(data)));
    }
    return out;
}

namespace {

CompressedPacket encode_one(const SampleBlock& block,
                            const CompressOptions& options, CaptureKind kind) {
    switch (options.codec) {
        case CodecId::Raw:
            return encode_raw_block(block, static_cast<std::uint8_t>(kind));
        case CodecId::PressureLl:
            return encode_pressure_block(block, options.pressure);
        case CodecId::FftHpf:
            return encode_audio_fft_hpf(block, options.audio);
        case CodecId::Adpcm:
            return adpcm_encode(block, options.adpcm_shift);
    }
    throw config_error("compress: unknown codec id");
}

}  // namespace

CompressOutcome compress_capture(const Capture& capture,
                                 const CompressOptions& options) {
    std::uint32_t block_samples = options.block_samples != 0
                                      ? options.block_samples
                                      : default_block_samples(capture.kind);
    CompressOutcome outcome;
    auto blocks = split_blocks(capture, block_samples, outcome.container.pad_samples);
    outcome.container.sample_rate = capture.sample_rate;
    outcome.container.kind = static_cast<std::uint8_t>(capture.kind);
    outcome.container.packets.resize(blocks.size());

    int jobs = std::clamp(options.jobs, 1,
                          int(std::max(1u, std::thread::hardware_concurrency())));
    if (jobs == 1 || blocks.size() < 2) {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            outcome.container.packets[i] = encode_one(blocks[i], options, capture.kind);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> failures(blocks.size());
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < blocks.size();
                 i = next.fetch_add(1)) {
                try {
                    outcome.container.packets[i] =
                        encode_one(blocks[i], options, capture.kind);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        std::size_t workers = std::min<std::size_t>(jobs, blocks.size());
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        for (auto& failure : failures)
            if (failure) std::rethrow_exception(failure);
    }

    double sum = 0.0;
    for (const auto& packet : outcome.container.packets) {
        outcome.block_crs.push_back(packet.compression_ratio());
        sum += outcome.block_crs.back();
    }
    outcome.mean_cr = sum / static_cast<double>(outcome.block_crs.size());
    return outcome;
}

Capture decompress_container(const Container& container) {
    if (container.packets.empty())
        throw codec_error("decompress: container holds no packets");

    std::vector<SampleBlock> blocks;
    blocks.reserve(container.packets.size());
    for (std::size_t i = 0; i < container.packets.size(); ++i) {
        const auto& packet = container.packets[i];
        try {
            switch (packet.codec) {
                case CodecId::Raw:
                    blocks.push_back(decode_raw_block(packet));
                    break;
                case CodecId::PressureLl:
                    blocks.push_back(
                        decode_pressure_block(packet, container.sample_rate));
                    break;
                case CodecId::FftHpf:
                    blocks.push_back(decode_audio_fft_hpf(packet));
                    break;
                case CodecId::Adpcm:
                    blocks.push_back(adpcm_decode(packet, container.sample_rate));
                    break;
            }
        } catch (const std::exception& e) {
            throw codec_error("decompress: packet " + std::to_string(i) + ": " +
                              e.what());
        }
    }

    const SampleBlock& first = blocks.front();
    std::size_t total = 0;
    for (const auto& block : blocks) {
        if (block.channels != first.channels || block.bit_depth != first.bit_depth)
            throw codec_error("decompress: blocks disagree on shape");
        total += block.samples_per_channel;
    }
    if (container.pad_samples >= blocks.back().samples_per_channel &&
        container.pad_samples != 0)
        throw codec_error("decompress: pad length exceeds the last block");
    std::size_t kept = total - container.pad_samples;

    Capture capture;
    capture.kind = container.kind == 1 ? CaptureKind::Audio : CaptureKind::Pressure;
    capture.channels = first.channels;
    capture.sample_rate =
        container.sample_rate != 0 ? container.sample_rate : first.sample_rate;
    capture.bit_depth = first.bit_depth;
    capture.data.reserve(kept * first.channels);
    for (std::size_t c = 0; c < first.channels; ++c) {
        std::size_t written = 0;
        for (const auto& block : blocks) {
            auto channel = block.channel(c);
            std::size_t take =
                std::min<std::size_t>(channel.size(), kept - written);
            capture.data.insert(capture.data.end(), channel.begin(),
                                channel.begin() + take);
            written += take;
            if (written == kept) break;
        }
    }
    return capture;
}

}  // namespace aerosense::cli
