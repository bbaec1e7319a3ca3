#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "aerosense/adpcm.hpp"
#include "aerosense/audio_codec.hpp"
#include "aerosense/bitstream.hpp"
#include "aerosense/block.hpp"
#include "aerosense/fft.hpp"
#include "aerosense/pressure_codec.hpp"
#include "aerosense/rice.hpp"
#include "aerosense/rtpc.hpp"
#include "aerosense/synthetic.hpp"

namespace {

using namespace aerosense;

std::vector<std::uint64_t> geometric_values(std::size_t n, double p,
                                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::geometric_distribution<std::uint32_t> geom(p);
    std::vector<std::uint64_t> values(n);
    for (auto& v : values) v = geom(rng);
    return values;
}

SampleBlock block_from(Capture capture) {
    auto samples = static_cast<std::uint16_t>(capture.samples_per_channel());
    return SampleBlock::create(capture.channels, samples, capture.bit_depth,
                               capture.sample_rate, std::move(capture.data));
}

SampleBlock pressure_block() { return block_from(synth_pressure_field({})); }

SampleBlock audio_block() { return block_from(synth_audio_tones({})); }

LinkScenario small_turbine_link() {
    LinkScenario link;
    link.hub_distance_m = 43.0;
    link.rotor_radius_m = 6.5;
    link.rot_speed_rpm = 40.0;
    link.shadowing_sigma_db = 2.0;
    link.rng_seed = 7;
    return link;
}

void rice_encode_block(benchmark::State& state) {
    auto values = geometric_values(4096, 0.1, 9);
    double mean = 0.0;
    for (auto v : values) mean += static_cast<double>(v);
    int m = estimate_rice_param(mean / double(values.size()), 0.5);
    for (auto _ : state) {
        BitCursor out;
        rice_encode(values, m, out);
        benchmark::DoNotOptimize(out.bytes().data());
    }
    state.SetItemsProcessed(state.iterations() * int64_t(values.size()));
}
BENCHMARK(rice_encode_block);

void rice_decode_block(benchmark::State& state) {
    auto values = geometric_values(4096, 0.1, 9);
    double mean = 0.0;
    for (auto v : values) mean += static_cast<double>(v);
    int m = estimate_rice_param(mean / double(values.size()), 0.5);
    BitCursor encoded;
    rice_encode(values, m, encoded);
    const auto bytes = encoded.bytes();
    for (auto _ : state) {
        BitCursor in(bytes);
        auto decoded = rice_decode(in, values.size(), m);
        benchmark::DoNotOptimize(decoded.data());
    }
    state.SetItemsProcessed(state.iterations() * int64_t(values.size()));
}
BENCHMARK(rice_decode_block);

void pressure_encode(benchmark::State& state) {
    SampleBlock block = pressure_block();
    for (auto _ : state) {
        auto packet = encode_pressure_block(block);
        benchmark::DoNotOptimize(packet.payload.data());
    }
    state.SetBytesProcessed(state.iterations() *
                            int64_t(block_raw_bytes(block)));
}
BENCHMARK(pressure_encode);

void pressure_decode(benchmark::State& state) {
    SampleBlock block = pressure_block();
    auto packet = encode_pressure_block(block);
    for (auto _ : state) {
        auto decoded = decode_pressure_block(packet, block.sample_rate);
        benchmark::DoNotOptimize(decoded.data.data());
    }
    state.SetBytesProcessed(state.iterations() *
                            int64_t(block_raw_bytes(block)));
}
BENCHMARK(pressure_decode);

void fft_1024(benchmark::State& state) {
    SampleBlock block = audio_block();
    auto samples = block.channel(0).subspan(0, 1024);
    for (auto _ : state) {
        auto spectrum = forward_spectrum(samples, block.sample_rate);
        benchmark::DoNotOptimize(spectrum.coefficients.data());
    }
    state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(fft_1024);

void audio_fft_hpf_encode(benchmark::State& state) {
    SampleBlock block = audio_block();
    for (auto _ : state) {
        auto packet = encode_audio_fft_hpf(block);
        benchmark::DoNotOptimize(packet.payload.data());
    }
    state.SetBytesProcessed(state.iterations() *
                            int64_t(block_raw_bytes(block)));
}
BENCHMARK(audio_fft_hpf_encode);

void audio_adpcm_encode(benchmark::State& state) {
    SampleBlock block = audio_block();
    for (auto _ : state) {
        auto packet = adpcm_encode(block);
        benchmark::DoNotOptimize(packet.payload.data());
    }
    state.SetBytesProcessed(state.iterations() *
                            int64_t(block_raw_bytes(block)));
}
BENCHMARK(audio_adpcm_encode);

void link_sim_one_second(benchmark::State& state) {
    LinkScenario link = small_turbine_link();
    ControllerConfig config;
    for (auto _ : state) {
        auto result = simulate(link, config, 1.0);
        benchmark::DoNotOptimize(result.summary.total_radio_energy_j);
    }
    state.SetItemsProcessed(state.iterations() * 50);  // connection events
}
BENCHMARK(link_sim_one_second);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
