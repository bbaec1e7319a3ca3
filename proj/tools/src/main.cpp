#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "aerosense/config.hpp"
#include "aerosense/errors.hpp"
#include "aerosense_cli/commands.hpp"

namespace {

using aerosense::KeyValueConfig;

// --config supplies fallback values for any option not given on the command
// line, keyed by the option's long name; "<command>.<name>" wins over the
// bare name so one file can serve several commands.
class ConfigFallback {
public:
    ConfigFallback(const std::optional<KeyValueConfig>& cfg, CLI::App* cmd)
        : cfg_(cfg), cmd_(cmd) {}

    template <typename T>
    void apply(const std::string& flag, T& target) const {
        if (!cfg_ || cmd_->count(flag) > 0) return;
        std::string key = flag.substr(flag.find_first_not_of('-'));
        std::string scoped = cmd_->get_name() + "." + key;
        if (cfg_->has(scoped))
            fetch(scoped, target);
        else if (cfg_->has(key))
            fetch(key, target);
    }

private:
    void fetch(const std::string& key, double& t) const {
        t = cfg_->get_double(key, t);
    }
    void fetch(const std::string& key, int& t) const {
        t = static_cast<int>(cfg_->get_int(key, t));
    }
    void fetch(const std::string& key, std::string& t) const {
        t = cfg_->get_string(key, t);
    }

    const std::optional<KeyValueConfig>& cfg_;
    CLI::App* cmd_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Sensor-node telemetry toolkit: block codecs for pressure and "
        "audio captures, distortion metrics, transmission energy models, "
        "and a rotor link power-control simulator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string output;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path,
                   "key = value file with option defaults");
    app.add_option("--output", output,
                   "destination file for the command's main output");
    std::uint64_t seed_value = 0;
    auto* seed_opt =
        app.add_option("--seed", seed_value, "override any RNG seed");

    aerosense::cli::CompressArgs compress;
    auto* c = app.add_subcommand("compress",
                                 "encode a capture into a packet container");
    c->add_option("input", compress.input, "capture file (CSV or binary)")
        ->required();
    c->add_option("--codec", compress.codec, "raw | pressure | fft-hpf | adpcm");
    c->add_option("--block-samples", compress.block_samples,
                  "samples per block (power of two; 0 = per-kind default)");
    c->add_option("--order", compress.order, "pressure predictor order (0-2)");
    c->add_option("--cr", compress.cr, "fft-hpf target compression ratio");
    c->add_option("--cutoff-hz", compress.cutoff_hz, "fft-hpf high-pass cutoff");
    c->add_option("--adpcm-shift", compress.adpcm_shift,
                  "adpcm pre-shift (default: depth-16)");
    c->add_option("--jobs", compress.jobs, "parallel block encoders");

    aerosense::cli::DecompressArgs decompress;
    auto* d = app.add_subcommand("decompress",
                                 "decode a container back into a capture");
    d->add_option("input", decompress.input, "container file")->required();
    d->add_option("--format", decompress.format, "auto | csv | bin");

    aerosense::cli::MetricsArgs metrics;
    auto* m = app.add_subcommand(
        "metrics", "per-block distortion report between two captures");
    m->add_option("original", metrics.original, "reference capture")->required();
    m->add_option("reconstructed", metrics.reconstructed, "decoded capture")
        ->required();
    m->add_option("--kind", metrics.kind, "auto | pressure | audio");
    m->add_option("--dataset", metrics.dataset, "label for the report rows");
    m->add_option("--codec", metrics.codec_label, "codec label for the rows");
    m->add_option("--cr", metrics.cr, "compression ratio to stamp on rows");
    m->add_option("--block-samples", metrics.block_samples,
                  "analysis block size (0 = per-kind default)");
    m->add_option("--cutoff-hz", metrics.cutoff_hz,
                  "audio reports ignore spectra below this");

    aerosense::cli::EnergyArgs energy;
    auto* e = app.add_subcommand(
        "energy", "break-even / saving analysis for compress-then-send");
    e->add_option("--preset", energy.preset, "aventa | dtu10mw");
    e->add_option("--codec", energy.codec, "pressure | fft-hpf | adpcm");
    e->add_option("--cr", energy.cr, "compression ratio to evaluate");
    e->add_option("--container", energy.container,
                  "measure the ratio from this container instead");
    e->add_flag("--lifetime", energy.lifetime,
                "append battery lifetime and solar sustainability rows");

    aerosense::cli::SimulateArgs simulate;
    auto* s = app.add_subcommand(
        "simulate", "run the link power-control simulator on a scenario");
    s->add_option("scenario", simulate.scenario, "scenario key = value file")
        ->required();
    s->add_option("--duration", simulate.duration,
                  "seconds to simulate (0 = scenario default)");
    s->add_option("--baseline", simulate.baseline,
                  "also run a baseline policy: fixed-max");

    aerosense::cli::BandwidthArgs bandwidth;
    app.add_subcommand("bandwidth",
                       "raw acquisition bandwidth of the sensor suite");

    aerosense::cli::SynthArgs synth;
    auto* y = app.add_subcommand("synth", "generate a synthetic capture");
    y->add_option("--kind", synth.kind, "pressure | audio");
    y->add_option("--channels", synth.channels, "channel count (0 = default)");
    y->add_option("--samples", synth.samples, "samples per channel (0 = default)");
    y->add_option("--rate", synth.rate, "sample rate in Hz (0 = default)");
    y->add_option("--depth", synth.depth, "bit depth (0 = default)");

    CLI11_PARSE(app, argc, argv);

    try {
        std::optional<KeyValueConfig> cfg;
        if (!config_path.empty()) cfg = KeyValueConfig::load(config_path);
        if (seed_opt->count() > 0) seed = seed_value;

        CLI::App* active = app.get_subcommands().front();
        ConfigFallback fallback(cfg, active);

        if (active == c) {
            fallback.apply("--codec", compress.codec);
            fallback.apply("--block-samples", compress.block_samples);
            fallback.apply("--order", compress.order);
            fallback.apply("--cr", compress.cr);
            fallback.apply("--cutoff-hz", compress.cutoff_hz);
            fallback.apply("--adpcm-shift", compress.adpcm_shift);
            fallback.apply("--jobs", compress.jobs);
            compress.output = output;
            return aerosense::cli::cmd_compress(compress, std::cerr);
        }
        if (active == d) {
            fallback.apply("--format", decompress.format);
            decompress.output = output;
            return aerosense::cli::cmd_decompress(decompress, std::cerr);
        }
        if (active == m) {
            fallback.apply("--kind", metrics.kind);
            fallback.apply("--dataset", metrics.dataset);
            fallback.apply("--codec", metrics.codec_label);
            fallback.apply("--cr", metrics.cr);
            fallback.apply("--block-samples", metrics.block_samples);
            fallback.apply("--cutoff-hz", metrics.cutoff_hz);
            metrics.output = output;
            return aerosense::cli::cmd_metrics(metrics, std::cout, std::cerr);
        }
        if (active == e) {
            fallback.apply("--preset", energy.preset);
            fallback.apply("--codec", energy.codec);
            fallback.apply("--cr", energy.cr);
            fallback.apply("--container", energy.container);
            energy.output = output;
            return aerosense::cli::cmd_energy(energy, std::cout, std::cerr);
        }
        if (active == s) {
            fallback.apply("--duration", simulate.duration);
            fallback.apply("--baseline", simulate.baseline);
            simulate.seed = seed;
            simulate.output = output;
            return aerosense::cli::cmd_simulate(simulate, std::cout, std::cerr);
        }
        if (active == y) {
            fallback.apply("--kind", synth.kind);
            fallback.apply("--channels", synth.channels);
            fallback.apply("--samples", synth.samples);
            fallback.apply("--rate", synth.rate);
            fallback.apply("--depth", synth.depth);
            synth.seed = seed;
            synth.output = output;
            return aerosense::cli::cmd_synth(synth, std::cerr);
        }
        bandwidth.output = output;
        return aerosense::cli::cmd_bandwidth(bandwidth, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
