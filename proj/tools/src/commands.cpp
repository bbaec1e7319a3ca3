#include "aerosense_cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "aerosense/adpcm.hpp"
#include "aerosense/block.hpp"
#include "aerosense/capture.hpp"
#include "aerosense/config.hpp"
#include "aerosense/energy.hpp"
#include "aerosense/errors.hpp"
#include "aerosense/fft.hpp"
#include "aerosense/metrics.hpp"
#include "aerosense/rtpc.hpp"
#include "aerosense/synthetic.hpp"
#include "aerosense_cli/pipeline.hpp"

namespace aerosense::cli {

namespace {

CodecId codec_from_name(const std::string& name) {
    if (name == "raw") return CodecId::Raw;
    if (name == "pressure") return CodecId::PressureLl;
    if (name == "fft-hpf") return CodecId::FftHpf;
    if (name == "adpcm") return CodecId::Adpcm;
    throw config_error("unknown codec '" + name +
                       "' (expected raw, pressure, fft-hpf, or adpcm)");
}

// Routes CSV either to args.output or to the command's default stream.
template <typename Fn>
int with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
    if (path.empty()) {
        fn(fallback);
        return 0;
    }
    std::ofstream file(path);
    if (!file) throw config_error("cannot open " + path + " for writing");
    fn(file);
    if (!file) throw config_error("write failed for " + path);
    return 0;
}

bool wants_csv(const std::string& path, const std::string& format) {
    if (format == "csv") return true;
    if (format == "bin") return false;
    if (format == "auto") return path.ends_with(".csv");
    throw config_error("unknown capture format '" + format +
                       "' (expected auto, csv, or bin)");
}

std::string trimmed(double v) {
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
}

}  // namespace

int cmd_compress(const CompressArgs& args, std::ostream& status) {
    if (args.output.empty()) throw config_error("compress: --output is required");
    Capture capture = read_capture(args.input);

    CompressOptions options;
    options.codec = codec_from_name(args.codec);
    options.block_samples = static_cast<std::uint32_t>(std::max(args.block_samples, 0));
    options.pressure.predictor_order = args.order;
    options.audio.cr_target = args.cr;
    options.audio.cutoff_hz = args.cutoff_hz;
    if (args.adpcm_shift >= 0) options.adpcm_shift = args.adpcm_shift;
    options.jobs = args.jobs;

    CompressOutcome outcome = compress_capture(capture, options);
    write_container(args.output, outcome.container);

    std::uint64_t stored = 0, original = 0;
    for (const auto& packet : outcome.container.packets) {
        stored += packet.stored_size();
        original += packet.original_size;
    }
    status << "compressed " << args.input << ": codec=" << args.codec
           << " blocks=" << outcome.container.packets.size()
           << " pad=" << outcome.container.pad_samples
           << " raw=" << original << "B stored=" << stored
           << "B mean_cr=" << std::fixed << std::setprecision(3)
           << outcome.mean_cr << "\nper-block cr:";
    for (double value : outcome.block_crs)
        status << ' ' << std::fixed << std::setprecision(3) << value;
    status << '\n';
    return 0;
}

int cmd_decompress(const DecompressArgs& args, std::ostream& status) {
    if (args.output.empty())
        throw config_error("decompress: --output is required");
    Container container = read_container(args.input);
    Capture capture = decompress_container(container);
    if (wants_csv(args.output, args.format))
        write_capture_csv(args.output, capture);
    else
        write_capture_binary(args.output, capture);
    status << "decompressed " << container.packets.size() << " packets -> "
           << capture.channels << " ch x " << capture.samples_per_channel()
           << " samples @ " << capture.sample_rate << " Hz into "
           << args.output << '\n';
    return 0;
}

namespace {

struct BlockMetrics {
    MetricReport report;
};

MetricReport block_metrics(const SampleBlock& orig, const SampleBlock& rec,
                           bool audio_kind, double cutoff_hz) {
    MetricReport r;
    r.nrmse = nrmse(std::span<const std::int32_t>(orig.data),
                    std::span<const std::int32_t>(rec.data));
    r.nmae = nmae(std::span<const std::int32_t>(orig.data),
                  std::span<const std::int32_t>(rec.data));

    SpectralBlock so = forward_spectrum(orig.channel(0), orig.sample_rate);
    SpectralBlock sr = forward_spectrum(rec.channel(0), rec.sample_rate);
    if (audio_kind) {
        // The codec drops everything below the cutoff by design; judging
        // those bins would measure the design choice, not the quantizer.
        std::size_t k0 = high_pass_cutoff_bin(cutoff_hz, so.n_fft, so.sample_rate);
        for (std::size_t k = 0; k < k0 && k < so.coefficients.size(); ++k) {
            so.coefficients[k] = 0.0;
            sr.coefficients[k] = 0.0;
        }
    }
    r.mape_pct = spectral_mape(so.coefficients, sr.coefficients);
    r.peak_mismatch_pct =
        peak_location_mismatch(so.coefficients, sr.coefficients).mismatch_pct;
    return r;
}

}  // namespace

int cmd_metrics(const MetricsArgs& args, std::ostream& out, std::ostream& status) {
    Capture original = read_capture(args.original);
    Capture recon = read_capture(args.reconstructed);
    if (original.channels != recon.channels ||
        original.samples_per_channel() != recon.samples_per_channel() ||
        original.bit_depth != recon.bit_depth)
        throw config_error(
            "metrics: shape mismatch (" + std::to_string(original.channels) +
            " ch x " + std::to_string(original.samples_per_channel()) + " x " +
            std::to_string(int(original.bit_depth)) + "b vs " +
            std::to_string(recon.channels) + " ch x " +
            std::to_string(recon.samples_per_channel()) + " x " +
            std::to_string(int(recon.bit_depth)) + "b)");

    bool audio_kind;
    if (args.kind == "auto")
        audio_kind = original.kind == CaptureKind::Audio;
    else
        audio_kind = capture_kind_from_name(args.kind) == CaptureKind::Audio;

    std::uint32_t block_samples =
        args.block_samples > 0
            ? static_cast<std::uint32_t>(args.block_samples)
            : default_block_samples(audio_kind ? CaptureKind::Audio
                                               : CaptureKind::Pressure);
    std::uint32_t pad = 0;
    auto orig_blocks = split_blocks(original, block_samples, pad);
    auto rec_blocks = split_blocks(recon, block_samples, pad);

    std::vector<MetricReport> rows;
    MetricReport mean;
    for (std::size_t b = 0; b < orig_blocks.size(); ++b) {
        MetricReport r = block_metrics(orig_blocks[b], rec_blocks[b], audio_kind,
                                       args.cutoff_hz);
        r.dataset = args.dataset + "/b" + std::to_string(b);
        r.codec = args.codec_label;
        r.cr = args.cr;
        mean.nrmse += r.nrmse;
        mean.nmae += r.nmae;
        mean.mape_pct += r.mape_pct;
        mean.peak_mismatch_pct += r.peak_mismatch_pct;
        rows.push_back(std::move(r));
    }
    auto n = static_cast<double>(rows.size());
    mean.dataset = args.dataset + "/mean";
    mean.codec = args.codec_label;
    mean.cr = args.cr;
    mean.nrmse /= n;
    mean.nmae /= n;
    mean.mape_pct /= n;
    mean.peak_mismatch_pct /= n;
    rows.push_back(std::move(mean));

    int rc = with_output(args.output, out, [&](std::ostream& csv) {
        csv << kMetricCsvHeader << '\n';
        for (const auto& row : rows) csv << metric_csv_row(row) << '\n';
    });
    status << "metrics: compared " << orig_blocks.size() << " blocks of "
           << block_samples << " samples" << (audio_kind ? " (audio bands)" : "")
           << '\n';
    return rc;
}

int cmd_energy(const EnergyArgs& args, std::ostream& out, std::ostream& status) {
    EnergyProfile profile = presets::profile(args.preset, args.codec);

    double cr = args.cr;
    if (!args.container.empty()) {
        Container container = read_container(args.container);
        std::uint64_t stored = 0, original = 0;
        for (const auto& packet : container.packets) {
            stored += packet.stored_size();
            original += packet.original_size;
        }
        if (stored == 0) throw config_error("energy: container holds no data");
        cr = static_cast<double>(original) / static_cast<double>(stored);
    }
    if (cr <= 0.0)
        throw config_error("energy: provide --cr or --container");

    auto break_even = becr(profile);
    double saving = pes(profile, cr);
    bool beneficial = saving > 0.0;

    int rc = with_output(args.output, out, [&](std::ostream& csv) {
        csv << "turbine,codec,cr,overhead,becr,pes_pct,beneficial\n";
        csv << args.preset << ',' << args.codec << ',' << trimmed(cr) << ','
            << trimmed(profile.overhead()) << ','
            << (break_even ? trimmed(*break_even) : std::string()) << ','
            << trimmed(saving * 100.0) << ',' << (beneficial ? "yes" : "no")
            << '\n';
        if (args.lifetime) {
            csv << "\nturbine,avg_power_mw,lifetime_days,median_sustainable,"
                   "median_harvest_mw,p95_sustainable,p95_harvest_mw\n";
            for (const char* turbine : {"aventa", "dtu10mw"}) {
                PowerBudget budget = presets::budget(turbine);
                auto median = self_sustainable(presets::solar_median(), budget);
                auto p95 = self_sustainable(presets::solar_p95(), budget);
                csv << turbine << ',' << trimmed(average_power_w(budget) * 1e3)
                    << ',' << trimmed(estimate_lifetime_days(budget)) << ','
                    << (median.sustainable ? "yes" : "no") << ','
                    << trimmed(median.harvested_w * 1e3) << ','
                    << (p95.sustainable ? "yes" : "no") << ','
                    << trimmed(p95.harvested_w * 1e3) << '\n';
            }
        }
    });

    if (!beneficial && break_even)
        status << "warning: cr " << trimmed(cr) << " is below break-even "
               << trimmed(*break_even) << "; compressing costs energy here\n";
    if (!break_even)
        status << "warning: compression overhead >= 1; no ratio breaks even\n";
    status << "energy: " << args.preset << '/' << args.codec << " cr="
           << trimmed(cr) << " pes=" << trimmed(saving * 100.0) << "%\n";
    return rc;
}

namespace {

void write_trace(std::ostream& csv, const SimResult& result) {
    csv << "t,distance_m,rssi_aero_dbm,rssi_filtered_dbm,tx_power_dbm,boost_db,"
           "per,goodput_bps,queue_fill,energy_j\n";
    csv << std::setprecision(10);
    for (const auto& row : result.trace) {
        csv << row.t << ',' << row.distance_m << ',' << row.rssi_aero_dbm << ','
            << row.rssi_filtered_dbm << ',' << row.tx_power_dbm << ','
            << row.boost_db << ',' << row.per << ',' << row.goodput_bps << ','
            << row.queue_fill << ',' << row.radio_energy_j << '\n';
    }
}

void write_summary(std::ostream& status, const char* label,
                   const SimSummary& s) {
    status << label << ": mean_goodput_bps=" << trimmed(s.mean_goodput_bps)
           << " mean_per=" << trimmed(s.mean_per)
           << " mean_tx_dbm=" << trimmed(s.mean_tx_dbm)
           << " total_energy_j=" << trimmed(s.total_radio_energy_j)
           << " energy_per_byte_nj=" << trimmed(s.energy_per_byte_j * 1e9)
           << " dropped_bytes=" << trimmed(s.dropped_bytes) << '\n';
}

}  // namespace

int cmd_simulate(const SimulateArgs& args, std::ostream& out,
                 std::ostream& status) {
    if (!args.baseline.empty() && args.baseline != "fixed-max")
        throw config_error("simulate: unknown baseline '" + args.baseline +
                           "' (expected fixed-max)");

    SimScenario scenario = load_scenario(KeyValueConfig::load(args.scenario));
    if (args.seed) scenario.link.rng_seed = *args.seed;
    double duration = args.duration > 0.0 ? args.duration : scenario.duration_s;

    ControllerConfig config;
    SimResult rtpc = simulate(scenario.link, config, duration, PowerPolicy::Rtpc);
    int rc = with_output(args.output, out,
                         [&](std::ostream& csv) { write_trace(csv, rtpc); });
    write_summary(status, "rtpc", rtpc.summary);

    if (!args.baseline.empty()) {
        SimResult fixed =
            simulate(scenario.link, config, duration, PowerPolicy::FixedMax);
        if (!args.output.empty()) {
            std::ofstream file(args.output + ".baseline.csv");
            if (!file)
                throw config_error("cannot open " + args.output +
                                   ".baseline.csv for writing");
            write_trace(file, fixed);
        }
        write_summary(status, "fixed-max", fixed.summary);
        status << "dominance="
               << (rtpc.summary.total_radio_energy_j <=
                           fixed.summary.total_radio_energy_j
                       ? "yes"
                       : "no")
               << '\n';
    }
    return rc;
}

int cmd_bandwidth(const BandwidthArgs& args, std::ostream& out,
                  std::ostream& status) {
    SensorSuite suite = SensorSuite::default_suite();
    std::uint64_t total = compute_raw_bandwidth(suite);
    int rc = with_output(args.output, out, [&](std::ostream& csv) {
        csv << "kind,count,sample_rate_hz,bit_depth,bandwidth_bps\n";
        for (const auto& entry : suite.entries)
            csv << entry.kind << ',' << entry.count << ',' << entry.sample_rate
                << ',' << int(entry.bit_depth) << ',' << entry_bandwidth(entry)
                << '\n';
        csv << "total,,,," << total << '\n';
    });
    status << "raw acquisition bandwidth: " << trimmed(double(total) / 1e6)
           << " Mbit/s\n";
    return rc;
}

int cmd_synth(const SynthArgs& args, std::ostream& status) {
    if (args.output.empty()) throw config_error("synth: --output is required");
    Capture capture;
    if (args.kind == "pressure") {
        PressureFieldParams params;
        if (args.channels > 0) params.channels = static_cast<std::uint16_t>(args.channels);
        if (args.samples > 0) params.samples = static_cast<std::uint32_t>(args.samples);
        if (args.rate > 0) params.sample_rate = static_cast<std::uint32_t>(args.rate);
        if (args.depth > 0) params.bit_depth = static_cast<std::uint8_t>(args.depth);
        if (args.seed) params.seed = *args.seed;
        capture = synth_pressure_field(params);
    } else if (args.kind == "audio") {
        AudioToneParams params;
        if (args.channels > 0) params.channels = static_cast<std::uint16_t>(args.channels);
        if (args.samples > 0) params.samples = static_cast<std::uint32_t>(args.samples);
        if (args.rate > 0) params.sample_rate = static_cast<std::uint32_t>(args.rate);
        if (args.depth > 0) params.bit_depth = static_cast<std::uint8_t>(args.depth);
        if (args.seed) params.seed = *args.seed;
        capture = synth_audio_tones(params);
    } else {
        throw config_error("synth: unknown kind '" + args.kind +
                           "' (expected pressure or audio)");
    }
    if (wants_csv(args.output, "auto"))
        write_capture_csv(args.output, capture);
    else
        write_capture_binary(args.output, capture);
    status << "wrote " << args.kind << " capture: " << capture.channels
           << " ch x " << capture.samples_per_channel() << " samples @ "
           << capture.sample_rate << " Hz into " << args.output << '\n';
    return 0;
}

}  // namespace aerosense::cli
