#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace aerosense::cli {

// Each command takes its parsed arguments plus the streams it may write to:
// `out` carries machine-readable CSV (redirected to args.output when set),
// `status` carries the human summary. All return a process exit code and
// signal errors via exceptions, which the front end turns into nonzero exits.

struct CompressArgs {
    std::string input;
    std::string output;
    std::string codec = "pressure";  // raw | pressure | fft-hpf | adpcm
    int block_samples = 0;           // 0: 4096 pressure, 16384 audio
    int order = 1;                   // pressure predictor order
    double cr = 4.0;                 // fft-hpf target ratio
    double cutoff_hz = 100.0;        // fft-hpf high-pass cutoff
    int adpcm_shift = -1;            // <0: derived from bit depth
    int jobs = 1;
};
int cmd_compress(const CompressArgs& args, std::ostream& status);

struct DecompressArgs {
    std::string input;
    std::string output;
    std::string format = "auto";  // auto | csv | bin
};
int cmd_decompress(const DecompressArgs& args, std::ostream& status);

struct MetricsArgs {
    std::string original;
    std::string reconstructed;
    std::string kind = "auto";  // auto | pressure | audio
    std::string dataset = "capture";
    std::string codec_label = "unknown";
    double cr = 0.0;      // stamped into the report rows
    int block_samples = 0;
    double cutoff_hz = 100.0;  // audio reports ignore spectra below this
    std::string output;
};
int cmd_metrics(const MetricsArgs& args, std::ostream& out, std::ostream& status);

struct EnergyArgs {
    std::string preset = "aventa";   // aventa | dtu10mw
    std::string codec = "pressure";  // pressure | fft-hpf | adpcm
    double cr = 0.0;                 // required unless container is given
    std::string container;           // measure CR from this bundle instead
    bool lifetime = false;
    std::string output;
};
int cmd_energy(const EnergyArgs& args, std::ostream& out, std::ostream& status);

struct SimulateArgs {
    std::string scenario;
    double duration = 0.0;  // 0: the scenario file's duration
    std::optional<std::uint64_t> seed;
    std::string baseline;  // "" or "fixed-max"
    std::string output;
};
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& status);

struct BandwidthArgs {
    std::string output;
};
int cmd_bandwidth(const BandwidthArgs& args, std::ostream& out,
                  std::ostream& status);

struct SynthArgs {
    std::string kind = "pressure";  // pressure | audio
    std::string output;
    int channels = 0;  // 0: kind default
    int samples = 0;
    int rate = 0;
    int depth = 0;
    std::optional<std::uint64_t> seed;
};
int cmd_synth(const SynthArgs& args, std::ostream& status);

}  // namespace aerosense::cli
