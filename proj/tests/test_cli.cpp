#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aerosense/capture.hpp"
#include "aerosense/errors.hpp"
#include "aerosense_cli/commands.hpp"
#include "aerosense_cli/container.hpp"
#include "aerosense_cli/pipeline.hpp"
#include "doctest.h"

using namespace aerosense;
using namespace aerosense::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("aerosense-cli-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Container small_container() {
    Capture capture;
    capture.kind = CaptureKind::Pressure;
    capture.channels = 2;
    capture.sample_rate = 100;
    capture.bit_depth = 16;
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2 * 200; ++i)
        capture.data.push_back(int(rng() % 200) - 100);
    CompressOptions options;
    options.codec = CodecId::PressureLl;
    options.block_samples = 128;
    return compress_capture(capture, options).container;
}

}  // namespace

TEST_CASE("containers survive a serialize/parse round trip") {
    Container original = small_container();
    REQUIRE(original.packets.size() == 2);

    auto bytes = serialize_container(original);
    Container parsed = parse_container(bytes);
    CHECK(parsed.packets.size() == original.packets.size());
    CHECK(parsed.pad_samples == original.pad_samples);
    CHECK(parsed.sample_rate == original.sample_rate);
    CHECK(parsed.kind == original.kind);
    for (std::size_t i = 0; i < parsed.packets.size(); ++i) {
        CHECK(parsed.packets[i].payload == original.packets[i].payload);
        CHECK(parsed.packets[i].original_size == original.packets[i].original_size);
    }
    // Canonical: re-serialization is byte-identical.
    CHECK(serialize_container(parsed) == bytes);
}

TEST_CASE("container corruption errors name the packet") {
    Container original = small_container();
    auto bytes = serialize_container(original);

    // 9-byte preamble, then each packet is a u32 length plus body.
    std::size_t first_len = bytes[9] | (bytes[10] << 8) | (bytes[11] << 16) |
                            (std::size_t(bytes[12]) << 24);
    std::size_t second_body = 9 + 4 + first_len + 4;

    auto truncated = bytes;
    truncated.resize(second_body + 2);  // mid-way through packet 1
    try {
        parse_container(truncated);
        FAIL("expected codec_error");
    } catch (const codec_error& e) {
        CHECK(std::string(e.what()).find("packet 1") != std::string::npos);
    }

    auto missing_length = bytes;
    missing_length.resize(second_body - 2);
    CHECK_THROWS_AS(parse_container(missing_length), codec_error);
}

TEST_CASE("foreign container versions are rejected, junk too") {
    auto bytes = serialize_container(small_container());

    auto wrong_version = bytes;
    wrong_version[4] = 2;
    try {
        parse_container(wrong_version);
        FAIL("expected codec_error");
    } catch (const codec_error& e) {
        CHECK(std::string(e.what()).find("version") != std::string::npos);
    }

    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS(parse_container(bad_magic), codec_error);

    auto trailing = bytes;
    trailing.push_back(0xAB);
    CHECK_THROWS_AS(parse_container(trailing), codec_error);
}

TEST_CASE("compress and decompress round-trip a pressure capture") {
    TempDir dir;
    std::ostringstream status;

    SynthArgs synth;
    synth.kind = "pressure";
    synth.output = dir.file("orig.csv");
    synth.seed = 5;
    REQUIRE(cmd_synth(synth, status) == 0);

    CompressArgs comp;
    comp.input = dir.file("orig.csv");
    comp.output = dir.file("bundle.asns");
    comp.codec = "pressure";
    REQUIRE(cmd_compress(comp, status) == 0);
    CHECK(status.str().find("mean_cr=") != std::string::npos);

    DecompressArgs dec;
    dec.input = dir.file("bundle.asns");
    dec.output = dir.file("round.csv");
    REQUIRE(cmd_decompress(dec, status) == 0);

    CHECK(slurp(dir.file("round.csv")) == slurp(dir.file("orig.csv")));
}

TEST_CASE("parallel compression matches the single-thread bytes") {
    TempDir dir;
    std::ostringstream status;

    SynthArgs synth;
    synth.kind = "pressure";
    synth.output = dir.file("orig.csv");
    synth.samples = 4096 * 3 + 100;  // force several blocks plus padding
    synth.seed = 11;
    REQUIRE(cmd_synth(synth, status) == 0);

    CompressArgs one;
    one.input = dir.file("orig.csv");
    one.output = dir.file("one.asns");
    one.jobs = 1;
    REQUIRE(cmd_compress(one, status) == 0);

    CompressArgs four = one;
    four.output = dir.file("four.asns");
    four.jobs = 4;
    REQUIRE(cmd_compress(four, status) == 0);

    CHECK(slurp(dir.file("one.asns")) == slurp(dir.file("four.asns")));
}

TEST_CASE("identical captures measure zero distortion") {
    TempDir dir;
    std::ostringstream status, out;

    SynthArgs synth;
    synth.kind = "pressure";
    synth.output = dir.file("orig.csv");
    synth.seed = 7;
    REQUIRE(cmd_synth(synth, status) == 0);

    MetricsArgs margs;
    margs.original = dir.file("orig.csv");
    margs.reconstructed = dir.file("orig.csv");
    margs.codec_label = "identity";
    REQUIRE(cmd_metrics(margs, out, status) == 0);

    std::istringstream csv(out.str());
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "dataset,codec,cr,nrmse,nmae,mape_pct,peak_mismatch_pct");
    int rows = 0;
    while (std::getline(csv, line)) {
        ++rows;
        // dataset,codec,cr, then four zero metrics
        auto after_cr = line.find(',', line.find(',', line.find(',') + 1) + 1);
        REQUIRE(after_cr != std::string::npos);
        std::istringstream fields(line.substr(after_cr + 1));
        double v;
        char comma;
        for (int i = 0; i < 4; ++i) {
            fields >> v;
            CHECK(v == doctest::Approx(0.0));
            fields >> comma;
        }
        CHECK(line.find("identity") != std::string::npos);
    }
    CHECK(rows >= 2);  // at least one block row plus the mean row
}

TEST_CASE("metrics refuses shape mismatches") {
    TempDir dir;
    std::ostringstream status, out;

    SynthArgs a;
    a.kind = "pressure";
    a.output = dir.file("a.csv");
    a.channels = 4;
    REQUIRE(cmd_synth(a, status) == 0);

    SynthArgs b = a;
    b.output = dir.file("b.csv");
    b.channels = 2;
    REQUIRE(cmd_synth(b, status) == 0);

    MetricsArgs margs;
    margs.original = dir.file("a.csv");
    margs.reconstructed = dir.file("b.csv");
    try {
        cmd_metrics(margs, out, status);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("shape mismatch") != std::string::npos);
    }
}

TEST_CASE("energy table reports break-even and savings") {
    std::ostringstream status, out;
    EnergyArgs args;
    args.preset = "aventa";
    args.codec = "pressure";
    args.cr = 2.12;
    REQUIRE(cmd_energy(args, out, status) == 0);

    std::istringstream csv(out.str());
    std::string header, row;
    REQUIRE(std::getline(csv, header));
    CHECK(header == "turbine,codec,cr,overhead,becr,pes_pct,beneficial");
    REQUIRE(std::getline(csv, row));

    std::vector<std::string> fields;
    std::istringstream split(row);
    std::string field;
    while (std::getline(split, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 7);
    CHECK(fields[0] == "aventa");
    CHECK(fields[1] == "pressure");
    CHECK(std::stod(fields[3]) == doctest::Approx(0.21875));
    CHECK(std::stod(fields[4]) == doctest::Approx(1.28));
    CHECK(std::stod(fields[5]) == doctest::Approx(30.955).epsilon(1e-3));
    CHECK(fields[6] == "yes");
    CHECK(status.str().find("warning") == std::string::npos);
}

TEST_CASE("ratios below break-even warn instead of failing") {
    std::ostringstream status, out;
    EnergyArgs args;
    args.cr = 1.1;  // below the 1.28 break-even
    CHECK(cmd_energy(args, out, status) == 0);
    CHECK(status.str().find("below break-even") != std::string::npos);
    CHECK(out.str().find(",no") != std::string::npos);
}

TEST_CASE("lifetime flag appends the power budget table") {
    std::ostringstream status, out;
    EnergyArgs args;
    args.cr = 4.0;
    args.lifetime = true;
    REQUIRE(cmd_energy(args, out, status) == 0);
    auto text = out.str();
    CHECK(text.find("avg_power_mw,lifetime_days") != std::string::npos);
    CHECK(text.find("aventa,") != std::string::npos);
    CHECK(text.find("dtu10mw,") != std::string::npos);
    // Median harvest sustains both nodes, the 95th percentile sustains neither.
    CHECK(text.find("yes,") != std::string::npos);
    CHECK(text.find("no,") != std::string::npos);
}

TEST_CASE("energy can measure the ratio from a bundle") {
    TempDir dir;
    std::ostringstream status, out;

    Container container = small_container();
    write_container(dir.file("bundle.asns"), container);

    EnergyArgs args;
    args.container = dir.file("bundle.asns");
    REQUIRE(cmd_energy(args, out, status) == 0);
    CHECK(out.str().find("aventa,pressure,") != std::string::npos);

    EnergyArgs neither;
    CHECK_THROWS_AS(cmd_energy(neither, out, status), config_error);
}

TEST_CASE("bandwidth table matches the sensor suite") {
    std::ostringstream status, out;
    REQUIRE(cmd_bandwidth(BandwidthArgs{}, out, status) == 0);
    auto text = out.str();
    CHECK(text.find("microphone,10,16000,24,3840000") != std::string::npos);
    CHECK(text.find("barometer,40,100,24,96000") != std::string::npos);
    CHECK(text.find("total,,,,4032000") != std::string::npos);
    CHECK(status.str().find("4.032") != std::string::npos);
}

TEST_CASE("simulate runs deterministically from a scenario file") {
    TempDir dir;
    {
        std::ofstream f(dir.path / "test.scenario");
        f << "hub_distance_m = 80\nrotor_radius_m = 5\nrot_speed_rpm = 30\n"
          << "shadowing_sigma_db = 1.5\nseed = 3\nduration_s = 2\n";
    }

    SimulateArgs args;
    args.scenario = dir.file("test.scenario");

    std::ostringstream out_a, out_b, status_a, status_b;
    REQUIRE(cmd_simulate(args, out_a, status_a) == 0);
    REQUIRE(cmd_simulate(args, out_b, status_b) == 0);
    CHECK(out_a.str() == out_b.str());
    CHECK(status_a.str() == status_b.str());
    CHECK(out_a.str().rfind("t,distance_m,", 0) == 0);
    CHECK(status_a.str().find("rtpc: mean_goodput_bps=") != std::string::npos);

    // A different seed changes the trace.
    SimulateArgs reseeded = args;
    reseeded.seed = 99;
    std::ostringstream out_c, status_c;
    REQUIRE(cmd_simulate(reseeded, out_c, status_c) == 0);
    CHECK(out_c.str() != out_a.str());
}

TEST_CASE("simulate baseline writes a second trace and a verdict") {
    TempDir dir;
    {
        std::ofstream f(dir.path / "test.scenario");
        f << "hub_distance_m = 60\nshadowing_sigma_db = 1\nseed = 4\n"
          << "duration_s = 1\n";
    }

    SimulateArgs args;
    args.scenario = dir.file("test.scenario");
    args.baseline = "fixed-max";
    args.output = dir.file("trace.csv");

    std::ostringstream out, status;
    REQUIRE(cmd_simulate(args, out, status) == 0);
    CHECK(fs::exists(dir.path / "trace.csv"));
    CHECK(fs::exists(dir.path / "trace.csv.baseline.csv"));
    CHECK(status.str().find("fixed-max: mean_goodput_bps=") != std::string::npos);
    CHECK(status.str().find("dominance=") != std::string::npos);

    SimulateArgs bad = args;
    bad.baseline = "loudest";
    CHECK_THROWS_AS(cmd_simulate(bad, out, status), config_error);
}

TEST_CASE("unknown codec and format names fail with hints") {
    TempDir dir;
    std::ostringstream status;

    SynthArgs synth;
    synth.kind = "pressure";
    synth.output = dir.file("orig.csv");
    REQUIRE(cmd_synth(synth, status) == 0);

    CompressArgs comp;
    comp.input = dir.file("orig.csv");
    comp.output = dir.file("x.asns");
    comp.codec = "zip";
    try {
        cmd_compress(comp, status);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("zip") != std::string::npos);
    }

    SynthArgs weird;
    weird.kind = "seismic";
    weird.output = dir.file("y.csv");
    CHECK_THROWS_AS(cmd_synth(weird, status), config_error);

    CompressArgs ok = comp;
    ok.codec = "pressure";
    REQUIRE(cmd_compress(ok, status) == 0);
    DecompressArgs dec;
    dec.input = dir.file("x.asns");
    dec.output = dir.file("z.csv");
    dec.format = "parquet";
    CHECK_THROWS_AS(cmd_decompress(dec, status), config_error);
}

TEST_CASE("lossy audio codecs round-trip through the pipeline") {
    TempDir dir;
    std::ostringstream status;

    SynthArgs synth;
    synth.kind = "audio";
    synth.output = dir.file("tone.csv");
    synth.seed = 2;
    REQUIRE(cmd_synth(synth, status) == 0);

    for (const char* codec : {"fft-hpf", "adpcm"}) {
        CAPTURE(codec);
        status.str("");
        CompressArgs comp;
        comp.input = dir.file("tone.csv");
        comp.output = dir.file("tone.asns");
        comp.codec = codec;
        REQUIRE(cmd_compress(comp, status) == 0);

        auto text = status.str();
        auto pos = text.find("mean_cr=");
        REQUIRE(pos != std::string::npos);
        double mean_cr = std::stod(text.substr(pos + 8));
        CHECK(mean_cr > 3.5);
        CHECK(mean_cr < 4.5);

        DecompressArgs dec;
        dec.input = dir.file("tone.asns");
        dec.output = dir.file("back.csv");
        REQUIRE(cmd_decompress(dec, status) == 0);

        Capture original = read_capture(dir.file("tone.csv"));
        Capture decoded = read_capture(dir.file("back.csv"));
        CHECK(decoded.channels == original.channels);
        CHECK(decoded.samples_per_channel() == original.samples_per_channel());
        CHECK(decoded.sample_rate == original.sample_rate);
        CHECK(decoded.kind == CaptureKind::Audio);
    }
}
