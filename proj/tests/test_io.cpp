#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "aerosense/capture.hpp"
#include "aerosense/config.hpp"
#include "aerosense/errors.hpp"
#include "doctest.h"

using namespace aerosense;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("aerosense-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Capture sample_capture() {
    Capture c;
    c.kind = CaptureKind::Pressure;
    c.channels = 3;
    c.sample_rate = 100;
    c.bit_depth = 20;
    std::mt19937_64 rng(8);
    for (int i = 0; i < 3 * 257; ++i)
        c.data.push_back(std::int32_t(rng() % (1 << 20)) - (1 << 19));
    return c;
}

}  // namespace

TEST_CASE("key-value files parse values, comments, and blank lines") {
    auto cfg = KeyValueConfig::parse(
        "# header comment\n"
        "alpha = 3.5\n"
        "\n"
        "beta= -7\n"
        "name =  hello world \n");
    CHECK(cfg.get_double("alpha", 0.0) == 3.5);
    CHECK(cfg.get_int("beta", 0) == -7);
    CHECK(cfg.get_string("name", "") == "hello world");
    CHECK(cfg.get_double("missing", 1.25) == 1.25);
    CHECK(cfg.has("alpha"));
    CHECK_FALSE(cfg.has("gamma"));
}

TEST_CASE("malformed config lines report their line number") {
    try {
        KeyValueConfig::parse("ok = 1\nnot a pair\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(KeyValueConfig::parse(" = 3\n"), config_error);

    // An empty value is legal as a string but not as a number.
    auto cfg = KeyValueConfig::parse("x =\n");
    CHECK(cfg.get_string("x", "?") == "");
    CHECK_THROWS_AS(cfg.get_double("x", 0.0), config_error);
}

TEST_CASE("numeric getters reject non-numeric and trailing junk") {
    auto cfg = KeyValueConfig::parse("a = 3.5x\nb = hello\nc = 1e3\n");
    CHECK_THROWS_AS(cfg.get_double("a", 0.0), config_error);
    CHECK_THROWS_AS(cfg.get_int("b", 0), config_error);
    CHECK(cfg.get_double("c", 0.0) == 1000.0);
}

TEST_CASE("unknown keys are listed together") {
    auto cfg = KeyValueConfig::parse("good = 1\nbad1 = 2\nbad2 = 3\n");
    try {
        cfg.require_known_keys({"good"});
        FAIL("expected config_error");
    } catch (const config_error& e) {
        std::string message = e.what();
        CHECK(message.find("bad1") != std::string::npos);
        CHECK(message.find("bad2") != std::string::npos);
        CHECK(message.find("good") == std::string::npos);
    }
}

TEST_CASE("capture csv round-trips exactly") {
    TempDir dir;
    auto original = sample_capture();
    auto path = dir.path / "capture.csv";
    write_capture_csv(path, original);
    auto loaded = read_capture(path);
    CHECK(loaded.kind == original.kind);
    CHECK(loaded.channels == original.channels);
    CHECK(loaded.sample_rate == original.sample_rate);
    CHECK(loaded.bit_depth == original.bit_depth);
    CHECK(loaded.data == original.data);
}

TEST_CASE("capture binary round-trips exactly and sniffs by magic") {
    TempDir dir;
    auto original = sample_capture();
    original.kind = CaptureKind::Audio;
    auto path = dir.path / "capture.bin";
    write_capture_binary(path, original);
    auto loaded = read_capture(path);
    CHECK(loaded.kind == CaptureKind::Audio);
    CHECK(loaded.data == original.data);
}

TEST_CASE("csv header errors are specific") {
    TempDir dir;
    auto write = [&](const char* name, const std::string& text) {
        std::ofstream f(dir.path / name);
        f << text;
        return dir.path / name;
    };
    CHECK_THROWS_AS(read_capture(write("a.csv", "1,2\n3,4\n")), codec_error);
    CHECK_THROWS_AS(
        read_capture(write("b.csv", "# channels=2 rate=100\n1,2\n")),
        codec_error);  // depth missing
    CHECK_THROWS_AS(
        read_capture(write(
            "c.csv", "# channels=2 rate=100 depth=16 color=blue\n1,2\n")),
        codec_error);  // unknown field
    CHECK_THROWS_AS(
        read_capture(write("d.csv", "# channels=2 rate=100 depth=16\n1\n")),
        codec_error);  // short row
    CHECK_THROWS_AS(
        read_capture(write("e.csv", "# channels=2 rate=100 depth=8\n300,1\n")),
        codec_error);  // sample exceeds depth
}

TEST_CASE("truncated binary captures throw truncated_error") {
    TempDir dir;
    auto original = sample_capture();
    auto path = dir.path / "capture.bin";
    write_capture_binary(path, original);

    auto bytes_size = fs::file_size(path);
    fs::resize_file(path, bytes_size - 7);
    CHECK_THROWS_AS(read_capture(path), truncated_error);
    fs::resize_file(path, 10);  // inside the header
    CHECK_THROWS_AS(read_capture(path), truncated_error);
}

TEST_CASE("missing files fail loudly") {
    CHECK_THROWS(read_capture("/nonexistent/nowhere.csv"));
    CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/nowhere.cfg"),
                    config_error);
}
