#include "aerosense/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "aerosense/block.hpp"
#include "aerosense/errors.hpp"

namespace aerosense {

namespace {

std::int32_t quantize_to_depth(double v, int depth) {
    const auto hi = static_cast<double>((std::int64_t{1} << (depth - 1)) - 1);
    const auto lo = static_cast<double>(-(std::int64_t{1} << (depth - 1)));
    return static_cast<std::int32_t>(std::llround(std::clamp(v, lo, hi)));
}

}  // namespace

Capture synth_pressure_field(const PressureFieldParams& params) {
    if (params.channels == 0 || params.samples == 0)
        throw config_error("synthetic pressure: empty shape");

    std::mt19937_64 rng(params.seed);
    std::normal_distribution<double> noise(0.0, params.noise_sigma);

    Capture capture;
    capture.kind = CaptureKind::Pressure;
    capture.channels = params.channels;
    capture.sample_rate = params.sample_rate;
    capture.bit_depth = params.bit_depth;
    capture.data.resize(std::size_t{params.channels} * params.samples);

    const double w_rot =
        2.0 * std::numbers::pi * params.rotation_hz / params.sample_rate;
    const double w_drift = 2.0 * std::numbers::pi * 0.01 / params.sample_rate;

    for (std::size_t c = 0; c < params.channels; ++c) {
        const double gain = 1.0 + 0.03 * static_cast<double>(c);
        const double phase = 0.12 * static_cast<double>(c);
        const double offset = 40.0 * static_cast<double>(c);
        for (std::size_t t = 0; t < params.samples; ++t) {
            const double drift =
                params.drift_amplitude * std::sin(w_drift * static_cast<double>(t));
            const double rotation =
                params.rotation_amplitude * gain *
                std::sin(w_rot * static_cast<double>(t) + phase);
            const double v = params.base_level + offset + drift + rotation +
                             noise(rng);
            capture.data[c * params.samples + t] =
                quantize_to_depth(v, params.bit_depth);
        }
    }
    return capture;
}

Capture synth_audio_tones(const AudioToneParams& params) {
    if (params.channels == 0 || params.samples == 0)
        throw config_error("synthetic audio: empty shape");

    std::mt19937_64 rng(params.seed);
    std::normal_distribution<double> white(0.0, 1.0);

    Capture capture;
    capture.kind = CaptureKind::Audio;
    capture.channels = params.channels;
    capture.sample_rate = params.sample_rate;
    capture.bit_depth = params.bit_depth;
    capture.data.resize(std::size_t{params.channels} * params.samples);

    const double full_scale = static_cast<double>(
        (std::int64_t{1} << (params.bit_depth - 1)) - 1);
    const double amp = params.full_scale_fraction * full_scale;

    struct Tone {
        double hz, gain;
    };
    const Tone tones[] = {{500.0, 0.50}, {1560.0, 0.30}, {3125.0, 0.15},
                          {5030.0, 0.08}, {6910.0, 0.05}};

    for (std::size_t c = 0; c < params.channels; ++c) {
        // One-pole low-pass over white noise gives the pink-ish floor.
        double floor_state = 0.0;
        const double channel_phase = 0.4 * static_cast<double>(c);
        for (std::size_t t = 0; t < params.samples; ++t) {
            double v = 0.0;
            for (const Tone& tone : tones) {
                const double w =
                    2.0 * std::numbers::pi * tone.hz / params.sample_rate;
                v += amp * tone.gain *
                     std::sin(w * static_cast<double>(t) + channel_phase);
            }
            floor_state = 0.92 * floor_state + white(rng);
            v += 0.004 * amp * floor_state;
            capture.data[c * params.samples + t] =
                quantize_to_depth(v, params.bit_depth);
        }
    }
    return capture;
}

}  // namespace aerosense
