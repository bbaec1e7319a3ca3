#pragma once

#include <cstdint>

#include "aerosense/capture.hpp"

namespace aerosense {

// Field-like synthetic signals for tests, benchmarks, and demo captures.

// Blade-surface pressure: a large static offset per channel, slow
// atmospheric drift, a rotation-rate sinusoid whose phase and gain vary
// smoothly across channels, and white sensor noise. Adjacent channels are
// strongly correlated, the way taps along a chord line are.
struct PressureFieldParams {
    std::uint16_t channels = 40;
    std::uint32_t samples = 4096;
    std::uint32_t sample_rate = 100;
    std::uint8_t bit_depth = 24;
    double rotation_hz = 0.667;     // 40 rpm
    double base_level = 4200000.0;  // static pressure in sensor counts
    double drift_amplitude = 2000.0;
    double rotation_amplitude = 800.0;
    double noise_sigma = 6.0;
    std::uint64_t seed = 1;
};
Capture synth_pressure_field(const PressureFieldParams& params);

// Rotor-noise-like audio: a handful of tones over a pink-ish noise floor.
struct AudioToneParams {
    std::uint16_t channels = 1;
    std::uint32_t samples = 16384;
    std::uint32_t sample_rate = 16000;
    std::uint8_t bit_depth = 24;
    double full_scale_fraction = 0.5;
    std::uint64_t seed = 1;
};
Capture synth_audio_tones(const AudioToneParams& params);

}  // namespace aerosense
