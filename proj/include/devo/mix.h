// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Speech + noise mixture generation at a loudness-based SNR, and the
// manifest driver that builds corpora from it.

#ifndef DEVO_MIX_H_
#define DEVO_MIX_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "devo/audio.h"

namespace devo {

inline constexpr int kMixRate = 16000;
inline constexpr double kMixSnrLow = -5.0;
inline constexpr double kMixSnrHigh = 15.0;
inline constexpr double kPeakCeiling = 0.99;

struct MixSpec {
  std::filesystem::path speech_path;
  std::filesystem::path noise_path;
  std::optional<double> snr_db;  // drawn from U(-5, 15) when unset
  std::uint64_t seed = 0;
  // Outputs are written as float32 WAV when the path is non-empty.
  std::filesystem::path mixture_out;
  std::filesystem::path clean_out;
  std::filesystem::path noise_out;
};

struct Mixture {
  AudioBuffer mixture;
  AudioBuffer clean;
  AudioBuffer noise;     // g * fitted noise, after joint peak scaling
  double snr_db = 0.0;   // target
  double gain = 1.0;     // g applied to the fitted noise
  double peak_scale = 1.0;
};

// Deterministic uniform draw from [kMixSnrLow, kMixSnrHigh).
double sample_snr(std::uint64_t seed);

// Loops (at a zero crossing) or trims `noise` to `length` samples. Trimming
// starts at a seeded offset.
AudioBuffer fit_noise(const AudioBuffer& noise, std::size_t length, std::uint64_t seed);

// Core mixing on decoded buffers at a common rate. Throws kAbsentLoudness for
// gated-out speech or noise and kTooShort below one loudness block.
Mixture mix_buffers(const AudioBuffer& speech, const AudioBuffer& noise,
                    std::optional<double> snr_db, std::uint64_t seed);

// Reads both files (resampling to 16 kHz), mixes and writes requested outputs.
Mixture make_mixture(const MixSpec& spec);

// Per-line seed, independent of every other line.
std::uint64_t line_seed(std::uint64_t global_seed, std::uint64_t line_index);

struct ManifestEntry {
  std::size_t line = 0;  // 1-based
  std::string speech;
  std::string noise;
  std::optional<double> snr_db;
  std::string stem;
};

// One entry per non-blank, non-comment line. Throws kManifestSyntax.
ManifestEntry parse_manifest_line(const std::string& text, std::size_t line);

struct MixFailure {
  std::size_t line = 0;
  std::string message;
};

struct MixSummary {
  std::size_t successes = 0;
  std::vector<MixFailure> failures;

  std::size_t total() const { return successes + failures.size(); }
  bool ok() const { return failures.empty(); }
};

// Relative speech/noise paths and stems resolve against the manifest's
// directory. Outputs are <stem>.mix.wav, <stem>.clean.wav, <stem>.noise.wav.
MixSummary run_manifest(const std::filesystem::path& manifest, std::uint64_t seed);

}  // namespace devo

#endif  // DEVO_MIX_H_
