// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// The `devo` command line: enhance, stream, mix, eval, inspect, adapt, init.

#ifndef DEVO_CLI_H_
#define DEVO_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "devo/audio.h"

namespace devo::cli {

enum class Mode { kOffline, kStreaming };

struct EnhanceOptions {
  std::filesystem::path model;
  std::filesystem::path input;
  std::filesystem::path output;
  Mode mode = Mode::kOffline;
  WavEncoding encoding = WavEncoding::kFloat32;
};

struct EnhanceResult {
  std::size_t samples = 0;
  double audio_seconds = 0.0;
  double compute_seconds = 0.0;
  double real_time_factor() const {
    return audio_seconds > 0.0 ? compute_seconds / audio_seconds : 0.0;
  }
};

struct StreamResult {
  std::uint64_t blocks = 0;
  std::size_t dropped_bytes = 0;
  double compute_seconds = 0.0;
};

struct EvalOptions {
  std::filesystem::path manifest;  // id<TAB>clean<TAB>noisy<TAB>enhanced
  std::vector<std::string> metrics;
  std::vector<std::string> external_columns;
  std::optional<std::filesystem::path> out;  // stdout when unset
  // Re-synthesizes the clean reference through this model before scoring.
  std::optional<std::filesystem::path> resynth_model;
};

struct EvalResult {
  std::size_t evaluated = 0;
  std::vector<std::string> failures;
};

struct InitOptions {
  std::filesystem::path out;
  std::uint64_t seed = 0;
  bool causal = true;
  int feature_dim = 256;
  int vocoder_channels = 128;
  float gain = 1.0f;
};

EnhanceResult cmd_enhance(const EnhanceOptions& opts);
StreamResult cmd_stream(const std::filesystem::path& model, std::istream& in, std::ostream& out);
EvalResult cmd_eval(const EvalOptions& opts, std::ostream& out);
void cmd_inspect(const std::filesystem::path& model, std::ostream& out);
void cmd_adapt(const std::filesystem::path& model, std::size_t new_in,
               const std::filesystem::path& out);
void cmd_init(const InitOptions& opts);

// Parses argv and dispatches. Diagnostics go to `err`; returns the exit
// status (0 only when every item succeeded).
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace devo::cli

#endif  // DEVO_CLI_H_
