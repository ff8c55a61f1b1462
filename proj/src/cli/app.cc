// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>

#include "devo/cli.h"
#include "devo/mix.h"

namespace devo::cli {
namespace {

void configure_logging(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, /*force_flush=*/true);
  auto logger = std::make_shared<spdlog::logger>("devo", sink);
  logger->set_pattern("devo: %l: %v");
  spdlog::level::level_enum level = spdlog::level::info;
  if (const char* env = std::getenv("DEVO_LOG"); env != nullptr && *env != '\0') {
    level = spdlog::level::from_str(env);
  }
  logger->set_level(level);
  spdlog::set_default_logger(logger);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  configure_logging(err);

  CLI::App app{"DeVo speech enhancement engine", "devo"};
  app.set_config("--config", "", "key=value file supplying flag values ([section] per subcommand)");
  app.require_subcommand(1);

  EnhanceOptions enhance;
  std::string encoding = "float32";
  auto* c_enhance = app.add_subcommand("enhance", "Enhance a WAV file");
  c_enhance->add_option("--model", enhance.model, "Weight bundle")->required();
  c_enhance->add_option("--in", enhance.input, "Noisy input WAV")->required();
  c_enhance->add_option("--out", enhance.output, "Enhanced output WAV")->required();
  c_enhance->add_option("--mode", enhance.mode, "offline or streaming")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Mode>{{"offline", Mode::kOffline},
                                      {"streaming", Mode::kStreaming}},
          CLI::ignore_case));
  c_enhance->add_option("--encoding", encoding, "Output sample format")
      ->check(CLI::IsMember({"float32", "pcm16"}));

  std::filesystem::path stream_model;
  auto* c_stream = app.add_subcommand("stream", "Enhance raw float32 16 kHz mono stdin to stdout");
  c_stream->add_option("--model", stream_model, "Weight bundle")->required();

  std::filesystem::path mix_manifest;
  std::uint64_t mix_seed = 0;
  auto* c_mix = app.add_subcommand("mix", "Build speech/noise mixtures from a manifest");
  c_mix->add_option("--manifest,manifest", mix_manifest, "speech<TAB>noise<TAB>snr|rand<TAB>stem")
      ->required();
  c_mix->add_option("--seed", mix_seed, "Global seed");

  EvalOptions eval;
  std::string metric_list = "stoi,snr,lsm,pcm,mel_l1";
  std::string external_list;
  std::filesystem::path eval_out;
  std::filesystem::path resynth;
  auto* c_eval = app.add_subcommand("eval", "Score enhanced audio and write a CSV report");
  c_eval->add_option("--manifest,manifest", eval.manifest, "id<TAB>clean<TAB>noisy<TAB>enhanced")
      ->required();
  c_eval->add_option("--metrics", metric_list, "Comma-separated: stoi,snr,lsm,pcm,mel_l1");
  c_eval->add_option("--external", external_list, "Comma-separated empty columns to append");
  c_eval->add_option("--out", eval_out, "CSV output path (stdout when omitted)");
  c_eval->add_option("--resynth-reference", resynth,
                     "Score against the clean signal re-synthesized by this bundle");

  std::filesystem::path inspect_model;
  auto* c_inspect = app.add_subcommand("inspect", "Print a bundle's config, tensors and sizes");
  c_inspect->add_option("--model,model", inspect_model, "Weight bundle")->required();

  std::filesystem::path adapt_model;
  std::filesystem::path adapt_out;
  std::size_t new_in = 0;
  auto* c_adapt = app.add_subcommand("adapt", "Re-initialize the input layer for new_in channels");
  c_adapt->add_option("--model", adapt_model, "Source bundle")->required();
  c_adapt->add_option("--new-in", new_in, "Input channels of the new modality")
      ->required()
      ->check(CLI::PositiveNumber);
  c_adapt->add_option("--out", adapt_out, "Destination bundle")->required();

  InitOptions init;
  bool non_causal = false;
  auto* c_init = app.add_subcommand("init", "Write a randomly initialized default bundle");
  c_init->add_option("--out", init.out, "Destination bundle")->required();
  c_init->add_option("--seed", init.seed, "Initialization seed");
  c_init->add_flag("--non-causal", non_causal, "Symmetric padding (offline only)");
  c_init->add_option("--feature-dim", init.feature_dim, "Encoder channels")
      ->check(CLI::PositiveNumber);
  c_init->add_option("--vocoder-channels", init.vocoder_channels, "Vocoder base channels")
      ->check(CLI::PositiveNumber);
  c_init->add_option("--gain", init.gain, "Weight scale relative to 1/sqrt(fan_in)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*c_enhance) {
      enhance.encoding = encoding == "pcm16" ? WavEncoding::kPcm16 : WavEncoding::kFloat32;
      const EnhanceResult r = cmd_enhance(enhance);
      spdlog::info("{} samples ({:.3f} s) in {:.3f} s, real-time factor {:.4f}", r.samples,
                   r.audio_seconds, r.compute_seconds, r.real_time_factor());
      return 0;
    }
    if (*c_stream) {
      const StreamResult r = cmd_stream(stream_model, in, out);
      const double audio = static_cast<double>(r.blocks) * 0.01;
      spdlog::info("{} blocks, real-time factor {:.4f}", r.blocks,
                   audio > 0 ? r.compute_seconds / audio : 0.0);
      return 0;
    }
    if (*c_mix) {
      const MixSummary s = run_manifest(mix_manifest, mix_seed);
      for (const auto& f : s.failures) spdlog::error("line {}: {}", f.line, f.message);
      out << s.successes << " mixed, " << s.failures.size() << " failed\n";
      return s.ok() ? 0 : 1;
    }
    if (*c_eval) {
      eval.metrics = CLI::detail::split(metric_list, ',');
      if (!external_list.empty()) eval.external_columns = CLI::detail::split(external_list, ',');
      if (!eval_out.empty()) eval.out = eval_out;
      if (!resynth.empty()) eval.resynth_model = resynth;
      const EvalResult r = cmd_eval(eval, out);
      spdlog::info("{} evaluated, {} failed", r.evaluated, r.failures.size());
      return r.failures.empty() ? 0 : 1;
    }
    if (*c_inspect) {
      cmd_inspect(inspect_model, out);
      return 0;
    }
    if (*c_adapt) {
      cmd_adapt(adapt_model, new_in, adapt_out);
      return 0;
    }
    if (*c_init) {
      init.causal = !non_causal;
      cmd_init(init);
      return 0;
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}

}  // namespace devo::cli
