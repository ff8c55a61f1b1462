// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "devo/cli.h"
#include "devo/error.h"
#include "devo/metrics.h"
#include "devo/model.h"
#include "devo/weights.h"

namespace devo::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

AudioBuffer at_rate(AudioBuffer x, int rate) {
  if (x.sample_rate() == rate) return x;
  spdlog::info("resampling {} Hz input to {} Hz", x.sample_rate(), rate);
  return resample(x, rate);
}

AudioBuffer enhance_streaming(const Model& model, const AudioBuffer& x) {
  const std::size_t block = model.block_samples();
  const auto in = x.samples();
  std::vector<float> out;
  out.reserve(in.size() + block);
  std::vector<float> buf(block);
  std::vector<float> y(block);
  StreamSession session = model.open_stream();
  for (std::size_t pos = 0; pos < in.size(); pos += block) {
    const std::size_t n = std::min(block, in.size() - pos);
    std::fill(buf.begin(), buf.end(), 0.0f);
    std::copy_n(in.begin() + static_cast<std::ptrdiff_t>(pos), n, buf.begin());
    session.push_block(buf, y);
    out.insert(out.end(), y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
  }
  return AudioBuffer(std::move(out), x.sample_rate());
}

std::vector<std::string> split_tabs(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = s.find('\t', start);
    out.push_back(s.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

EnhanceResult cmd_enhance(const EnhanceOptions& opts) {
  BuildOptions build;
  build.require_streaming = opts.mode == Mode::kStreaming;
  const Model model = load_model(opts.model, build);
  const AudioBuffer noisy = at_rate(read_wav(opts.input), model.config().sample_rate);

  const auto t0 = Clock::now();
  const AudioBuffer enhanced = opts.mode == Mode::kStreaming
                                   ? enhance_streaming(model, noisy)
                                   : model.enhance_offline(noisy);
  EnhanceResult result;
  result.compute_seconds = seconds_since(t0);
  result.samples = enhanced.size();
  result.audio_seconds = noisy.duration_seconds();
  write_wav(opts.output, enhanced, opts.encoding);
  return result;
}

StreamResult cmd_stream(const std::filesystem::path& model_path, std::istream& in,
                        std::ostream& out) {
  BuildOptions build;
  build.require_streaming = true;
  const Model model = load_model(model_path, build);
  StreamSession session = model.open_stream();
  std::vector<float> block(session.block_samples());
  std::vector<float> y(block.size());

  StreamResult result;
  for (;;) {
    std::size_t trailing = 0;
    const std::size_t got = read_raw_block(in, block, &trailing);
    if (got < block.size()) {
      result.dropped_bytes = got * sizeof(float) + trailing;
      if (result.dropped_bytes > 0) {
        spdlog::warn("dropping {} trailing bytes (not a whole {}-byte block)",
                     result.dropped_bytes, block.size() * sizeof(float));
      }
      break;
    }
    for (float v : block) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFinite,
                    "non-finite sample in block " + std::to_string(result.blocks));
      }
    }
    const auto t0 = Clock::now();
    session.push_block(block, y);
    result.compute_seconds += seconds_since(t0);
    write_raw_block(out, y);
    out.flush();
    ++result.blocks;
  }
  return result;
}

EvalResult cmd_eval(const EvalOptions& opts, std::ostream& out) {
  std::vector<Metric> metrics;
  for (const auto& name : opts.metrics) metrics.push_back(metric_from_string(name));
  std::optional<Model> resynth;
  if (opts.resynth_model) resynth = load_model(*opts.resynth_model);

  std::ifstream in(opts.manifest);
  if (!in) throw Error(ErrorCode::kFileNotFound, opts.manifest.string());
  const auto base = opts.manifest.parent_path();

  EvalResult result;
  MetricReport report = evaluate({}, metrics, opts.external_columns);
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty() || text[0] == '#') continue;
    try {
      const auto f = split_tabs(text);
      if (f.size() != 4) {
        throw Error(ErrorCode::kManifestSyntax,
                    "expected id, clean, noisy, enhanced separated by tabs");
      }
      AudioBuffer clean = read_wav(resolve(base, f[1]));
      if (resynth) clean = resynth->enhance_offline(at_rate(clean, resynth->config().sample_rate));
      std::vector<LabeledTriple> one;
      one.push_back({f[0], EnhancementTriple(clean, read_wav(resolve(base, f[2])),
                                             read_wav(resolve(base, f[3])))});
      MetricReport r = evaluate(one, metrics, opts.external_columns);
      report.rows.push_back(std::move(r.rows.front()));
      ++result.evaluated;
    } catch (const std::exception& e) {
      result.failures.push_back("line " + std::to_string(line) + ": " + e.what());
      spdlog::error("{}", result.failures.back());
    }
  }

  const std::string csv = report.to_csv();
  if (opts.out) {
    std::ofstream f(*opts.out, std::ios::binary);
    f << csv;
    if (!f) throw Error(ErrorCode::kIo, "cannot write " + opts.out->string());
  } else {
    out << csv;
  }
  return result;
}

void cmd_inspect(const std::filesystem::path& model_path, std::ostream& out) {
  const WeightBundle bundle = load_bundle(model_path);
  const ModelConfig config = bundle.config();
  out << "format version: " << bundle.version << '\n';
  out << "config:\n" << config.to_json() << '\n';
  out << "tensors: " << bundle.tensors.size() << '\n';
  for (const Tensor& t : bundle.tensors) {
    out << "  " << t.name << " [";
    for (std::size_t i = 0; i < t.shape.size(); ++i) out << (i ? ", " : "") << t.shape[i];
    out << "]\n";
  }
  out << "parameters: " << bundle.parameter_count() << '\n';
  out << "encoder parameters: " << config.encoder_parameter_count() << '\n';
  out << "vocoder parameters: " << config.parameter_count() - config.encoder_parameter_count()
      << '\n';
  out << "encoder hop: " << config.encoder_hop() << " samples\n";
  out << "causal: " << (config.causal ? "yes" : "no") << '\n';
  const auto issues = validate_bundle(bundle, config);
  out << "valid: " << (issues.empty() ? "yes" : "no") << '\n';
  for (const auto& m : issues) out << "  " << to_string(m.kind) << ": " << m.message << '\n';
}

void cmd_adapt(const std::filesystem::path& model_path, std::size_t new_in,
               const std::filesystem::path& out) {
  save_bundle(adapt_bundle(load_bundle(model_path), new_in), out);
}

void cmd_init(const InitOptions& opts) {
  const ModelConfig config =
      ModelConfig::desk_default(opts.causal, opts.feature_dim, opts.vocoder_channels);
  save_bundle(random_bundle(config, opts.seed, opts.gain), opts.out);
}

}  // namespace devo::cli
