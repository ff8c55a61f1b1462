// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "devo/model.h"

#include <algorithm>
#include <string>
#include <utility>

namespace devo {
namespace detail {

struct Graph {
  ModelConfig config;
  std::vector<ConvLayer> layers;  // ModelConfig::layers() order
  std::size_t encoder_count = 0;
  std::size_t pre = 0;
  struct Residual {
    std::size_t dilated;
    std::size_t plain;
  };
  struct Stage {
    std::size_t up;
    std::vector<std::vector<Residual>> blocks;
  };
  std::vector<Stage> stages;
  std::size_t post = 0;
};

}  // namespace detail

namespace {

using detail::Graph;

void add_into(FeatureMap& acc, const FeatureMap& x) {
  auto a = acc.data();
  const auto b = x.data();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

// One traversal serves both offline and streaming evaluation; `conv(i, x)`
// decides how layer i is applied.
template <class Conv>
FeatureMap run_graph(const Graph& g, FeatureMap x, Conv&& conv) {
  const ModelConfig& cfg = g.config;
  const std::size_t n_agg = cfg.aggregator.size();
  const std::size_t first_agg = g.encoder_count - n_agg;
  std::vector<FeatureMap> tapped;
  for (std::size_t i = 0; i < g.encoder_count; ++i) {
    x = conv(i, x);
    if (n_agg > 0 && i >= first_agg) tapped.push_back(x);
  }
  if (n_agg > 0) x = weighted_sum(tapped, cfg.aggregator);
  x = nn_upsample(x, cfg.feature_upsample);

  x = conv(g.pre, x);
  for (const auto& stage : g.stages) {
    apply_activation(x.data(), Activation::kLeakyRelu, cfg.lrelu_slope);
    x = conv(stage.up, x);
    if (stage.blocks.empty()) continue;
    FeatureMap mixed;
    for (std::size_t b = 0; b < stage.blocks.size(); ++b) {
      FeatureMap r = x;
      for (const auto& res : stage.blocks[b]) {
        FeatureMap t = activation(r, Activation::kLeakyRelu, cfg.lrelu_slope);
        t = conv(res.dilated, t);
        apply_activation(t.data(), Activation::kLeakyRelu, cfg.lrelu_slope);
        t = conv(res.plain, t);
        add_into(r, t);
      }
      if (b == 0) {
        mixed = std::move(r);
      } else {
        add_into(mixed, r);
      }
    }
    const float n = static_cast<float>(stage.blocks.size());
    for (float& v : mixed.data()) v = v / n;
    x = std::move(mixed);
  }
  apply_activation(x.data(), Activation::kLeakyRelu, cfg.final_slope);
  return conv(g.post, x);
}

ErrorCode code_for(BundleMismatch::Kind kind) {
  switch (kind) {
    case BundleMismatch::Kind::kMissing: return ErrorCode::kMissingTensor;
    case BundleMismatch::Kind::kExtra: return ErrorCode::kUnexpectedTensor;
    case BundleMismatch::Kind::kShape: return ErrorCode::kShapeMismatch;
    case BundleMismatch::Kind::kNonFinite: return ErrorCode::kNonFinite;
    case BundleMismatch::Kind::kConfig: return ErrorCode::kBadConfig;
  }
  return ErrorCode::kBadConfig;
}

}  // namespace

Model::Model(std::shared_ptr<const detail::Graph> graph) : graph_(std::move(graph)) {}

Model Model::build(const ModelConfig& config, const WeightBundle& bundle,
                   BuildOptions options) {
  config.validate(options.require_streaming);
  const auto mismatches = validate_bundle(bundle, config);
  if (!mismatches.empty()) {
    std::string message;
    for (const auto& m : mismatches) {
      if (!message.empty()) message += "; ";
      message += std::string(to_string(m.kind)) + " " + m.name + " (" + m.message + ")";
    }
    throw Error(code_for(mismatches.front().kind), message);
  }

  auto g = std::make_shared<Graph>();
  g->config = config;
  const auto named = config.layers();
  g->layers.reserve(named.size());
  for (const auto& layer : named) {
    const Tensor* w = bundle.find(layer.name + ".weight");
    const Tensor* b = layer.spec.bias ? bundle.find(layer.name + ".bias") : nullptr;
    g->layers.emplace_back(layer.spec, w->data,
                           b != nullptr ? b->data : std::vector<float>{});
  }

  std::size_t next = 0;
  g->encoder_count = config.encoder.size();
  next = g->encoder_count;
  g->pre = next++;
  for (std::size_t s = 0; s < config.upsample_stages.size(); ++s) {
    Graph::Stage stage;
    stage.up = next++;
    for (const auto& rb : config.mrf[s]) {
      std::vector<Graph::Residual> block;
      for (std::size_t j = 0; j < rb.dilations.size(); ++j) {
        block.push_back({next, next + 1});
        next += 2;
      }
      stage.blocks.push_back(std::move(block));
    }
    g->stages.push_back(std::move(stage));
  }
  g->post = next++;
  return Model(std::move(g));
}

const ModelConfig& Model::config() const { return graph_->config; }

std::size_t Model::parameter_count() const {
  return graph_->config.parameter_count();
}

std::size_t Model::block_samples() const { return graph_->config.encoder_hop(); }

AudioBuffer Model::enhance_offline(const AudioBuffer& noisy) const {
  if (noisy.sample_rate() != graph_->config.sample_rate) {
    throw Error(ErrorCode::kSampleRate,
                "model runs at " + std::to_string(graph_->config.sample_rate) +
                    " Hz, input is " + std::to_string(noisy.sample_rate()) + " Hz");
  }
  const std::size_t n = noisy.size();
  if (n == 0) return AudioBuffer({}, noisy.sample_rate());
  const std::size_t hop = block_samples();
  const std::size_t padded = (n + hop - 1) / hop * hop;
  std::vector<float> input(padded, 0.0f);
  std::copy(noisy.samples().begin(), noisy.samples().end(), input.begin());

  const Graph& g = *graph_;
  FeatureMap y = run_graph(
      g, FeatureMap(std::move(input), 1, noisy.sample_rate()),
      [&g](std::size_t i, const FeatureMap& x) { return g.layers[i].forward(x); });
  std::vector<float> out = std::move(y).release();
  out.resize(n);
  return AudioBuffer(std::move(out), noisy.sample_rate());
}

StreamSession Model::open_stream() const {
  if (!graph_->config.causal) {
    throw Error(ErrorCode::kNotCausal, "cannot stream a non-causal model");
  }
  return StreamSession(graph_);
}

Model build_model(const ModelConfig& config, const WeightBundle& bundle,
                  BuildOptions options) {
  return Model::build(config, bundle, options);
}

Model load_model(const std::filesystem::path& path, BuildOptions options) {
  const WeightBundle bundle = load_bundle(path);
  return Model::build(bundle.config(), bundle, options);
}

StreamSession::StreamSession(std::shared_ptr<const detail::Graph> graph)
    : graph_(std::move(graph)) {
  states_.reserve(graph_->layers.size());
  for (const auto& layer : graph_->layers) states_.push_back(layer.open_state());
}

std::size_t StreamSession::block_samples() const {
  return graph_->config.encoder_hop();
}

void StreamSession::push_block(std::span<const float> block, std::span<float> out) {
  const std::size_t n = block_samples();
  if (block.size() != n || out.size() != n) {
    throw Error(ErrorCode::kBlockSize,
                "blocks are " + std::to_string(n) + " samples, got " +
                    std::to_string(block.size()) + " in / " +
                    std::to_string(out.size()) + " out");
  }
  const Graph& g = *graph_;
  FeatureMap y = run_graph(
      g,
      FeatureMap(std::vector<float>(block.begin(), block.end()), 1,
                 g.config.sample_rate),
      [this, &g](std::size_t i, const FeatureMap& x) {
        return g.layers[i].push(states_[i], x);
      });
  std::copy(y.data().begin(), y.data().end(), out.begin());
  ++blocks_in_;
  ++blocks_out_;
}

std::vector<float> StreamSession::push_block(std::span<const float> block) {
  std::vector<float> out(block_samples());
  push_block(block, out);
  return out;
}

std::vector<std::size_t> StreamSession::state_frames() const {
  std::vector<std::size_t> out;
  for (const auto& layer : graph_->layers) out.push_back(layer.spec().state_frames());
  return out;
}

}  // namespace devo
