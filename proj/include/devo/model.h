// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEVO_MODEL_H_
#define DEVO_MODEL_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "devo/audio.h"
#include "devo/model_config.h"
#include "devo/nn.h"
#include "devo/weights.h"

namespace devo {

namespace detail {
struct Graph;
}

class StreamSession;

struct BuildOptions {
  bool require_streaming = false;
};

// Immutable runnable model. Copies share the same weights; safe to use from
// many threads at once.
class Model {
 public:
  static Model build(const ModelConfig& config, const WeightBundle& bundle,
                     BuildOptions options = {});

  const ModelConfig& config() const;
  std::size_t parameter_count() const;
  // Input samples per encoder frame; the streaming block size.
  std::size_t block_samples() const;

  // Right-pads to a whole number of blocks and truncates the output back to
  // the input length. Input must be at 16 kHz.
  AudioBuffer enhance_offline(const AudioBuffer& noisy) const;

  // Requires a causal model.
  StreamSession open_stream() const;

 private:
  explicit Model(std::shared_ptr<const detail::Graph> graph);
  std::shared_ptr<const detail::Graph> graph_;
};

Model build_model(const ModelConfig& config, const WeightBundle& bundle,
                  BuildOptions options = {});
Model load_model(const std::filesystem::path& path, BuildOptions options = {});

// Per-stream causal state. Single owner: one thread pushes at a time.
class StreamSession {
 public:
  // Exactly block_samples() in, exactly block_samples() out.
  std::vector<float> push_block(std::span<const float> block);
  void push_block(std::span<const float> block, std::span<float> out);

  std::uint64_t blocks_in() const { return blocks_in_; }
  std::uint64_t blocks_out() const { return blocks_out_; }
  std::size_t block_samples() const;

  // Retained frames per convolution layer, graph order.
  std::vector<std::size_t> state_frames() const;

 private:
  friend class Model;
  explicit StreamSession(std::shared_ptr<const detail::Graph> graph);

  std::shared_ptr<const detail::Graph> graph_;
  std::vector<LayerState> states_;
  std::uint64_t blocks_in_ = 0;
  std::uint64_t blocks_out_ = 0;
};

// Cross-modality input-layer adaptation: averages a (out x in_old x k)
// kernel over its input axis and replicates the mean across new_in inputs.
std::vector<float> adapt_input_layer(std::span<const float> kernel,
                                     std::size_t out_ch, std::size_t in_old,
                                     std::size_t taps, std::size_t new_in);

// Rewrites encoder.0 of a bundle for new_in input channels; the bias and
// every other tensor are carried over unchanged.
WeightBundle adapt_bundle(const WeightBundle& bundle, std::size_t new_in);

// Uniform(+-gain/sqrt(fan_in)) weights and small biases for every tensor of
// the config; deterministic in the seed.
WeightBundle random_bundle(const ModelConfig& config, std::uint64_t seed,
                           float gain = 1.0f, float bias_scale = 0.01f);

}  // namespace devo

#endif  // DEVO_MODEL_H_
