// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// 1-D convolution kernels with exact streaming counterparts.
//
// Accumulation order is part of the contract. For a convolution output
// (t, o) the accumulator starts at the bias and then adds input channels in
// ascending order, taps ascending within each channel. For a transposed
// convolution output (p, o) the accumulator starts at zero, adds
// contributions from input frames in ascending order (channels ascending
// within a frame), and the bias is added last. Offline and streaming paths
// run the same inner kernels, so pushing a signal block by block reproduces
// the offline result bit for bit.

#ifndef DEVO_NN_H_
#define DEVO_NN_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "devo/feature_map.h"

namespace devo {

enum class Activation { kNone, kLeakyRelu, kTanh };

const char* to_string(Activation a);
Activation activation_from_string(const std::string& name);

struct ConvLayerSpec {
  int in_ch = 1;
  int out_ch = 1;
  int kernel = 1;
  int stride = 1;
  int dilation = 1;
  bool causal = true;
  bool bias = true;
  bool transposed = false;
  Activation activation = Activation::kNone;
  float alpha = 0.1f;  // leaky_relu negative slope

  void validate() const;

  // Convolution: out x in x kernel. Transposed: in x out x kernel.
  std::vector<std::size_t> weight_shape() const;
  std::size_t weight_size() const;
  std::size_t parameter_count() const;

  // Frames of history a streaming push must retain: (kernel - 1) * dilation
  // input frames for a convolution, kernel - stride output frames for a
  // transposed convolution.
  std::size_t state_frames() const;

  // Output frames produced from `frames` input frames.
  std::size_t output_frames(std::size_t frames) const;

  bool operator==(const ConvLayerSpec&) const = default;
};

// Per-stream state of one layer; zero at stream open.
struct LayerState {
  std::vector<float> left_context;  // state_frames() x in_ch (convolution)
  std::vector<float> overlap_tail;  // state_frames() x out_ch (transposed)
};

// A convolution with validated, repacked weights. Immutable and shareable.
class ConvLayer {
 public:
  ConvLayer(ConvLayerSpec spec, std::vector<float> weight,
            std::vector<float> bias);

  const ConvLayerSpec& spec() const { return spec_; }
  std::span<const float> weight() const { return weight_; }
  std::span<const float> bias() const { return bias_; }

  // Whole-signal evaluation. Causal layers left-pad (kernel-1)*dilation
  // zeros; symmetric layers split that padding between both sides. Output
  // length is ceil(T / stride), or T * stride for transposed layers.
  FeatureMap forward(const FeatureMap& x) const;

  LayerState open_state() const;

  // Streaming evaluation of the next block. Requires a causal layer; for
  // strided convolutions the block length must be a multiple of the stride.
  FeatureMap push(LayerState& state, const FeatureMap& block) const;

 private:
  void check_input(const FeatureMap& x) const;
  void convolve(const float* padded, std::size_t n_out, float* out) const;
  void scatter(const FeatureMap& x, float* acc) const;
  void finish_rows(float* rows, std::size_t n_rows) const;

  ConvLayerSpec spec_;
  std::vector<float> weight_;
  std::vector<float> bias_;
  std::vector<float> packed_;  // [in_ch][kernel][out_ch]
};

FeatureMap conv1d(const FeatureMap& x, const ConvLayerSpec& spec,
                  std::vector<float> weight, std::vector<float> bias);
FeatureMap conv_transpose1d(const FeatureMap& x, const ConvLayerSpec& spec,
                            std::vector<float> weight, std::vector<float> bias);
LayerState open_layer_state(const ConvLayerSpec& spec);
FeatureMap layer_push(LayerState& state, const ConvLayerSpec& spec,
                      std::vector<float> weight, std::vector<float> bias,
                      const FeatureMap& block);

void apply_activation(std::span<float> values, Activation kind, float alpha);
FeatureMap activation(const FeatureMap& x, Activation kind, float alpha = 0.1f);

// Repeats every frame `factor` times; frame rate scales accordingly.
FeatureMap nn_upsample(const FeatureMap& x, int factor);

std::vector<double> softmax(std::span<const float> raw);

// Convex combination of equally shaped layers with softmax(raw_weights).
FeatureMap weighted_sum(std::span<const FeatureMap> layers,
                        std::span<const float> raw_weights);

}  // namespace devo

#endif  // DEVO_NN_H_
