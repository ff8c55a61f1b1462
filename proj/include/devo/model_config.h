// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEVO_MODEL_CONFIG_H_
#define DEVO_MODEL_CONFIG_H_

#include <cstddef>
#include <string>
#include <vector>

#include "devo/error.h"
#include "devo/nn.h"

namespace devo {

// 10 ms at 16 kHz: the streaming block and the encoder hop of a causal model.
inline constexpr std::size_t kBlockSamples = 160;

// One multi-receptive-field residual stack: for each dilation d a pair of
// convolutions (kernel/d, then kernel/1) wrapped in a residual connection.
struct ResBlockSpec {
  int kernel = 3;
  std::vector<int> dilations = {1, 3, 5};

  bool operator==(const ResBlockSpec&) const = default;
};

// A convolution of the graph with its bundle name prefix. `spec` is the
// effective spec: causality follows the model-level flag.
struct NamedLayer {
  std::string name;
  ConvLayerSpec spec;
};

struct TensorSpec {
  std::string name;
  std::vector<std::size_t> shape;
};

struct ConfigProblem {
  ErrorCode code;
  std::string message;
};

// Encoder -> optional weighted-sum aggregator -> nearest-neighbour feature
// upsampling -> HiFiGAN-style vocoder (pre conv, transposed upsampling
// stages each followed by averaged MRF stacks, post conv + tanh).
struct ModelConfig {
  int sample_rate = 16000;
  bool causal = true;

  std::vector<ConvLayerSpec> encoder;
  // Raw weighted-sum weights over the outputs of the last N encoder layers;
  // empty means the last encoder layer is used directly.
  std::vector<float> aggregator;
  int feature_upsample = 1;

  ConvLayerSpec vocoder_pre;
  std::vector<ConvLayerSpec> upsample_stages;
  std::vector<std::vector<ResBlockSpec>> mrf;  // one list per stage
  ConvLayerSpec vocoder_post;
  float lrelu_slope = 0.1f;   // before upsampling stages and inside MRFs
  float final_slope = 0.01f;  // before the post conv

  // Samples consumed per encoder frame (product of encoder strides).
  std::size_t encoder_hop() const;
  // Samples produced per feature frame (product of upsample strides).
  std::size_t vocoder_upsample() const;
  std::size_t feature_dim() const;

  std::vector<NamedLayer> layers() const;
  std::vector<TensorSpec> tensor_specs() const;
  std::size_t parameter_count() const;
  std::size_t encoder_parameter_count() const;

  // Every structural problem, not just the first.
  std::vector<ConfigProblem> problems(bool require_streaming = false) const;
  // Throws the first problem as an Error.
  void validate(bool require_streaming = false) const;

  std::string to_json() const;
  static ModelConfig from_json(const std::string& text);

  // Desk-scale default: CPC-style 5-layer encoder (kernels 10,8,4,4,4,
  // strides 5,4,2,2,2) and a HiFiGAN-style vocoder with upsample strides
  // 5,4,4,2 and MRF kernels 3,7,11 with dilations 1,3,5.
  static ModelConfig desk_default(bool causal = true, int feature_dim = 256,
                                  int vocoder_channels = 128);

  bool operator==(const ModelConfig&) const = default;
};

}  // namespace devo

#endif  // DEVO_MODEL_CONFIG_H_
