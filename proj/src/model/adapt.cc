// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <random>
#include <string>

#include "devo/model.h"

namespace devo {

std::vector<float> adapt_input_layer(std::span<const float> kernel,
                                     std::size_t out_ch, std::size_t in_old,
                                     std::size_t taps, std::size_t new_in) {
  if (in_old < 1 || new_in < 1 || out_ch < 1 || taps < 1) {
    throw Error(ErrorCode::kInvalidArgument, "adapt_input_layer needs non-zero dims");
  }
  if (kernel.size() != out_ch * in_old * taps) {
    throw Error(ErrorCode::kShapeMismatch,
                "kernel has " + std::to_string(kernel.size()) + " values, expected " +
                    std::to_string(out_ch * in_old * taps));
  }
  std::vector<float> adapted(out_ch * new_in * taps);
  for (std::size_t o = 0; o < out_ch; ++o) {
    for (std::size_t t = 0; t < taps; ++t) {
      double mean = 0.0;
      for (std::size_t c = 0; c < in_old; ++c) {
        mean += kernel[(o * in_old + c) * taps + t];
      }
      const float value = static_cast<float>(mean / static_cast<double>(in_old));
      for (std::size_t c = 0; c < new_in; ++c) {
        adapted[(o * new_in + c) * taps + t] = value;
      }
    }
  }
  return adapted;
}

WeightBundle adapt_bundle(const WeightBundle& bundle, std::size_t new_in) {
  ModelConfig config = bundle.config();
  if (config.encoder.empty()) {
    throw Error(ErrorCode::kBadConfig, "model has no encoder layer to adapt");
  }
  WeightBundle out = bundle;
  Tensor* weight = nullptr;
  for (auto& t : out.tensors) {
    if (t.name == "encoder.0.weight") weight = &t;
  }
  if (weight == nullptr) {
    throw Error(ErrorCode::kMissingTensor, "encoder.0.weight");
  }
  if (weight->shape.size() != 3) {
    throw Error(ErrorCode::kShapeMismatch, "encoder.0.weight must be rank 3");
  }
  const std::size_t out_ch = weight->shape[0];
  const std::size_t in_old = weight->shape[1];
  const std::size_t taps = weight->shape[2];
  weight->data = adapt_input_layer(weight->data, out_ch, in_old, taps, new_in);
  weight->shape[1] = static_cast<std::uint32_t>(new_in);
  config.encoder.front().in_ch = static_cast<int>(new_in);
  out.config_json = config.to_json();
  return out;
}

WeightBundle random_bundle(const ModelConfig& config, std::uint64_t seed,
                           float gain, float bias_scale) {
  std::mt19937_64 rng(seed);
  // Platform-independent uniform in [-1, 1).
  auto uniform = [&rng]() {
    return static_cast<float>(static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0);
  };
  WeightBundle bundle;
  bundle.config_json = config.to_json();
  for (const auto& layer : config.layers()) {
    const auto& s = layer.spec;
    const double fan_in = static_cast<double>(s.in_ch) * s.kernel /
                          (s.transposed ? s.stride : 1);
    const float bound = static_cast<float>(gain / std::sqrt(fan_in));
    Tensor w{layer.name + ".weight", {}, std::vector<float>(s.weight_size())};
    for (auto d : s.weight_shape()) w.shape.push_back(static_cast<std::uint32_t>(d));
    for (float& v : w.data) v = bound * uniform();
    bundle.tensors.push_back(std::move(w));
    if (s.bias) {
      Tensor b{layer.name + ".bias",
               {static_cast<std::uint32_t>(s.out_ch)},
               std::vector<float>(static_cast<std::size_t>(s.out_ch))};
      for (float& v : b.data) v = bias_scale * uniform();
      bundle.tensors.push_back(std::move(b));
    }
  }
  return bundle;
}

}  // namespace devo
