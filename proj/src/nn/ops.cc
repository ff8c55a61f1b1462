// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <cmath>
#include <string>

#include "devo/error.h"
#include "devo/nn.h"

namespace devo {

const char* to_string(Activation a) {
  switch (a) {
    case Activation::kNone: return "none";
    case Activation::kLeakyRelu: return "leaky_relu";
    case Activation::kTanh: return "tanh";
  }
  return "none";
}

Activation activation_from_string(const std::string& name) {
  if (name == "none") return Activation::kNone;
  if (name == "leaky_relu") return Activation::kLeakyRelu;
  if (name == "tanh") return Activation::kTanh;
  throw Error(ErrorCode::kBadConfig, "unknown activation '" + name + "'");
}

void apply_activation(std::span<float> values, Activation kind, float alpha) {
  switch (kind) {
    case Activation::kNone:
      return;
    case Activation::kLeakyRelu:
      for (float& v : values) v = v >= 0.0f ? v : alpha * v;
      return;
    case Activation::kTanh:
      for (float& v : values) v = std::tanh(v);
      return;
  }
}

FeatureMap activation(const FeatureMap& x, Activation kind, float alpha) {
  FeatureMap y = x;
  apply_activation(y.data(), kind, alpha);
  return y;
}

FeatureMap nn_upsample(const FeatureMap& x, int factor) {
  if (factor < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "upsample factor must be >= 1, got " + std::to_string(factor));
  }
  if (factor == 1) return x;
  const std::size_t f = static_cast<std::size_t>(factor);
  FeatureMap y(x.frames() * f, x.channels(), x.frame_rate() * factor);
  for (std::size_t t = 0; t < x.frames(); ++t) {
    for (std::size_t r = 0; r < f; ++r) {
      std::copy_n(x.row(t), x.channels(), y.row(t * f + r));
    }
  }
  return y;
}

std::vector<double> softmax(std::span<const float> raw) {
  if (raw.empty()) return {};
  const double peak = *std::max_element(raw.begin(), raw.end());
  std::vector<double> w(raw.size());
  double total = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    w[i] = std::exp(static_cast<double>(raw[i]) - peak);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

FeatureMap weighted_sum(std::span<const FeatureMap> layers,
                        std::span<const float> raw_weights) {
  if (layers.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "weighted_sum of no layers");
  }
  if (raw_weights.size() != layers.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                std::to_string(raw_weights.size()) + " weights for " +
                    std::to_string(layers.size()) + " layers");
  }
  const FeatureMap& first = layers.front();
  for (const FeatureMap& l : layers) {
    if (l.frames() != first.frames() || l.channels() != first.channels()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "weighted_sum layers must share one shape");
    }
  }
  const auto w = softmax(raw_weights);
  FeatureMap y(first.frames(), first.channels(), first.frame_rate());
  auto out = y.data();
  // Summed in double and rounded once, so the result stays inside the
  // elementwise hull of the inputs.
  for (std::size_t i = 0; i < out.size(); ++i) {
    double acc = 0.0;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      acc += w[l] * layers[l].data()[i];
    }
    out[i] = static_cast<float>(acc);
  }
  return y;
}

}  // namespace devo
