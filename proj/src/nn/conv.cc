// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "devo/error.h"
#include "devo/nn.h"

namespace devo {
namespace {

std::string describe(const ConvLayerSpec& s) {
  return std::string(s.transposed ? "conv_transpose1d" : "conv1d") + "(" +
         std::to_string(s.in_ch) + "->" + std::to_string(s.out_ch) +
         ", k=" + std::to_string(s.kernel) + ", s=" + std::to_string(s.stride) +
         ", d=" + std::to_string(s.dilation) + ")";
}

// Output rows are tiled four at a time so each packed weight row is loaded
// once per tile. Tiling does not change any single accumulator's order.
constexpr std::size_t kTile = 4;

}  // namespace

void ConvLayerSpec::validate() const {
  if (in_ch < 1 || out_ch < 1) {
    throw Error(ErrorCode::kBadConfig, "channels must be >= 1 in " + describe(*this));
  }
  if (kernel < 1 || stride < 1 || dilation < 1) {
    throw Error(ErrorCode::kBadConfig,
                "kernel, stride and dilation must be >= 1 in " + describe(*this));
  }
  if (transposed && kernel < stride) {
    throw Error(ErrorCode::kBadConfig,
                "transposed layer needs kernel >= stride in " + describe(*this));
  }
  if (transposed && dilation != 1) {
    throw Error(ErrorCode::kBadConfig,
                "transposed layers are undilated in " + describe(*this));
  }
  if (activation == Activation::kLeakyRelu && !std::isfinite(alpha)) {
    throw Error(ErrorCode::kBadConfig, "leaky_relu slope must be finite");
  }
}

std::vector<std::size_t> ConvLayerSpec::weight_shape() const {
  if (transposed) {
    return {static_cast<std::size_t>(in_ch), static_cast<std::size_t>(out_ch),
            static_cast<std::size_t>(kernel)};
  }
  return {static_cast<std::size_t>(out_ch), static_cast<std::size_t>(in_ch),
          static_cast<std::size_t>(kernel)};
}

std::size_t ConvLayerSpec::weight_size() const {
  return static_cast<std::size_t>(in_ch) * out_ch * kernel;
}

std::size_t ConvLayerSpec::parameter_count() const {
  return weight_size() + (bias ? static_cast<std::size_t>(out_ch) : 0);
}

std::size_t ConvLayerSpec::state_frames() const {
  if (transposed) return static_cast<std::size_t>(kernel - stride);
  return static_cast<std::size_t>(kernel - 1) * dilation;
}

std::size_t ConvLayerSpec::output_frames(std::size_t frames) const {
  if (transposed) return frames * stride;
  return (frames + stride - 1) / stride;
}

ConvLayer::ConvLayer(ConvLayerSpec spec, std::vector<float> weight,
                     std::vector<float> bias)
    : spec_(spec), weight_(std::move(weight)), bias_(std::move(bias)) {
  spec_.validate();
  if (weight_.size() != spec_.weight_size()) {
    throw Error(ErrorCode::kShapeMismatch,
                describe(spec_) + " expects " +
                    std::to_string(spec_.weight_size()) + " weights, got " +
                    std::to_string(weight_.size()));
  }
  const std::size_t want_bias = spec_.bias ? spec_.out_ch : 0;
  if (bias_.size() != want_bias) {
    throw Error(ErrorCode::kShapeMismatch,
                describe(spec_) + " expects " + std::to_string(want_bias) +
                    " biases, got " + std::to_string(bias_.size()));
  }
  for (float v : weight_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "weights of " + describe(spec_));
    }
  }
  for (float v : bias_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "bias of " + describe(spec_));
    }
  }

  const std::size_t in = spec_.in_ch, out = spec_.out_ch, k = spec_.kernel;
  packed_.resize(weight_.size());
  for (std::size_t c = 0; c < in; ++c) {
    for (std::size_t tap = 0; tap < k; ++tap) {
      for (std::size_t o = 0; o < out; ++o) {
        const std::size_t src = spec_.transposed ? (c * out + o) * k + tap
                                                 : (o * in + c) * k + tap;
        packed_[(c * k + tap) * out + o] = weight_[src];
      }
    }
  }
}

void ConvLayer::check_input(const FeatureMap& x) const {
  if (x.channels() != static_cast<std::size_t>(spec_.in_ch)) {
    throw Error(ErrorCode::kShapeMismatch,
                describe(spec_) + " got " + std::to_string(x.channels()) +
                    " input channels");
  }
}

// `padded` holds frames so that output j reads rows j*stride + tap*dilation.
void ConvLayer::convolve(const float* padded, std::size_t n_out,
                         float* out) const {
  const std::size_t in = spec_.in_ch, n_o = spec_.out_ch, k = spec_.kernel;
  const std::size_t stride = spec_.stride, dil = spec_.dilation;
  for (std::size_t t = 0; t < n_out; ++t) {
    float* acc = out + t * n_o;
    if (spec_.bias) {
      std::copy(bias_.begin(), bias_.end(), acc);
    } else {
      std::fill(acc, acc + n_o, 0.0f);
    }
  }
  std::size_t t0 = 0;
  for (; t0 + kTile <= n_out; t0 += kTile) {
    float* __restrict a0 = out + (t0 + 0) * n_o;
    float* __restrict a1 = out + (t0 + 1) * n_o;
    float* __restrict a2 = out + (t0 + 2) * n_o;
    float* __restrict a3 = out + (t0 + 3) * n_o;
    const float* x0 = padded + (t0 + 0) * stride * in;
    const float* x1 = padded + (t0 + 1) * stride * in;
    const float* x2 = padded + (t0 + 2) * stride * in;
    const float* x3 = padded + (t0 + 3) * stride * in;
    for (std::size_t c = 0; c < in; ++c) {
      for (std::size_t tap = 0; tap < k; ++tap) {
        const float* __restrict w = packed_.data() + (c * k + tap) * n_o;
        const std::size_t off = tap * dil * in + c;
        const float v0 = x0[off], v1 = x1[off], v2 = x2[off], v3 = x3[off];
        for (std::size_t o = 0; o < n_o; ++o) {
          const float wo = w[o];
          a0[o] += wo * v0;
          a1[o] += wo * v1;
          a2[o] += wo * v2;
          a3[o] += wo * v3;
        }
      }
    }
  }
  for (; t0 < n_out; ++t0) {
    float* __restrict a = out + t0 * n_o;
    const float* x = padded + t0 * stride * in;
    for (std::size_t c = 0; c < in; ++c) {
      for (std::size_t tap = 0; tap < k; ++tap) {
        const float* __restrict w = packed_.data() + (c * k + tap) * n_o;
        const float v = x[tap * dil * in + c];
        for (std::size_t o = 0; o < n_o; ++o) a[o] += w[o] * v;
      }
    }
  }
}

// Adds every input frame's contribution into acc, whose row p corresponds
// to scatter position p = n*stride + tap.
void ConvLayer::scatter(const FeatureMap& x, float* acc) const {
  const std::size_t in = spec_.in_ch, n_o = spec_.out_ch, k = spec_.kernel;
  const std::size_t stride = spec_.stride;
  for (std::size_t n = 0; n < x.frames(); ++n) {
    const float* xr = x.row(n);
    for (std::size_t c = 0; c < in; ++c) {
      const float v = xr[c];
      for (std::size_t tap = 0; tap < k; ++tap) {
        const float* __restrict w = packed_.data() + (c * k + tap) * n_o;
        float* __restrict a = acc + (n * stride + tap) * n_o;
        for (std::size_t o = 0; o < n_o; ++o) a[o] += w[o] * v;
      }
    }
  }
}

void ConvLayer::finish_rows(float* rows, std::size_t n_rows) const {
  const std::size_t n_o = spec_.out_ch;
  if (spec_.transposed && spec_.bias) {
    for (std::size_t r = 0; r < n_rows; ++r) {
      float* row = rows + r * n_o;
      for (std::size_t o = 0; o < n_o; ++o) row[o] += bias_[o];
    }
  }
  apply_activation({rows, n_rows * n_o}, spec_.activation, spec_.alpha);
}

FeatureMap ConvLayer::forward(const FeatureMap& x) const {
  check_input(x);
  const std::size_t in = spec_.in_ch, n_o = spec_.out_ch;
  const std::size_t frames = x.frames();
  const std::size_t n_out = spec_.output_frames(frames);
  const double out_rate = spec_.transposed
                              ? x.frame_rate() * spec_.stride
                              : x.frame_rate() / spec_.stride;
  FeatureMap y(n_out, n_o, out_rate);
  if (frames == 0) return y;

  if (spec_.transposed) {
    const std::size_t tail = spec_.state_frames();
    std::vector<float> acc((n_out + tail) * n_o, 0.0f);
    scatter(x, acc.data());
    // Symmetric mode centres the kernel like padding=(k-s)/2 would.
    const std::size_t crop = spec_.causal ? 0 : tail / 2;
    std::copy_n(acc.begin() + crop * n_o, n_out * n_o, y.data().begin());
    finish_rows(y.data().data(), n_out);
    return y;
  }

  const std::size_t total_pad = spec_.state_frames();
  const std::size_t left = spec_.causal ? total_pad : total_pad / 2;
  const std::size_t padded_frames = frames + total_pad;
  std::vector<float> padded(padded_frames * in, 0.0f);
  std::copy(x.data().begin(), x.data().end(), padded.begin() + left * in);
  convolve(padded.data(), n_out, y.data().data());
  finish_rows(y.data().data(), n_out);
  return y;
}

LayerState ConvLayer::open_state() const { return open_layer_state(spec_); }

FeatureMap ConvLayer::push(LayerState& state, const FeatureMap& block) const {
  if (!spec_.causal) {
    throw Error(ErrorCode::kNotCausal,
                describe(spec_) + " is symmetric and cannot stream");
  }
  check_input(block);
  const std::size_t in = spec_.in_ch, n_o = spec_.out_ch;
  const std::size_t frames = block.frames();
  const std::size_t ctx = spec_.state_frames();

  if (spec_.transposed) {
    if (state.overlap_tail.size() != ctx * n_o) {
      throw Error(ErrorCode::kInvalidArgument, "layer state does not match layer");
    }
    const std::size_t n_out = frames * spec_.stride;
    std::vector<float> acc((n_out + ctx) * n_o, 0.0f);
    std::copy(state.overlap_tail.begin(), state.overlap_tail.end(), acc.begin());
    scatter(block, acc.data());
    std::copy(acc.begin() + n_out * n_o, acc.end(), state.overlap_tail.begin());
    acc.resize(n_out * n_o);
    FeatureMap y(std::move(acc), n_o, block.frame_rate() * spec_.stride);
    finish_rows(y.data().data(), n_out);
    return y;
  }

  if (frames % spec_.stride != 0) {
    throw Error(ErrorCode::kBlockSize,
                "block of " + std::to_string(frames) +
                    " frames is not a multiple of stride " +
                    std::to_string(spec_.stride));
  }
  if (state.left_context.size() != ctx * in) {
    throw Error(ErrorCode::kInvalidArgument, "layer state does not match layer");
  }
  std::vector<float> buffer;
  buffer.reserve((ctx + frames) * in);
  buffer.insert(buffer.end(), state.left_context.begin(), state.left_context.end());
  buffer.insert(buffer.end(), block.data().begin(), block.data().end());

  const std::size_t n_out = frames / spec_.stride;
  FeatureMap y(n_out, n_o, block.frame_rate() / spec_.stride);
  convolve(buffer.data(), n_out, y.data().data());
  finish_rows(y.data().data(), n_out);
  std::copy(buffer.end() - static_cast<std::ptrdiff_t>(ctx * in), buffer.end(),
            state.left_context.begin());
  return y;
}

FeatureMap conv1d(const FeatureMap& x, const ConvLayerSpec& spec,
                  std::vector<float> weight, std::vector<float> bias) {
  if (spec.transposed) {
    throw Error(ErrorCode::kInvalidArgument, "conv1d given a transposed spec");
  }
  return ConvLayer(spec, std::move(weight), std::move(bias)).forward(x);
}

FeatureMap conv_transpose1d(const FeatureMap& x, const ConvLayerSpec& spec,
                            std::vector<float> weight,
                            std::vector<float> bias) {
  if (!spec.transposed) {
    throw Error(ErrorCode::kInvalidArgument,
                "conv_transpose1d given a plain convolution spec");
  }
  return ConvLayer(spec, std::move(weight), std::move(bias)).forward(x);
}

LayerState open_layer_state(const ConvLayerSpec& spec) {
  spec.validate();
  LayerState state;
  if (spec.transposed) {
    state.overlap_tail.assign(spec.state_frames() * spec.out_ch, 0.0f);
  } else {
    state.left_context.assign(spec.state_frames() * spec.in_ch, 0.0f);
  }
  return state;
}

FeatureMap layer_push(LayerState& state, const ConvLayerSpec& spec,
                      std::vector<float> weight, std::vector<float> bias,
                      const FeatureMap& block) {
  return ConvLayer(spec, std::move(weight), std::move(bias)).push(state, block);
}

}  // namespace devo
