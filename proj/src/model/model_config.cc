// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "devo/model_config.h"

#include <cmath>
#include <json.hpp>

namespace devo {
namespace {

using nlohmann::json;

std::string suffix(const std::string& prefix, std::size_t i) {
  return prefix + "." + std::to_string(i);
}

json layer_to_json(const ConvLayerSpec& s) {
  json j = {{"in", s.in_ch},          {"out", s.out_ch},
            {"kernel", s.kernel},     {"stride", s.stride},
            {"dilation", s.dilation}, {"bias", s.bias},
            {"activation", to_string(s.activation)}};
  if (s.activation == Activation::kLeakyRelu) j["alpha"] = s.alpha;
  return j;
}

ConvLayerSpec layer_from_json(const json& j, bool transposed) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kBadConfig, "layer entry must be an object");
  }
  ConvLayerSpec s;
  s.in_ch = j.at("in").get<int>();
  s.out_ch = j.at("out").get<int>();
  s.kernel = j.at("kernel").get<int>();
  s.stride = j.value("stride", 1);
  s.dilation = j.value("dilation", 1);
  s.bias = j.value("bias", true);
  s.activation = activation_from_string(j.value("activation", "none"));
  s.alpha = j.value("alpha", 0.1f);
  s.transposed = transposed;
  return s;
}

ConvLayerSpec conv_spec(int in, int out, int kernel, int stride,
                        Activation act, float alpha) {
  ConvLayerSpec s;
  s.in_ch = in;
  s.out_ch = out;
  s.kernel = kernel;
  s.stride = stride;
  s.activation = act;
  // The slope only exists for leaky layers; keep the default otherwise so
  // configs survive a JSON roundtrip.
  if (act == Activation::kLeakyRelu) s.alpha = alpha;
  return s;
}

}  // namespace

std::size_t ModelConfig::encoder_hop() const {
  std::size_t hop = 1;
  for (const auto& l : encoder) hop *= static_cast<std::size_t>(std::max(l.stride, 1));
  return hop;
}

std::size_t ModelConfig::vocoder_upsample() const {
  std::size_t up = 1;
  for (const auto& l : upsample_stages) {
    up *= static_cast<std::size_t>(std::max(l.stride, 1));
  }
  return up;
}

std::size_t ModelConfig::feature_dim() const {
  return encoder.empty() ? 0 : static_cast<std::size_t>(encoder.back().out_ch);
}

std::vector<NamedLayer> ModelConfig::layers() const {
  std::vector<NamedLayer> out;
  auto add = [&](std::string name, ConvLayerSpec spec) {
    spec.causal = causal;
    out.push_back({std::move(name), spec});
  };
  for (std::size_t i = 0; i < encoder.size(); ++i) {
    add(suffix("encoder", i), encoder[i]);
  }
  add("vocoder.conv_pre", vocoder_pre);
  for (std::size_t s = 0; s < upsample_stages.size(); ++s) {
    add(suffix("vocoder.ups", s), upsample_stages[s]);
    if (s >= mrf.size()) continue;
    const int channels = upsample_stages[s].out_ch;
    for (std::size_t b = 0; b < mrf[s].size(); ++b) {
      const ResBlockSpec& rb = mrf[s][b];
      const std::string prefix =
          "vocoder.resblocks." + std::to_string(s) + "." + std::to_string(b);
      for (std::size_t j = 0; j < rb.dilations.size(); ++j) {
        ConvLayerSpec c1 = conv_spec(channels, channels, rb.kernel, 1,
                                     Activation::kNone, 0.0f);
        c1.dilation = rb.dilations[j];
        ConvLayerSpec c2 = c1;
        c2.dilation = 1;
        add(suffix(prefix + ".convs1", j), c1);
        add(suffix(prefix + ".convs2", j), c2);
      }
    }
  }
  add("vocoder.conv_post", vocoder_post);
  return out;
}

std::vector<TensorSpec> ModelConfig::tensor_specs() const {
  std::vector<TensorSpec> out;
  for (const auto& layer : layers()) {
    out.push_back({layer.name + ".weight", layer.spec.weight_shape()});
    if (layer.spec.bias) {
      out.push_back({layer.name + ".bias",
                     {static_cast<std::size_t>(layer.spec.out_ch)}});
    }
  }
  return out;
}

std::size_t ModelConfig::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers()) n += layer.spec.parameter_count();
  return n + aggregator.size();
}

std::size_t ModelConfig::encoder_parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : encoder) n += l.parameter_count();
  return n;
}

std::vector<ConfigProblem> ModelConfig::problems(bool require_streaming) const {
  std::vector<ConfigProblem> out;
  auto bad = [&](std::string msg) {
    out.push_back({ErrorCode::kBadConfig, std::move(msg)});
  };
  if (sample_rate != 16000) {
    bad("sample_rate must be 16000, got " + std::to_string(sample_rate));
  }
  for (const auto& layer : layers()) {
    try {
      layer.spec.validate();
    } catch (const Error& e) {
      bad(layer.name + ": " + e.what());
    }
  }

  if (encoder.empty()) {
    bad("encoder has no layers");
  } else {
    if (encoder.front().in_ch != 1) {
      bad("encoder.0 must take 1 input channel (mono waveform), takes " +
          std::to_string(encoder.front().in_ch));
    }
    for (std::size_t i = 0; i < encoder.size(); ++i) {
      if (encoder[i].transposed) bad(suffix("encoder", i) + " is transposed");
      if (i > 0 && encoder[i].in_ch != encoder[i - 1].out_ch) {
        bad(suffix("encoder", i) + " input channels do not match encoder." +
            std::to_string(i - 1) + " output");
      }
    }
  }

  if (!aggregator.empty()) {
    if (aggregator.size() > encoder.size()) {
      bad("aggregator has " + std::to_string(aggregator.size()) +
          " weights for " + std::to_string(encoder.size()) + " encoder layers");
    } else {
      const std::size_t first = encoder.size() - aggregator.size();
      for (std::size_t i = first + 1; i < encoder.size(); ++i) {
        if (encoder[i].stride != 1 || encoder[i].out_ch != encoder[first].out_ch) {
          bad("aggregated layer " + suffix("encoder", i) +
              " must keep the frame rate and channel count of " +
              suffix("encoder", first));
        }
      }
    }
    for (float w : aggregator) {
      if (!std::isfinite(w)) bad("aggregator weight is not finite");
    }
  }

  if (feature_upsample < 1) bad("feature_upsample must be >= 1");

  if (vocoder_pre.transposed || vocoder_pre.stride != 1) {
    bad("vocoder.conv_pre must be an unstrided convolution");
  }
  if (!encoder.empty() &&
      vocoder_pre.in_ch != static_cast<int>(feature_dim())) {
    bad("vocoder.conv_pre takes " + std::to_string(vocoder_pre.in_ch) +
        " channels but the encoder emits " + std::to_string(feature_dim()));
  }
  int channels = vocoder_pre.out_ch;
  for (std::size_t s = 0; s < upsample_stages.size(); ++s) {
    const auto& up = upsample_stages[s];
    if (!up.transposed) bad(suffix("vocoder.ups", s) + " must be transposed");
    if (up.in_ch != channels) {
      bad(suffix("vocoder.ups", s) + " takes " + std::to_string(up.in_ch) +
          " channels, previous stage emits " + std::to_string(channels));
    }
    channels = up.out_ch;
  }
  if (mrf.size() != upsample_stages.size()) {
    bad("mrf lists " + std::to_string(mrf.size()) + " stages, vocoder has " +
        std::to_string(upsample_stages.size()));
  }
  for (const auto& stage : mrf) {
    for (const auto& rb : stage) {
      if (rb.kernel < 1 || rb.dilations.empty()) {
        bad("resblock needs kernel >= 1 and at least one dilation");
      }
    }
  }
  if (vocoder_post.transposed || vocoder_post.stride != 1 ||
      vocoder_post.out_ch != 1 || vocoder_post.in_ch != channels) {
    bad("vocoder.conv_post must map " + std::to_string(channels) +
        " channels to 1 without striding");
  }
  if (vocoder_post.activation != Activation::kTanh) {
    bad("vocoder.conv_post must end in tanh");
  }

  const std::size_t hop = encoder_hop();
  const std::size_t synth = static_cast<std::size_t>(std::max(feature_upsample, 1)) *
                            vocoder_upsample();
  if (hop != synth) {
    out.push_back({ErrorCode::kStrideProduct,
                   "encoder hop " + std::to_string(hop) +
                       " != feature_upsample x vocoder upsampling " +
                       std::to_string(synth)});
  }
  if (require_streaming && !causal) {
    out.push_back({ErrorCode::kNotCausal,
                   "streaming requested for a non-causal model"});
  }
  if ((causal || require_streaming) && hop != kBlockSamples) {
    out.push_back({ErrorCode::kStrideProduct,
                   "streaming needs an encoder hop of " +
                       std::to_string(kBlockSamples) + ", got " +
                       std::to_string(hop)});
  }
  return out;
}

void ModelConfig::validate(bool require_streaming) const {
  const auto found = problems(require_streaming);
  if (!found.empty()) throw Error(found.front().code, found.front().message);
}

std::string ModelConfig::to_json() const {
  json enc = json::array();
  for (const auto& l : encoder) enc.push_back(layer_to_json(l));
  json ups = json::array();
  for (const auto& l : upsample_stages) ups.push_back(layer_to_json(l));
  json stages = json::array();
  for (const auto& stage : mrf) {
    json blocks = json::array();
    for (const auto& rb : stage) {
      blocks.push_back({{"kernel", rb.kernel}, {"dilations", rb.dilations}});
    }
    stages.push_back(blocks);
  }
  json agg = json::array();
  for (float w : aggregator) agg.push_back(w);
  json doc = {
      {"format", "devo-model"},
      {"sample_rate", sample_rate},
      {"causal", causal},
      {"encoder", enc},
      {"aggregator", agg},
      {"feature_upsample", feature_upsample},
      {"vocoder",
       {{"pre", layer_to_json(vocoder_pre)},
        {"upsample", ups},
        {"mrf", stages},
        {"post", layer_to_json(vocoder_post)},
        {"lrelu_slope", lrelu_slope},
        {"final_slope", final_slope}}},
  };
  return doc.dump();
}

ModelConfig ModelConfig::from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("format", std::string()) != "devo-model") {
      throw Error(ErrorCode::kBadConfig, "config document is not devo-model");
    }
    ModelConfig c;
    c.sample_rate = doc.value("sample_rate", 16000);
    c.causal = doc.at("causal").get<bool>();
    for (const auto& l : doc.at("encoder")) {
      c.encoder.push_back(layer_from_json(l, false));
    }
    for (const auto& w : doc.value("aggregator", json::array())) {
      c.aggregator.push_back(w.get<float>());
    }
    c.feature_upsample = doc.value("feature_upsample", 1);
    const json& voc = doc.at("vocoder");
    c.vocoder_pre = layer_from_json(voc.at("pre"), false);
    for (const auto& l : voc.at("upsample")) {
      c.upsample_stages.push_back(layer_from_json(l, true));
    }
    for (const auto& stage : voc.at("mrf")) {
      std::vector<ResBlockSpec> blocks;
      for (const auto& rb : stage) {
        blocks.push_back({rb.at("kernel").get<int>(),
                          rb.at("dilations").get<std::vector<int>>()});
      }
      c.mrf.push_back(std::move(blocks));
    }
    c.vocoder_post = layer_from_json(voc.at("post"), false);
    c.lrelu_slope = voc.value("lrelu_slope", 0.1f);
    c.final_slope = voc.value("final_slope", 0.01f);
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kBadConfig, std::string("config document: ") + e.what());
  }
}

ModelConfig ModelConfig::desk_default(bool causal, int feature_dim,
                                      int vocoder_channels) {
  ModelConfig c;
  c.causal = causal;
  const int kernels[] = {10, 8, 4, 4, 4};
  const int strides[] = {5, 4, 2, 2, 2};
  int in = 1;
  for (int i = 0; i < 5; ++i) {
    // ReLU as the zero-slope member of the leaky family.
    c.encoder.push_back(conv_spec(in, feature_dim, kernels[i], strides[i],
                                  Activation::kLeakyRelu, 0.0f));
    in = feature_dim;
  }
  c.vocoder_pre = conv_spec(feature_dim, vocoder_channels, 7, 1,
                            Activation::kNone, 0.0f);
  const int up_strides[] = {5, 4, 4, 2};
  int ch = vocoder_channels;
  for (int s : up_strides) {
    ConvLayerSpec up = conv_spec(ch, ch / 2, 2 * s, s, Activation::kNone, 0.0f);
    up.transposed = true;
    c.upsample_stages.push_back(up);
    c.mrf.push_back({{3, {1, 3, 5}}, {7, {1, 3, 5}}, {11, {1, 3, 5}}});
    ch /= 2;
  }
  c.vocoder_post = conv_spec(ch, 1, 7, 1, Activation::kTanh, 0.0f);
  return c;
}

}  // namespace devo
