// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Shared helpers for unit and acceptance tests.

#ifndef DEVO_TESTS_FIXTURES_H_
#define DEVO_TESTS_FIXTURES_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "devo/audio.h"
#include "devo/model.h"
#include "devo/model_config.h"

namespace devo::testing {

inline std::filesystem::path data_dir() { return DEVO_TEST_DATA_DIR; }

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("devo_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::vector<float> gaussian(std::size_t n, std::uint64_t seed, double sigma = 0.1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, sigma);
  std::vector<float> x(n);
  for (auto& v : x) v = static_cast<float>(d(rng));
  return x;
}

inline AudioBuffer noise_buffer(std::size_t n, std::uint64_t seed, double sigma = 0.1,
                                int rate = 16000) {
  return AudioBuffer(gaussian(n, seed, sigma), rate);
}

inline AudioBuffer sine(double freq, double amplitude, std::size_t n, int rate = 16000) {
  std::vector<float> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<float>(amplitude * std::sin(2.0 * std::numbers::pi * freq * i / rate));
  }
  return AudioBuffer(std::move(x), rate);
}

// Speech-like test signal: a gliding harmonic complex under a syllabic
// envelope, so loudness gating and silence removal see structure.
inline AudioBuffer babble(std::size_t n, std::uint64_t seed, int rate = 16000) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double f0 = 90.0 + 120.0 * u(rng);
  const double syll = 3.0 + 2.0 * u(rng);
  const double ph = 6.0 * u(rng);
  std::vector<float> x(n);
  double phase = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    phase += 2.0 * std::numbers::pi * f0 * (1.0 + 0.1 * std::sin(2.0 * t)) / rate;
    double v = 0.0;
    for (int k = 1; k <= 12; ++k) v += std::sin(k * phase) / k;
    const double env = std::max(0.0, std::sin(2.0 * std::numbers::pi * syll * t + ph));
    x[i] = static_cast<float>(0.15 * v * env);
  }
  return AudioBuffer(std::move(x), rate);
}

// Every factorization of `n` into an ordered list of factors >= 2, drawn
// uniformly over splits: repeatedly peel a random divisor.
inline std::vector<int> random_factorization(int n, std::mt19937_64& rng, int max_parts) {
  std::vector<int> parts;
  while (n > 1) {
    std::vector<int> divisors;
    for (int d = 2; d <= n; ++d) {
      if (n % d == 0) divisors.push_back(d);
    }
    int pick = divisors[rng() % divisors.size()];
    if (static_cast<int>(parts.size()) + 1 == max_parts) pick = n;
    parts.push_back(pick);
    n /= pick;
  }
  return parts;
}

// Small random causal config honouring the hop law (encoder hop 160,
// feature_upsample times vocoder product 160).
inline ModelConfig random_causal_config(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % (hi - lo + 1)); };
  ModelConfig c;
  c.causal = true;
  const int feat = pick(3, 8);
  int in = 1;
  for (int s : random_factorization(160, rng, 4)) {
    ConvLayerSpec l;
    l.in_ch = in;
    l.out_ch = feat;
    l.stride = s;
    l.kernel = s + pick(0, 3);
    l.dilation = 1;
    l.bias = pick(0, 3) != 0;
    l.activation = Activation::kLeakyRelu;
    l.alpha = (pick(0, 1) != 0) ? 0.0f : 0.2f;
    c.encoder.push_back(l);
    in = feat;
  }
  const int extra = pick(0, 2);
  for (int i = 0; i < extra; ++i) {
    ConvLayerSpec l;
    l.in_ch = feat;
    l.out_ch = feat;
    l.kernel = pick(1, 3);
    l.dilation = pick(1, 2);
    l.activation = Activation::kLeakyRelu;
    c.encoder.push_back(l);
  }
  if (extra > 0 && pick(0, 1) != 0) {
    for (int i = 0; i <= extra; ++i) {
      c.aggregator.push_back(static_cast<float>(pick(-20, 20)) / 10.0f);
    }
  }
  const int ups[] = {1, 2, 4, 5};
  c.feature_upsample = ups[pick(0, 3)];

  const int width = pick(4, 8);
  c.vocoder_pre = ConvLayerSpec{feat, width, pick(1, 7), 1, 1, true, true, false,
                                Activation::kNone, 0.1f};
  int ch = width;
  for (int s : random_factorization(160 / c.feature_upsample, rng, 4)) {
    const int out = std::max(2, ch / 2);
    ConvLayerSpec up{ch, out, s * pick(1, 2), s, 1, true, true, true, Activation::kNone, 0.1f};
    c.upsample_stages.push_back(up);
    std::vector<ResBlockSpec> blocks;
    const int nb = pick(1, 2);
    for (int b = 0; b < nb; ++b) {
      ResBlockSpec r;
      r.kernel = 2 * pick(1, 3) + 1;
      r.dilations.clear();
      for (int d = 0; d < pick(1, 2); ++d) r.dilations.push_back(2 * d + 1);
      blocks.push_back(r);
    }
    c.mrf.push_back(blocks);
    ch = out;
  }
  c.vocoder_post = ConvLayerSpec{ch, 1, pick(1, 7), 1, 1, true, true, false,
                                 Activation::kTanh, 0.1f};
  return c;
}

}  // namespace devo::testing

#endif  // DEVO_TESTS_FIXTURES_H_
