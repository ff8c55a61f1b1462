// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <numbers>
#include <string>

#include "devo/dsp.h"
#include "devo/error.h"

namespace devo {
namespace {

constexpr double kLoudnessOffset = -0.691;
constexpr double kAbsoluteGate = -70.0;
constexpr double kRelativeGate = -10.0;

// Analog prototype parameters that reproduce the BS.1770 48 kHz table when
// bilinear-transformed; re-deriving them gives the filters at any rate.
constexpr double kShelfFreq = 1681.974450955533;
constexpr double kShelfGainDb = 3.999843853973347;
constexpr double kShelfQ = 0.7071752369554196;
constexpr double kHighPassFreq = 38.13547087602444;
constexpr double kHighPassQ = 0.5003270373238773;

std::vector<double> filter_cascade(std::span<const float> x,
                                   const std::array<Biquad, 2>& filters) {
  std::vector<double> y(x.begin(), x.end());
  for (const Biquad& bq : filters) {
    double s1 = 0.0, s2 = 0.0;  // transposed direct form II
    for (double& v : y) {
      const double in = v;
      const double out = bq.b0 * in + s1;
      s1 = bq.b1 * in - bq.a1 * out + s2;
      s2 = bq.b2 * in - bq.a2 * out;
      v = out;
    }
  }
  return y;
}

double block_loudness(double mean_square) {
  return kLoudnessOffset + 10.0 * std::log10(mean_square);
}

}  // namespace

std::array<Biquad, 2> k_weighting_filters(int sample_rate) {
  const double fs = sample_rate;

  const double k_shelf = std::tan(std::numbers::pi * kShelfFreq / fs);
  const double vh = std::pow(10.0, kShelfGainDb / 20.0);
  const double vb = std::pow(vh, 0.4996667741545416);
  const double a0_shelf = 1.0 + k_shelf / kShelfQ + k_shelf * k_shelf;
  Biquad shelf{
      (vh + vb * k_shelf / kShelfQ + k_shelf * k_shelf) / a0_shelf,
      2.0 * (k_shelf * k_shelf - vh) / a0_shelf,
      (vh - vb * k_shelf / kShelfQ + k_shelf * k_shelf) / a0_shelf,
      2.0 * (k_shelf * k_shelf - 1.0) / a0_shelf,
      (1.0 - k_shelf / kShelfQ + k_shelf * k_shelf) / a0_shelf,
  };

  const double k_hp = std::tan(std::numbers::pi * kHighPassFreq / fs);
  const double a0_hp = 1.0 + k_hp / kHighPassQ + k_hp * k_hp;
  Biquad high_pass{
      1.0,
      -2.0,
      1.0,
      2.0 * (k_hp * k_hp - 1.0) / a0_hp,
      (1.0 - k_hp / kHighPassQ + k_hp * k_hp) / a0_hp,
  };
  return {shelf, high_pass};
}

AudioBuffer k_weight(const AudioBuffer& x) {
  const auto y = filter_cascade(x.samples(), k_weighting_filters(x.sample_rate()));
  return AudioBuffer(std::vector<float>(y.begin(), y.end()), x.sample_rate());
}

LoudnessReading integrated_lufs(const AudioBuffer& x) {
  const std::size_t block =
      static_cast<std::size_t>(std::lround(0.4 * x.sample_rate()));
  const std::size_t step =
      static_cast<std::size_t>(std::lround(0.1 * x.sample_rate()));
  if (x.size() < block) {
    throw Error(ErrorCode::kTooShort,
                "integrated loudness needs >= 400 ms, got " +
                    std::to_string(x.size()) + " samples");
  }
  const auto weighted =
      filter_cascade(x.samples(), k_weighting_filters(x.sample_rate()));

  std::vector<double> prefix(weighted.size() + 1, 0.0);
  for (std::size_t i = 0; i < weighted.size(); ++i) {
    prefix[i + 1] = prefix[i] + weighted[i] * weighted[i];
  }
  const std::size_t n_blocks = (x.size() - block) / step + 1;
  std::vector<double> power(n_blocks);
  for (std::size_t j = 0; j < n_blocks; ++j) {
    power[j] = (prefix[j * step + block] - prefix[j * step]) /
               static_cast<double>(block);
  }

  double abs_sum = 0.0;
  std::size_t abs_count = 0;
  for (double z : power) {
    if (z > 0.0 && block_loudness(z) > kAbsoluteGate) {
      abs_sum += z;
      ++abs_count;
    }
  }
  LoudnessReading reading;
  if (abs_count == 0) return reading;

  const double relative_gate =
      block_loudness(abs_sum / static_cast<double>(abs_count)) + kRelativeGate;
  double sum = 0.0;
  std::size_t count = 0;
  for (double z : power) {
    if (z <= 0.0) continue;
    const double l = block_loudness(z);
    if (l > kAbsoluteGate && l > relative_gate) {
      sum += z;
      ++count;
    }
  }
  if (count == 0) return reading;
  reading.lufs = block_loudness(sum / static_cast<double>(count));
  reading.gated_block_count = count;
  return reading;
}

double gain_for_snr(double speech_lufs, double noise_lufs,
                    double target_snr_db) {
  return std::pow(10.0, (speech_lufs - noise_lufs - target_snr_db) / 20.0);
}

double gain_for_snr(const AudioBuffer& speech, const AudioBuffer& noise,
                    double target_snr_db) {
  if (!std::isfinite(target_snr_db)) {
    throw Error(ErrorCode::kInvalidArgument, "target SNR must be finite");
  }
  const auto ls = integrated_lufs(speech);
  if (!ls.present()) {
    throw Error(ErrorCode::kAbsentLoudness, "speech is gated out entirely");
  }
  const auto ln = integrated_lufs(noise);
  if (!ln.present()) {
    throw Error(ErrorCode::kAbsentLoudness, "noise is gated out entirely");
  }
  return gain_for_snr(*ls.lufs, *ln.lufs, target_snr_db);
}

}  // namespace devo
