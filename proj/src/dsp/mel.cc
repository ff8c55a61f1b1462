// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <cmath>
#include <string>

#include "devo/dsp.h"
#include "devo/error.h"

namespace devo {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

void MelConfig::validate(int sample_rate) const {
  if (frame_len <= 0 || hop_len <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "mel frame/hop must be positive");
  }
  if (n_mels < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_mels must be >= 1");
  }
  if (!(fmin >= 0.0 && fmin < fmax && fmax <= sample_rate / 2.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "mel range must satisfy 0 <= fmin < fmax <= sample_rate/2");
  }
  if (!(log_floor > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "log floor must be positive");
  }
}

namespace {

// n_mels + 2 band edges equally spaced on the HTK Mel scale.
std::vector<double> band_edges(const MelConfig& cfg) {
  const double lo = hz_to_mel(cfg.fmin);
  const double hi = hz_to_mel(cfg.fmax);
  std::vector<double> edges(static_cast<std::size_t>(cfg.n_mels + 2));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(cfg.n_mels + 1));
  }
  return edges;
}

}  // namespace

std::vector<double> mel_center_frequencies(const MelConfig& cfg) {
  const auto edges = band_edges(cfg);
  return {edges.begin() + 1, edges.end() - 1};
}

std::vector<float> mel_filterbank(const MelConfig& cfg, int sample_rate) {
  cfg.validate(sample_rate);
  const auto edges = band_edges(cfg);
  const std::size_t bins = static_cast<std::size_t>(cfg.frame_len / 2 + 1);
  std::vector<float> bank(static_cast<std::size_t>(cfg.n_mels) * bins, 0.0f);
  for (int m = 0; m < cfg.n_mels; ++m) {
    const double left = edges[m];
    const double center = edges[m + 1];
    const double right = edges[m + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double f =
          static_cast<double>(k) * sample_rate / static_cast<double>(cfg.frame_len);
      const double rise = (f - left) / (center - left);
      const double fall = (right - f) / (right - center);
      bank[m * bins + k] =
          static_cast<float>(std::max(0.0, std::min(rise, fall)));
    }
  }
  return bank;
}

FeatureMap log_mel(const AudioBuffer& x, const MelConfig& cfg) {
  cfg.validate(x.sample_rate());
  const Spectrogram spec = stft(x, cfg.frame_len, cfg.hop_len);
  const auto bank = mel_filterbank(cfg, x.sample_rate());
  FeatureMap out(spec.frames, static_cast<std::size_t>(cfg.n_mels),
                 static_cast<double>(x.sample_rate()) / cfg.hop_len);
  std::vector<double> magnitude(spec.bins);
  for (std::size_t t = 0; t < spec.frames; ++t) {
    for (std::size_t f = 0; f < spec.bins; ++f) {
      magnitude[f] = std::hypot(static_cast<double>(spec.re(t, f)),
                                static_cast<double>(spec.im(t, f)));
    }
    for (int m = 0; m < cfg.n_mels; ++m) {
      const float* weights = bank.data() + m * spec.bins;
      double energy = 0.0;
      for (std::size_t f = 0; f < spec.bins; ++f) {
        energy += weights[f] * magnitude[f];
      }
      out.at(t, static_cast<std::size_t>(m)) =
          static_cast<float>(std::log(std::max(energy, cfg.log_floor)));
    }
  }
  return out;
}

}  // namespace devo
