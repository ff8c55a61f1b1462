// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <string>

#include "devo/error.h"
#include "devo/metrics.h"

namespace devo {

EnhancementTriple::EnhancementTriple(AudioBuffer clean, AudioBuffer noisy,
                                     AudioBuffer enhanced)
    : clean_(std::move(clean)), noisy_(std::move(noisy)), enhanced_(std::move(enhanced)) {
  const auto same = [](const AudioBuffer& a, const AudioBuffer& b) {
    return a.size() == b.size() && a.sample_rate() == b.sample_rate();
  };
  if (!same(clean_, noisy_) || !same(clean_, enhanced_)) {
    throw Error(ErrorCode::kLengthMismatch,
                "clean/noisy/enhanced lengths " + std::to_string(clean_.size()) +
                    "/" + std::to_string(noisy_.size()) + "/" +
                    std::to_string(enhanced_.size()) + " or rates differ");
  }
}

double spectral_magnitude_loss(const AudioBuffer& a, const AudioBuffer& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  const Spectrogram sa = stft(a, kLossFrameLen, kLossHopLen);
  const Spectrogram sb = stft(b, kLossFrameLen, kLossHopLen);
  double total = 0.0;
  for (std::size_t i = 0; i < sa.real.size(); ++i) {
    const double ma = std::abs(static_cast<double>(sa.real[i])) +
                      std::abs(static_cast<double>(sa.imag[i]));
    const double mb = std::abs(static_cast<double>(sb.real[i])) +
                      std::abs(static_cast<double>(sb.imag[i]));
    total += std::abs(ma - mb);
  }
  return total / static_cast<double>(sa.frames * sa.bins);
}

double pcm_loss(const EnhancementTriple& triple) {
  return 0.5 * spectral_magnitude_loss(triple.clean(), triple.enhanced()) +
         0.5 * spectral_magnitude_loss(triple.noise(), triple.noise_estimate());
}

namespace {

double mean_abs_difference(const FeatureMap& a, const FeatureMap& b) {
  const auto x = a.data();
  const auto y = b.data();
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    total += std::abs(static_cast<double>(x[i]) - static_cast<double>(y[i]));
  }
  return total / static_cast<double>(x.size());
}

}  // namespace

double mel_l1_loss(const EnhancementTriple& triple, const MelConfig& cfg) {
  const double speech = mean_abs_difference(log_mel(triple.clean(), cfg),
                                            log_mel(triple.enhanced(), cfg));
  const double noise = mean_abs_difference(log_mel(triple.noise(), cfg),
                                           log_mel(triple.noise_estimate(), cfg));
  return 0.5 * speech + 0.5 * noise;
}

}  // namespace devo
