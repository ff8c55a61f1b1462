// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <string>
#include <utility>

#include "devo/audio.h"
#include "devo/error.h"

namespace devo {

AudioBuffer::AudioBuffer(std::vector<float> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (sample_rate_ <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample rate must be positive, got " +
                    std::to_string(sample_rate_));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw Error(ErrorCode::kNonFinite,
                  "sample " + std::to_string(i) + " is not finite");
    }
  }
}

double AudioBuffer::duration_seconds() const {
  return static_cast<double>(samples_.size()) / sample_rate_;
}

AudioBuffer scaled(const AudioBuffer& x, double gain) {
  std::vector<float> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = static_cast<float>(x[i] * gain);
  }
  return AudioBuffer(std::move(out), x.sample_rate());
}

namespace {

void check_compatible(const AudioBuffer& a, const AudioBuffer& b) {
  if (a.size() != b.size() || a.sample_rate() != b.sample_rate()) {
    throw Error(ErrorCode::kLengthMismatch,
                "buffers differ: " + std::to_string(a.size()) + "@" +
                    std::to_string(a.sample_rate()) + " vs " +
                    std::to_string(b.size()) + "@" +
                    std::to_string(b.sample_rate()));
  }
}

}  // namespace

AudioBuffer difference(const AudioBuffer& a, const AudioBuffer& b) {
  check_compatible(a, b);
  std::vector<float> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return AudioBuffer(std::move(out), a.sample_rate());
}

AudioBuffer sum(const AudioBuffer& a, const AudioBuffer& b) {
  check_compatible(a, b);
  std::vector<float> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return AudioBuffer(std::move(out), a.sample_rate());
}

}  // namespace devo
