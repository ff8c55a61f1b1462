// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEVO_FEATURE_MAP_H_
#define DEVO_FEATURE_MAP_H_

#include <cstddef>
#include <span>
#include <vector>

namespace devo {

class AudioBuffer;

// Time-major (frames x channels) float matrix sampled at frame_rate Hz.
// Encoder activations, Mel features and vocoder activations all live here;
// a waveform is the one-channel case.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(std::size_t frames, std::size_t channels, double frame_rate);
  FeatureMap(std::vector<float> data, std::size_t channels, double frame_rate);

  static FeatureMap from_audio(const AudioBuffer& audio);

  std::size_t frames() const { return frames_; }
  std::size_t channels() const { return channels_; }
  double frame_rate() const { return frame_rate_; }
  bool empty() const { return frames_ == 0; }

  float& at(std::size_t t, std::size_t c) { return data_[t * channels_ + c]; }
  float at(std::size_t t, std::size_t c) const {
    return data_[t * channels_ + c];
  }
  float* row(std::size_t t) { return data_.data() + t * channels_; }
  const float* row(std::size_t t) const { return data_.data() + t * channels_; }

  std::span<float> data() { return data_; }
  std::span<const float> data() const { return data_; }
  std::vector<float> release() && { return std::move(data_); }

  // Frames [begin, begin + count) as a new map.
  FeatureMap slice(std::size_t begin, std::size_t count) const;
  void append(const FeatureMap& other);

  bool all_finite() const;

  bool operator==(const FeatureMap& other) const = default;

 private:
  std::vector<float> data_;
  std::size_t frames_ = 0;
  std::size_t channels_ = 1;
  double frame_rate_ = 1.0;
};

}  // namespace devo

#endif  // DEVO_FEATURE_MAP_H_
