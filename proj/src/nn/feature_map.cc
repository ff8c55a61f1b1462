// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "devo/feature_map.h"

#include <cmath>
#include <string>

#include "devo/audio.h"
#include "devo/error.h"

namespace devo {

FeatureMap::FeatureMap(std::size_t frames, std::size_t channels,
                       double frame_rate)
    : data_(frames * channels, 0.0f),
      frames_(frames),
      channels_(channels),
      frame_rate_(frame_rate) {
  if (channels == 0 || !(frame_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature map needs >= 1 channel and a positive frame rate");
  }
}

FeatureMap::FeatureMap(std::vector<float> data, std::size_t channels,
                       double frame_rate)
    : data_(std::move(data)), channels_(channels), frame_rate_(frame_rate) {
  if (channels == 0 || !(frame_rate > 0.0) || data_.size() % channels != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "feature map data of " + std::to_string(data_.size()) +
                    " values does not tile " + std::to_string(channels) +
                    " channels");
  }
  frames_ = data_.size() / channels;
}

FeatureMap FeatureMap::from_audio(const AudioBuffer& audio) {
  return FeatureMap(std::vector<float>(audio.samples().begin(),
                                       audio.samples().end()),
                    1, audio.sample_rate());
}

FeatureMap FeatureMap::slice(std::size_t begin, std::size_t count) const {
  if (begin + count > frames_) {
    throw Error(ErrorCode::kInvalidArgument, "slice beyond end of map");
  }
  std::vector<float> out(data_.begin() + begin * channels_,
                         data_.begin() + (begin + count) * channels_);
  FeatureMap m(std::move(out), channels_, frame_rate_);
  return m;
}

void FeatureMap::append(const FeatureMap& other) {
  if (other.channels_ != channels_) {
    throw Error(ErrorCode::kShapeMismatch, "append with different channels");
  }
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  frames_ += other.frames_;
}

bool FeatureMap::all_finite() const {
  for (float v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace devo
