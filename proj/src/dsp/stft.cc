// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <string>

#include "devo/dsp.h"
#include "devo/error.h"

namespace devo {

std::size_t stft_frame_count(std::size_t n, int frame_len, int hop_len) {
  if (n < static_cast<std::size_t>(frame_len)) return 0;
  return (n - static_cast<std::size_t>(frame_len)) /
             static_cast<std::size_t>(hop_len) +
         1;
}

Spectrogram stft(const AudioBuffer& x, int frame_len, int hop_len) {
  if (frame_len <= 0 || hop_len <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame and hop lengths must be positive");
  }
  if (x.size() < static_cast<std::size_t>(frame_len)) {
    throw Error(ErrorCode::kTooShort,
                std::to_string(x.size()) + " samples < frame length " +
                    std::to_string(frame_len));
  }
  Spectrogram spec;
  spec.frame_len = frame_len;
  spec.hop_len = hop_len;
  spec.frames = stft_frame_count(x.size(), frame_len, hop_len);
  spec.bins = static_cast<std::size_t>(frame_len / 2 + 1);
  spec.real.resize(spec.frames * spec.bins);
  spec.imag.resize(spec.frames * spec.bins);

  const auto window = hann_window(frame_len);
  std::vector<double> frame(static_cast<std::size_t>(frame_len));
  const auto samples = x.samples();
  for (std::size_t t = 0; t < spec.frames; ++t) {
    const std::size_t start = t * static_cast<std::size_t>(hop_len);
    for (int i = 0; i < frame_len; ++i) {
      frame[i] = window[i] * samples[start + i];
    }
    const auto bins = rfft(frame);
    for (std::size_t f = 0; f < spec.bins; ++f) {
      spec.real[t * spec.bins + f] = static_cast<float>(bins[f].real());
      spec.imag[t * spec.bins + f] = static_cast<float>(bins[f].imag());
    }
  }
  return spec;
}

}  // namespace devo
