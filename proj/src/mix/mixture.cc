// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "devo/dsp.h"
#include "devo/error.h"
#include "devo/mix.h"

namespace devo {
namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Length of the loopable prefix: up to the last sign change, so the wrap
// joins two near-zero samples.
std::size_t loop_length(std::span<const float> x) {
  for (std::size_t i = x.size() - 1; i > 0; --i) {
    if ((x[i - 1] < 0.0f) != (x[i] < 0.0f) || x[i] == 0.0f) return i;
  }
  return x.size();
}

// Absent when the scaled noise falls under the absolute gate.
std::optional<double> measured_snr(double speech_lufs, const AudioBuffer& noise) {
  const auto ln = integrated_lufs(noise);
  if (!ln.present()) return std::nullopt;
  return speech_lufs - *ln.lufs;
}

}  // namespace

double sample_snr(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return kMixSnrLow + (kMixSnrHigh - kMixSnrLow) * unit_uniform(rng);
}

AudioBuffer fit_noise(const AudioBuffer& noise, std::size_t length, std::uint64_t seed) {
  if (noise.empty()) throw Error(ErrorCode::kTooShort, "noise is empty");
  const auto src = noise.samples();
  std::vector<float> out(length);
  if (src.size() >= length) {
    std::mt19937_64 rng(seed ^ 0x6e6f697365ULL);
    const std::size_t span = src.size() - length;
    const std::size_t offset = span == 0 ? 0 : rng() % (span + 1);
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(offset), length, out.begin());
  } else {
    const std::size_t period = loop_length(src);
    for (std::size_t i = 0; i < length; ++i) out[i] = src[i % period];
  }
  return AudioBuffer(std::move(out), noise.sample_rate());
}

Mixture mix_buffers(const AudioBuffer& speech, const AudioBuffer& noise,
                    std::optional<double> snr_db, std::uint64_t seed) {
  if (speech.sample_rate() != noise.sample_rate()) {
    throw Error(ErrorCode::kSampleRate, "speech and noise rates differ");
  }
  if (snr_db && !std::isfinite(*snr_db)) {
    throw Error(ErrorCode::kInvalidArgument, "target snr must be finite");
  }
  const double target = snr_db ? *snr_db : sample_snr(seed);
  const AudioBuffer fitted = fit_noise(noise, speech.size(), seed);

  const auto ls = integrated_lufs(speech);
  const auto ln = integrated_lufs(fitted);
  if (!ls.present() || !ln.present()) {
    throw Error(ErrorCode::kAbsentLoudness, "mixture component gated out");
  }
  double g = gain_for_snr(*ls.lufs, *ln.lufs, target);
  // The absolute gate can shift with level; a couple of corrections land the
  // realized value on target.
  for (int iter = 0; iter < 3; ++iter) {
    const auto realized = measured_snr(*ls.lufs, scaled(fitted, g));
    if (!realized) break;
    const double err = *realized - target;
    if (std::abs(err) < 1e-3) break;
    g *= std::pow(10.0, err / 20.0);
  }

  const auto s = speech.samples();
  const auto n = fitted.samples();
  std::vector<float> noise_out(s.size());
  std::vector<float> mix_out(s.size());
  float peak = 0.0f;
  for (std::size_t i = 0; i < s.size(); ++i) {
    noise_out[i] = static_cast<float>(g * static_cast<double>(n[i]));
    mix_out[i] = s[i] + noise_out[i];
    peak = std::max(peak, std::abs(mix_out[i]));
  }
  std::vector<float> clean_out(s.begin(), s.end());
  double peak_scale = 1.0;
  if (peak > kPeakCeiling) {
    peak_scale = kPeakCeiling / static_cast<double>(peak);
    for (std::size_t i = 0; i < s.size(); ++i) {
      clean_out[i] = static_cast<float>(clean_out[i] * peak_scale);
      noise_out[i] = static_cast<float>(noise_out[i] * peak_scale);
      mix_out[i] = static_cast<float>(mix_out[i] * peak_scale);
    }
  }
  const int rate = speech.sample_rate();
  return Mixture{AudioBuffer(std::move(mix_out), rate), AudioBuffer(std::move(clean_out), rate),
                 AudioBuffer(std::move(noise_out), rate), target, g, peak_scale};
}

Mixture make_mixture(const MixSpec& spec) {
  const auto load = [](const std::filesystem::path& p) {
    AudioBuffer b = read_wav(p);
    return b.sample_rate() == kMixRate ? b : resample(b, kMixRate);
  };
  Mixture m = mix_buffers(load(spec.speech_path), load(spec.noise_path), spec.snr_db, spec.seed);
  if (!spec.mixture_out.empty()) write_wav(spec.mixture_out, m.mixture, WavEncoding::kFloat32);
  if (!spec.clean_out.empty()) write_wav(spec.clean_out, m.clean, WavEncoding::kFloat32);
  if (!spec.noise_out.empty()) write_wav(spec.noise_out, m.noise, WavEncoding::kFloat32);
  return m;
}

}  // namespace devo
