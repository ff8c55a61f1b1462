// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "devo/error.h"
#include "devo/metrics.h"

namespace devo {
namespace {

constexpr int kStoiRate = 10000;
constexpr int kFrameLen = 256;
constexpr int kFftLen = 512;
constexpr int kHop = 128;
constexpr int kBands = 15;
constexpr double kMinFreq = 150.0;
constexpr int kSegment = 30;
constexpr double kBeta = -15.0;
constexpr double kDynRange = 40.0;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kBins = kFftLen / 2 + 1;

// Hann of length n + 2 with both zero endpoints dropped.
std::array<double, kFrameLen> analysis_window() {
  std::array<double, kFrameLen> w{};
  const double m = kFrameLen + 1;
  for (int i = 0; i < kFrameLen; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (i + 1) / m);
  }
  return w;
}

struct BandRange {
  int lo = 0;
  int hi = 0;  // exclusive
};

int nearest_bin(double freq) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kBins; ++k) {
    const double f = static_cast<double>(k) * kStoiRate / kFftLen;
    const double d = (f - freq) * (f - freq);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

std::array<BandRange, kBands> third_octave_bands() {
  std::array<BandRange, kBands> bands{};
  for (int i = 0; i < kBands; ++i) {
    const double lo = kMinFreq * std::pow(2.0, (2.0 * i - 1.0) / 6.0);
    const double hi = kMinFreq * std::pow(2.0, (2.0 * i + 1.0) / 6.0);
    bands[i] = {nearest_bin(lo), nearest_bin(hi)};
  }
  return bands;
}

std::size_t frame_count(std::size_t n) {
  // Frames start at 0, hop, ... strictly below n - frame length.
  if (n <= static_cast<std::size_t>(kFrameLen)) return 0;
  return (n - kFrameLen - 1) / kHop + 1;
}

// Drops frames of x more than kDynRange dB below its loudest frame and
// overlap-adds the windowed survivors, applying the same mask to y.
void remove_silent_frames(std::vector<double>& x, std::vector<double>& y) {
  static const auto w = analysis_window();
  const std::size_t frames = frame_count(x.size());
  std::vector<double> energy(frames);
  for (std::size_t t = 0; t < frames; ++t) {
    double ss = 0.0;
    for (int i = 0; i < kFrameLen; ++i) {
      const double v = w[i] * x[t * kHop + i];
      ss += v * v;
    }
    energy[t] = 20.0 * std::log10(std::sqrt(ss) + kEps);
  }
  const double peak = frames == 0 ? 0.0 : *std::max_element(energy.begin(), energy.end());
  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < frames; ++t) {
    if (peak - kDynRange - energy[t] < 0.0) kept.push_back(t);
  }
  const std::size_t out_len = kept.empty() ? 0 : (kept.size() - 1) * kHop + kFrameLen;
  std::vector<double> xs(out_len, 0.0);
  std::vector<double> ys(out_len, 0.0);
  for (std::size_t j = 0; j < kept.size(); ++j) {
    const std::size_t src = kept[j] * kHop;
    for (int i = 0; i < kFrameLen; ++i) {
      xs[j * kHop + i] += w[i] * x[src + i];
      ys[j * kHop + i] += w[i] * y[src + i];
    }
  }
  x = std::move(xs);
  y = std::move(ys);
}

// One-third-octave band envelopes, frames x bands.
std::vector<std::array<double, kBands>> band_envelopes(const std::vector<double>& x) {
  static const auto w = analysis_window();
  static const auto bands = third_octave_bands();
  const std::size_t frames = frame_count(x.size());
  std::vector<std::array<double, kBands>> out(frames);
  std::vector<double> buf(kFrameLen);
  for (std::size_t t = 0; t < frames; ++t) {
    for (int i = 0; i < kFrameLen; ++i) buf[i] = w[i] * x[t * kHop + i];
    const auto spec = rfft(buf, kFftLen);
    for (int b = 0; b < kBands; ++b) {
      double power = 0.0;
      for (int k = bands[b].lo; k < bands[b].hi; ++k) power += std::norm(spec[k]);
      out[t][b] = std::sqrt(power);
    }
  }
  return out;
}

std::vector<double> at_analysis_rate(const AudioBuffer& x) {
  const AudioBuffer r = x.sample_rate() == kStoiRate ? x : resample(x, kStoiRate);
  return {r.samples().begin(), r.samples().end()};
}

double norm(const std::array<double, kSegment>& v) {
  double ss = 0.0;
  for (double e : v) ss += e * e;
  return std::sqrt(ss);
}

double mean(const std::array<double, kSegment>& v) {
  double s = 0.0;
  for (double e : v) s += e;
  return s / kSegment;
}

}  // namespace

double stoi(const AudioBuffer& clean, const AudioBuffer& processed) {
  if (clean.size() != processed.size() || clean.sample_rate() != processed.sample_rate()) {
    throw Error(ErrorCode::kLengthMismatch,
                "stoi inputs differ: " + std::to_string(clean.size()) + " vs " +
                    std::to_string(processed.size()) + " samples");
  }
  std::vector<double> x = at_analysis_rate(clean);
  std::vector<double> y = at_analysis_rate(processed);
  remove_silent_frames(x, y);
  const auto xt = band_envelopes(x);
  const auto yt = band_envelopes(y);
  if (xt.size() < static_cast<std::size_t>(kSegment)) {
    throw Error(ErrorCode::kTooShort,
                "stoi needs " + std::to_string(kSegment) + " non-silent frames, got " +
                    std::to_string(xt.size()));
  }

  const double clip = 1.0 + std::pow(10.0, -kBeta / 20.0);
  const std::size_t segments = xt.size() - kSegment + 1;
  double total = 0.0;
  std::array<double, kSegment> xs{};
  std::array<double, kSegment> ys{};
  for (std::size_t m = 0; m < segments; ++m) {
    for (int b = 0; b < kBands; ++b) {
      for (int n = 0; n < kSegment; ++n) {
        xs[n] = xt[m + n][b];
        ys[n] = yt[m + n][b];
      }
      const double scale = norm(xs) / (norm(ys) + kEps);
      for (int n = 0; n < kSegment; ++n) ys[n] = std::min(ys[n] * scale, xs[n] * clip);
      const double xm = mean(xs);
      const double ym = mean(ys);
      for (int n = 0; n < kSegment; ++n) {
        xs[n] -= xm;
        ys[n] -= ym;
      }
      const double xn = norm(xs) + kEps;
      const double yn = norm(ys) + kEps;
      for (int n = 0; n < kSegment; ++n) total += (ys[n] / yn) * (xs[n] / xn);
    }
  }
  return total / static_cast<double>(segments * kBands);
}

}  // namespace devo
