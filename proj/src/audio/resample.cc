// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "devo/audio.h"
#include "devo/error.h"

namespace devo {
namespace {

constexpr int kHalfTaps = 32;         // 64 taps per phase
constexpr double kKaiserBeta = 5.65;  // ~60 dB stopband

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

double kaiser(double u, double half_width) {
  const double r = u / half_width;
  if (std::abs(r) >= 1.0) return 0.0;
  return std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) /
         std::cyl_bessel_i(0.0, kKaiserBeta);
}

// taps[p * 64 + j] weights input sample (i - 31 + j) for an output instant
// i + p / up, where i is the integer part of the input-domain position.
std::vector<double> design_phases(long up, long down) {
  const double cutoff = std::min(1.0, static_cast<double>(up) / down);
  std::vector<double> taps(static_cast<std::size_t>(up) * 2 * kHalfTaps);
  for (long p = 0; p < up; ++p) {
    double* h = taps.data() + p * 2 * kHalfTaps;
    double total = 0.0;
    for (int j = 0; j < 2 * kHalfTaps; ++j) {
      const double u = (kHalfTaps - 1 - j) + static_cast<double>(p) / up;
      h[j] = cutoff * sinc(cutoff * u) * kaiser(u, kHalfTaps);
      total += h[j];
    }
    // Unit DC gain per phase keeps constant signals constant.
    for (int j = 0; j < 2 * kHalfTaps; ++j) h[j] /= total;
  }
  return taps;
}

}  // namespace

AudioBuffer resample(const AudioBuffer& buf, int target_rate) {
  if (target_rate <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "target rate must be positive, got " +
                    std::to_string(target_rate));
  }
  const int source_rate = buf.sample_rate();
  if (target_rate == source_rate) return buf;

  const long g = std::gcd(source_rate, target_rate);
  const long up = target_rate / g;
  const long down = source_rate / g;
  const auto taps = design_phases(up, down);

  const auto n_in = static_cast<long long>(buf.size());
  const long long n_out =
      (n_in * target_rate + source_rate / 2) / source_rate;
  const auto x = buf.samples();
  std::vector<float> out(static_cast<std::size_t>(n_out));
  for (long long m = 0; m < n_out; ++m) {
    const long long pos = m * down;
    const long long i = pos / up;
    const long p = static_cast<long>(pos % up);
    const double* h = taps.data() + p * 2 * kHalfTaps;
    double acc = 0.0;
    for (int j = 0; j < 2 * kHalfTaps; ++j) {
      const long long k = i - (kHalfTaps - 1) + j;
      if (k < 0 || k >= n_in) continue;
      acc += h[j] * x[static_cast<std::size_t>(k)];
    }
    out[static_cast<std::size_t>(m)] = static_cast<float>(acc);
  }
  return AudioBuffer(std::move(out), target_rate);
}

}  // namespace devo
