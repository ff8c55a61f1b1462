// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <string>

#include "devo/error.h"
#include "devo/metrics.h"

namespace devo {

std::optional<double> snr_db(const AudioBuffer& clean, const AudioBuffer& degraded) {
  if (clean.size() != degraded.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(clean.size()) + " vs " + std::to_string(degraded.size()));
  }
  double signal = 0.0;
  double residual = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const double s = clean[i];
    const double r = static_cast<double>(degraded[i]) - s;
    signal += s * s;
    residual += r * r;
  }
  if (residual == 0.0 || signal == 0.0) return std::nullopt;
  return 10.0 * std::log10(signal / residual);
}

const char* to_string(Metric m) {
  switch (m) {
    case Metric::kStoi: return "stoi";
    case Metric::kSnr: return "snr";
    case Metric::kSpectral: return "lsm";
    case Metric::kPcm: return "pcm";
    case Metric::kMelL1: return "mel_l1";
  }
  return "?";
}

Metric metric_from_string(const std::string& name) {
  for (Metric m : {Metric::kStoi, Metric::kSnr, Metric::kSpectral, Metric::kPcm,
                   Metric::kMelL1}) {
    if (name == to_string(m)) return m;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown metric '" + name + "' (stoi, snr, lsm, pcm, mel_l1)");
}

bool has_delta(Metric m) { return m == Metric::kStoi || m == Metric::kSnr; }

std::optional<double> metric_value(Metric m, const EnhancementTriple& t) {
  switch (m) {
    case Metric::kStoi: return stoi(t.clean(), t.enhanced());
    case Metric::kSnr: return snr_db(t.clean(), t.enhanced());
    case Metric::kSpectral: return spectral_magnitude_loss(t.clean(), t.enhanced());
    case Metric::kPcm: return pcm_loss(t);
    case Metric::kMelL1: return mel_l1_loss(t);
  }
  return std::nullopt;
}

std::optional<double> delta_metric(Metric m, const EnhancementTriple& t) {
  std::optional<double> enhanced;
  std::optional<double> noisy;
  switch (m) {
    case Metric::kStoi:
      enhanced = stoi(t.clean(), t.enhanced());
      noisy = stoi(t.clean(), t.noisy());
      break;
    case Metric::kSnr:
      enhanced = snr_db(t.clean(), t.enhanced());
      noisy = snr_db(t.clean(), t.noisy());
      break;
    default:
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("no delta defined for ") + to_string(m));
  }
  if (!enhanced || !noisy) return std::nullopt;
  return *enhanced - *noisy;
}

}  // namespace devo
