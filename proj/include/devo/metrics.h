// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Objective measurements: spectral-magnitude, PCM and Mel-L1 losses, STOI,
// SNR, delta-vs-noisy reporting and the CSV metric report.

#ifndef DEVO_METRICS_H_
#define DEVO_METRICS_H_

#include <optional>
#include <string>
#include <vector>

#include "devo/audio.h"
#include "devo/dsp.h"

namespace devo {

// Clean speech s, noisy mixture x and enhanced estimate s_hat, all the same
// length and rate. Noise is n = x - s and its estimate n_hat = x - s_hat.
class EnhancementTriple {
 public:
  EnhancementTriple(AudioBuffer clean, AudioBuffer noisy, AudioBuffer enhanced);

  const AudioBuffer& clean() const { return clean_; }
  const AudioBuffer& noisy() const { return noisy_; }
  const AudioBuffer& enhanced() const { return enhanced_; }
  AudioBuffer noise() const { return difference(noisy_, clean_); }
  AudioBuffer noise_estimate() const { return difference(noisy_, enhanced_); }

 private:
  AudioBuffer clean_;
  AudioBuffer noisy_;
  AudioBuffer enhanced_;
};

inline constexpr int kLossFrameLen = 1024;
inline constexpr int kLossHopLen = 160;

// Mean over STFT cells of | (|A_r| + |A_i|) - (|B_r| + |B_i|) |.
double spectral_magnitude_loss(const AudioBuffer& a, const AudioBuffer& b);

// 0.5 * L_SM(s, s_hat) + 0.5 * L_SM(n, n_hat).
double pcm_loss(const EnhancementTriple& triple);

// 0.5 * L1(logmel(s), logmel(s_hat)) + 0.5 * L1(logmel(n), logmel(n_hat)),
// each L1 averaged over cells.
double mel_l1_loss(const EnhancementTriple& triple, const MelConfig& cfg = {});

// Classic STOI at 10 kHz (inputs are resampled). Throws kTooShort when fewer
// than 30 non-silent analysis frames remain.
double stoi(const AudioBuffer& clean, const AudioBuffer& processed);

// 10 log10(sum s^2 / sum (d - s)^2); absent when the ratio is not finite.
std::optional<double> snr_db(const AudioBuffer& clean, const AudioBuffer& degraded);

enum class Metric { kStoi, kSnr, kSpectral, kPcm, kMelL1 };

const char* to_string(Metric m);
Metric metric_from_string(const std::string& name);
bool has_delta(Metric m);

// Value for one utterance (enhanced vs clean; losses use the whole triple).
std::optional<double> metric_value(Metric m, const EnhancementTriple& triple);

// metric(enhanced, clean) - metric(noisy, clean) for STOI and SNR.
std::optional<double> delta_metric(Metric m, const EnhancementTriple& triple);

struct MetricReport {
  struct Row {
    std::string id;
    std::vector<std::optional<double>> values;
  };
  std::vector<std::string> columns;
  std::vector<Row> rows;

  // Arithmetic mean of the present values of each column.
  std::vector<std::optional<double>> means() const;
  // Header, one line per utterance, then a "mean" line. Absent values are
  // empty cells.
  std::string to_csv() const;
};

struct LabeledTriple {
  std::string id;
  EnhancementTriple triple;
};

// Columns: each metric in order, then delta_<metric> for STOI/SNR, then any
// external columns (left empty for values computed by other tools).
MetricReport evaluate(const std::vector<LabeledTriple>& items,
                      const std::vector<Metric>& metrics,
                      const std::vector<std::string>& external_columns = {});

}  // namespace devo

#endif  // DEVO_METRICS_H_
