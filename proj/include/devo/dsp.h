// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Deterministic signal analysis: STFT, log-Mel features, BS.1770 K-weighting
// and integrated loudness, and loudness-based SNR gains.

#ifndef DEVO_DSP_H_
#define DEVO_DSP_H_

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "devo/audio.h"
#include "devo/feature_map.h"

namespace devo {

// One-sided complex STFT split into real and imaginary planes, each stored
// frames x bins, row-major.
struct Spectrogram {
  std::size_t frames = 0;
  std::size_t bins = 0;
  int frame_len = 0;
  int hop_len = 0;
  std::vector<float> real;
  std::vector<float> imag;

  float re(std::size_t t, std::size_t f) const { return real[t * bins + f]; }
  float im(std::size_t t, std::size_t f) const { return imag[t * bins + f]; }
};

// Periodic Hann window of length n.
std::vector<double> hann_window(int n);

// Real-input DFT of arbitrary length n = in.size(); returns n/2 + 1 bins.
std::vector<std::complex<double>> rfft(std::span<const double> in);
// Zero-pads (or truncates) to fft_len before transforming.
std::vector<std::complex<double>> rfft(std::span<const double> in,
                                       int fft_len);

// Number of frames of a non-centered STFT: floor((n - frame) / hop) + 1.
std::size_t stft_frame_count(std::size_t n, int frame_len, int hop_len);

// Hann-windowed, non-centered: frame t covers [t*hop, t*hop + frame_len).
Spectrogram stft(const AudioBuffer& x, int frame_len, int hop_len);

struct MelConfig {
  int frame_len = 1024;
  int hop_len = 160;
  int n_mels = 128;
  double fmin = 0.0;
  double fmax = 8000.0;
  double log_floor = 1e-5;

  void validate(int sample_rate) const;
};

double hz_to_mel(double hz);  // HTK
double mel_to_hz(double mel);

// Triangular HTK filterbank, n_mels x (frame_len/2 + 1), row-major.
std::vector<float> mel_filterbank(const MelConfig& cfg, int sample_rate);
// Center frequency of each Mel band in Hz.
std::vector<double> mel_center_frequencies(const MelConfig& cfg);

// Natural log of the Mel-filtered magnitude spectrogram, floored at
// cfg.log_floor. Output frame rate is sample_rate / hop_len.
FeatureMap log_mel(const AudioBuffer& x, const MelConfig& cfg = {});

struct Biquad {
  double b0, b1, b2, a1, a2;  // a0 normalised to 1
};

// BS.1770 pre-filter pair (high shelf, then high pass) for any sample rate.
std::array<Biquad, 2> k_weighting_filters(int sample_rate);
AudioBuffer k_weight(const AudioBuffer& x);

struct LoudnessReading {
  std::optional<double> lufs;  // absent when every block is gated out
  std::size_t gated_block_count = 0;

  bool present() const { return lufs.has_value(); }
};

// BS.1770-4 integrated loudness (400 ms blocks, 75 % overlap, -70 LUFS
// absolute gate, -10 LU relative gate). Requires at least 400 ms of audio.
LoudnessReading integrated_lufs(const AudioBuffer& x);

// Linear gain g with LUFS(speech) - LUFS(g * noise) = target_snr_db.
double gain_for_snr(double speech_lufs, double noise_lufs,
                    double target_snr_db);
double gain_for_snr(const AudioBuffer& speech, const AudioBuffer& noise,
                    double target_snr_db);

}  // namespace devo

#endif  // DEVO_DSP_H_
