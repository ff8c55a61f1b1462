// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Mono waveform container, WAV I/O, raw float32 stream framing and
// rational-ratio resampling.

#ifndef DEVO_AUDIO_H_
#define DEVO_AUDIO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace devo {

inline constexpr int kEngineSampleRate = 16000;

// Immutable mono waveform, full scale is +-1.0. Construction rejects
// non-finite samples and non-positive rates.
class AudioBuffer {
 public:
  AudioBuffer() = default;
  AudioBuffer(std::vector<float> samples, int sample_rate);

  std::span<const float> samples() const { return samples_; }
  int sample_rate() const { return sample_rate_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double duration_seconds() const;

  float operator[](std::size_t i) const { return samples_[i]; }

  bool operator==(const AudioBuffer&) const = default;

 private:
  std::vector<float> samples_;
  int sample_rate_ = kEngineSampleRate;
};

// Elementwise helpers used when deriving noise/estimate signals.
AudioBuffer scaled(const AudioBuffer& x, double gain);
AudioBuffer difference(const AudioBuffer& a, const AudioBuffer& b);
AudioBuffer sum(const AudioBuffer& a, const AudioBuffer& b);

enum class WavEncoding { kPcm16, kFloat32 };

// Reads a mono RIFF/WAVE file, PCM16 (value / 32768) or IEEE float32.
AudioBuffer read_wav(const std::filesystem::path& path);
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes);

void write_wav(const std::filesystem::path& path, const AudioBuffer& buf,
               WavEncoding encoding);
std::vector<std::uint8_t> encode_wav(const AudioBuffer& buf,
                                     WavEncoding encoding);

// PCM16 quantiser: clamp to [-1, 1], scale by 32768, round half away from
// zero, clamp to the int16 range.
std::int16_t to_pcm16(float sample);

// Windowed-sinc polyphase resampler (Kaiser, 64 taps per phase).
// Output length is round(len * target / source).
AudioBuffer resample(const AudioBuffer& buf, int target_rate);

// Raw stream framing: little-endian float32 mono, fixed-size blocks.
inline constexpr std::size_t kStreamBlockSamples = 160;
inline constexpr std::size_t kStreamBlockBytes = kStreamBlockSamples * 4;

// Reads up to block.size() samples. Returns the number of whole samples read
// and stores any dangling byte count (a partial sample) in *trailing_bytes.
std::size_t read_raw_block(std::istream& in, std::span<float> block,
                           std::size_t* trailing_bytes);
void write_raw_block(std::ostream& out, std::span<const float> block);

}  // namespace devo

#endif  // DEVO_AUDIO_H_
