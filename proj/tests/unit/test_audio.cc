// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include "devo/audio.h"
#include "devo/error.h"
#include "fixtures.h"

using namespace devo;
using devo::testing::TempDir;

namespace {

void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(v & 0xff);
  b.push_back(v >> 8);
}
void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff);
}
void put_tag(std::vector<std::uint8_t>& b, const char* t) { b.insert(b.end(), t, t + 4); }

// Hand-rolled RIFF writer, independent of encode_wav.
std::vector<std::uint8_t> riff(std::uint16_t format, std::uint16_t channels, std::uint32_t rate,
                               std::uint16_t bits, const std::vector<std::uint8_t>& payload,
                               bool with_list_chunk = false) {
  std::vector<std::uint8_t> body;
  put_tag(body, "WAVE");
  if (with_list_chunk) {
    put_tag(body, "LIST");
    put_u32(body, 5);
    for (int i = 0; i < 6; ++i) body.push_back('x');  // odd size + pad byte
  }
  put_tag(body, "fmt ");
  put_u32(body, 16);
  put_u16(body, format);
  put_u16(body, channels);
  put_u32(body, rate);
  put_u32(body, rate * channels * bits / 8);
  put_u16(body, static_cast<std::uint16_t>(channels * bits / 8));
  put_u16(body, bits);
  put_tag(body, "data");
  put_u32(body, static_cast<std::uint32_t>(payload.size()));
  body.insert(body.end(), payload.begin(), payload.end());
  std::vector<std::uint8_t> out;
  put_tag(out, "RIFF");
  put_u32(out, static_cast<std::uint32_t>(body.size()));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::vector<std::uint8_t> pcm16_payload(std::initializer_list<std::int16_t> v) {
  std::vector<std::uint8_t> p;
  for (auto s : v) put_u16(p, static_cast<std::uint16_t>(s));
  return p;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_SUITE("audio") {

TEST_CASE("AudioBuffer rejects non-finite samples and bad rates") {
  CHECK(code_of([] { AudioBuffer({0.0f, NAN}, 16000); }) == ErrorCode::kNonFinite);
  CHECK(code_of([] { AudioBuffer({0.0f, INFINITY}, 16000); }) == ErrorCode::kNonFinite);
  CHECK(code_of([] { AudioBuffer({0.0f}, 0); }) == ErrorCode::kInvalidArgument);
  const AudioBuffer b({0.1f, 0.2f}, 8000);
  CHECK(b.duration_seconds() == doctest::Approx(2.0 / 8000));
  CHECK(code_of([&] { difference(b, AudioBuffer({0.0f}, 8000)); }) ==
        ErrorCode::kLengthMismatch);
}

TEST_CASE("PCM16 decoding divides by 32768") {
  const auto bytes = riff(1, 1, 16000, 16, pcm16_payload({16384, -32768, 32767, 0, -1}));
  const AudioBuffer b = decode_wav(bytes);
  REQUIRE(b.size() == 5);
  CHECK(b.sample_rate() == 16000);
  CHECK(b[0] == 0.5f);
  CHECK(b[1] == -1.0f);
  CHECK(b[2] == 32767.0f / 32768.0f);
  CHECK(b[3] == 0.0f);
  CHECK(b[4] == -1.0f / 32768.0f);
}

TEST_CASE("float32 payload passes through and unknown chunks are skipped") {
  const float vals[] = {0.25f, -1.5f, 3.0e-8f};
  std::vector<std::uint8_t> payload(sizeof vals);
  std::memcpy(payload.data(), vals, sizeof vals);
  const AudioBuffer b = decode_wav(riff(3, 1, 22050, 32, payload, true));
  REQUIRE(b.size() == 3);
  CHECK(b.sample_rate() == 22050);
  for (int i = 0; i < 3; ++i) CHECK(b[i] == vals[i]);
}

TEST_CASE("decode errors are distinct") {
  const auto good = riff(1, 1, 16000, 16, pcm16_payload({1, 2}));
  auto bad_magic = good;
  bad_magic[0] = 'X';
  CHECK(code_of([&] { decode_wav(bad_magic); }) == ErrorCode::kMalformedHeader);
  CHECK(code_of([&] { decode_wav(std::span(good).first(20)); }) == ErrorCode::kMalformedHeader);
  CHECK(code_of([] { decode_wav(riff(1, 2, 16000, 16, pcm16_payload({1, 2}))); }) ==
        ErrorCode::kUnsupportedChannels);
  CHECK(code_of([] { decode_wav(riff(1, 1, 16000, 24, {0, 0, 0})); }) ==
        ErrorCode::kUnsupportedEncoding);
  CHECK(code_of([] { decode_wav(riff(6, 1, 8000, 8, {0})); }) == ErrorCode::kUnsupportedEncoding);
  CHECK(code_of([] { read_wav("/nonexistent/devo.wav"); }) == ErrorCode::kFileNotFound);
}

TEST_CASE("PCM16 encoding rounds half away from zero and clamps") {
  CHECK(to_pcm16(0.5f) == 16384);
  CHECK(to_pcm16(1.2f) == 32767);
  CHECK(to_pcm16(-1.2f) == -32768);
  CHECK(to_pcm16(-1.0f) == -32768);
  CHECK(to_pcm16(1.5f / 32768.0f) == 2);
  CHECK(to_pcm16(-1.5f / 32768.0f) == -2);
  CHECK(to_pcm16(0.4f / 32768.0f) == 0);

  const auto bytes = encode_wav(AudioBuffer({0.5f, 1.2f}, 16000), WavEncoding::kPcm16);
  REQUIRE(bytes.size() == 44 + 4);
  CHECK(bytes[44] == 0x00);
  CHECK(bytes[45] == 0x40);  // 16384
  CHECK(bytes[46] == 0xff);
  CHECK(bytes[47] == 0x7f);  // 32767
}

TEST_CASE("file roundtrips") {
  TempDir dir("audio");
  const AudioBuffer x = devo::testing::noise_buffer(4001, 3, 0.2);
  write_wav(dir / "f.wav", x, WavEncoding::kFloat32);
  CHECK(read_wav(dir / "f.wav") == x);

  write_wav(dir / "p.wav", x, WavEncoding::kPcm16);
  const AudioBuffer y = read_wav(dir / "p.wav");
  REQUIRE(y.size() == x.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(x[i]) - y[i]));
  }
  CHECK(worst <= 1.0 / 32768.0);

  // Second write of the same buffer is byte-identical.
  write_wav(dir / "f2.wav", x, WavEncoding::kFloat32);
  std::ifstream a(dir / "f.wav", std::ios::binary), b(dir / "f2.wav", std::ios::binary);
  CHECK(std::string(std::istreambuf_iterator<char>(a), {}) ==
        std::string(std::istreambuf_iterator<char>(b), {}));
}

TEST_CASE("resample identity and length") {
  const AudioBuffer x = devo::testing::noise_buffer(1000, 1);
  CHECK(resample(x, 16000) == x);
  CHECK(resample(x, 10000).size() == 625);
  CHECK(resample(x, 10000).sample_rate() == 10000);
  CHECK(resample(AudioBuffer(std::vector<float>(1001), 16000), 10000).size() == 626);
  CHECK(resample(AudioBuffer(std::vector<float>(441), 44100), 16000).size() == 160);
  CHECK(code_of([&] { resample(x, 0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("resample preserves DC away from the edges") {
  for (int target : {10000, 8000, 22050, 48000}) {
    const AudioBuffer y = resample(AudioBuffer(std::vector<float>(16000, 0.3f), 16000), target);
    const std::size_t margin = 64 * static_cast<std::size_t>(target) / 16000 + 64;
    for (std::size_t i = margin; i + margin < y.size(); ++i) {
      REQUIRE(std::abs(y[i] - 0.3f) <= 1e-4f);
    }
  }
}

TEST_CASE("resampled 1 kHz sine matches the analytic sine at 10 kHz") {
  const AudioBuffer x = devo::testing::sine(1000.0, 0.5, 16000);
  const AudioBuffer y = resample(x, 10000);
  // Interior window of whole periods (10 samples each).
  double err = 0.0;
  double in_phase = 0.0;
  double quadrature = 0.0;
  const std::size_t lo = 200, hi = 9800;
  for (std::size_t m = lo; m < hi; ++m) {
    const double arg = 2.0 * std::numbers::pi * 1000.0 * m / 10000.0;
    err = std::max(err, std::abs(y[m] - 0.5 * std::sin(arg)));
    in_phase += y[m] * std::sin(arg);
    quadrature += y[m] * std::cos(arg);
  }
  const double amplitude = 2.0 * std::hypot(in_phase, quadrature) / (hi - lo);
  CHECK(std::abs(amplitude / 0.5 - 1.0) < 0.005);
  CHECK(err < 0.0025);
}

TEST_CASE("resample is linear under power-of-two gains") {
  const AudioBuffer x = devo::testing::noise_buffer(3000, 9);
  const AudioBuffer base = resample(x, 10000);
  for (double a : {0.5, 2.0, 0.25}) {
    const AudioBuffer y = resample(scaled(x, a), 10000);
    for (std::size_t i = 0; i < y.size(); ++i) REQUIRE(y[i] == static_cast<float>(a * base[i]));
  }
  // Other gains agree to rounding.
  const AudioBuffer y = resample(scaled(x, 0.3), 10000);
  for (std::size_t i = 0; i < y.size(); ++i) REQUIRE(y[i] == doctest::Approx(0.3 * base[i]).epsilon(1e-5));
}

TEST_CASE("raw block framing") {
  std::vector<float> src(2 * kStreamBlockSamples);
  for (std::size_t i = 0; i < src.size(); ++i) src[i] = static_cast<float>(i) * 0.001f;
  std::ostringstream os;
  write_raw_block(os, src);
  std::string bytes = os.str() + "xy";
  CHECK(bytes.size() == 2 * kStreamBlockBytes + 2);

  std::istringstream is(bytes);
  std::vector<float> block(kStreamBlockSamples);
  std::size_t trailing = 99;
  CHECK(read_raw_block(is, block, &trailing) == kStreamBlockSamples);
  CHECK(trailing == 0);
  CHECK(block[5] == src[5]);
  CHECK(read_raw_block(is, block, &trailing) == kStreamBlockSamples);
  CHECK(block[0] == src[kStreamBlockSamples]);
  CHECK(read_raw_block(is, block, &trailing) == 0);
  CHECK(trailing == 2);
}

}  // TEST_SUITE
