// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "devo/audio.h"
#include "devo/error.h"

namespace devo {
namespace {

static_assert(std::endian::native == std::endian::little,
              "WAV codec assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t get_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
  }
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

bool tag_is(const std::uint8_t* p, const char* tag) {
  return std::memcmp(p, tag, 4) == 0;
}

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
};

}  // namespace

AudioBuffer decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes.data(), "RIFF") ||
      !tag_is(bytes.data() + 8, "WAVE")) {
    throw Error(ErrorCode::kMalformedHeader, "not a RIFF/WAVE stream");
  }
  FormatChunk fmt;
  bool have_fmt = false;
  std::span<const std::uint8_t> data;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t chunk_size = get_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (chunk_size > bytes.size() - body) {
      // Streaming writers sometimes leave 0xFFFFFFFF in the data size.
      if (tag_is(chunk, "data")) {
        data = bytes.subspan(body);
        have_data = true;
        break;
      }
      throw Error(ErrorCode::kMalformedHeader, "chunk overruns file");
    }
    if (tag_is(chunk, "fmt ")) {
      if (chunk_size < 16) {
        throw Error(ErrorCode::kMalformedHeader, "fmt chunk too small");
      }
      fmt.format = get_u16(chunk + 8);
      fmt.channels = get_u16(chunk + 10);
      fmt.sample_rate = get_u32(chunk + 12);
      fmt.bits = get_u16(chunk + 22);
      if (fmt.format == kFormatExtensible) {
        if (chunk_size < 40) {
          throw Error(ErrorCode::kMalformedHeader,
                      "extensible fmt chunk too small");
        }
        // The first two bytes of the subformat GUID carry the format tag.
        fmt.format = get_u16(chunk + 8 + 24);
      }
      have_fmt = true;
    } else if (tag_is(chunk, "data")) {
      data = bytes.subspan(body, chunk_size);
      have_data = true;
    }
    pos = body + chunk_size + (chunk_size & 1u);
  }
  if (!have_fmt || !have_data) {
    throw Error(ErrorCode::kMalformedHeader,
                have_fmt ? "missing data chunk" : "missing fmt chunk");
  }
  if (fmt.sample_rate == 0) {
    throw Error(ErrorCode::kMalformedHeader, "zero sample rate");
  }
  const bool pcm16 = fmt.format == kFormatPcm && fmt.bits == 16;
  const bool f32 = fmt.format == kFormatFloat && fmt.bits == 32;
  if (!pcm16 && !f32) {
    throw Error(ErrorCode::kUnsupportedEncoding,
                "format tag " + std::to_string(fmt.format) + " with " +
                    std::to_string(fmt.bits) + " bits");
  }
  if (fmt.channels != 1) {
    throw Error(ErrorCode::kUnsupportedChannels,
                std::to_string(fmt.channels) + " channels (mono required)");
  }

  std::vector<float> samples;
  if (pcm16) {
    samples.resize(data.size() / 2);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto v = static_cast<std::int16_t>(get_u16(data.data() + 2 * i));
      samples[i] = static_cast<float>(v) / 32768.0f;
    }
  } else {
    samples.resize(data.size() / 4);
    std::memcpy(samples.data(), data.data(), samples.size() * 4);
  }
  return AudioBuffer(std::move(samples), static_cast<int>(fmt.sample_rate));
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kFileNotFound, path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::int16_t to_pcm16(float sample) {
  const double clamped = std::clamp(static_cast<double>(sample), -1.0, 1.0);
  const double scaled = std::round(clamped * 32768.0);  // half away from zero
  return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

std::vector<std::uint8_t> encode_wav(const AudioBuffer& buf,
                                     WavEncoding encoding) {
  const std::uint16_t bits = encoding == WavEncoding::kPcm16 ? 16 : 32;
  const std::uint16_t block_align = bits / 8;
  const std::uint64_t data_bytes =
      static_cast<std::uint64_t>(buf.size()) * block_align;
  if (data_bytes > 0xFFFFFFFFull - 36) {
    throw Error(ErrorCode::kIo, "audio too long for a RIFF container");
  }
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, static_cast<std::uint32_t>(36 + data_bytes));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate()));
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate()) * block_align);
  put_u16(out, block_align);
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, static_cast<std::uint32_t>(data_bytes));
  for (float s : buf.samples()) {
    if (encoding == WavEncoding::kPcm16) {
      put_u16(out, static_cast<std::uint16_t>(to_pcm16(s)));
    } else {
      put_u32(out, std::bit_cast<std::uint32_t>(s));
    }
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const AudioBuffer& buf,
               WavEncoding encoding) {
  // AudioBuffer already guarantees finite samples.
  const auto bytes = encode_wav(buf, encoding);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorCode::kIo, "write failed for " + path.string());
  }
}

}  // namespace devo
