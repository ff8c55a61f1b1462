// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <unordered_set>

#include "devo/weights.h"

namespace devo {
namespace {

static_assert(std::endian::native == std::endian::little,
              "bundle codec assumes a little-endian host");

constexpr char kMagic[4] = {'D', 'E', 'V', 'O'};

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { bytes(&v, 2); }
  void u32(std::uint32_t v) { bytes(&v, 4); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  bool at_end() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

  void need(std::size_t n, const std::string& what) const {
    if (remaining() < n) {
      throw Error(ErrorCode::kTruncatedPayload,
                  what + " needs " + std::to_string(n) + " bytes, " +
                      std::to_string(remaining()) + " left");
    }
  }
  const std::uint8_t* take(std::size_t n, const std::string& what) {
    need(n, what);
    const std::uint8_t* p = in_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::uint8_t u8(const std::string& what) { return *take(1, what); }
  std::uint16_t u16(const std::string& what) {
    std::uint16_t v;
    std::memcpy(&v, take(2, what), 2);
    return v;
  }
  std::uint32_t u32(const std::string& what) {
    std::uint32_t v;
    std::memcpy(&v, take(4, what), 4);
    return v;
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void check_finite(const Tensor& t) {
  for (float v : t.data) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "tensor '" + t.name + "' holds NaN/Inf");
    }
  }
}

}  // namespace

std::size_t Tensor::element_count() const {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

const Tensor* WeightBundle::find(const std::string& name) const {
  for (const auto& t : tensors) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::size_t WeightBundle::parameter_count() const {
  std::size_t n = 0;
  for (const auto& t : tensors) n += t.data.size();
  return n;
}

std::vector<std::uint8_t> serialize_bundle(const WeightBundle& bundle) {
  Writer w;
  w.bytes(kMagic, 4);
  w.u32(bundle.version);
  w.u32(static_cast<std::uint32_t>(bundle.config_json.size()));
  w.bytes(bundle.config_json.data(), bundle.config_json.size());
  std::unordered_set<std::string> seen;
  for (const auto& t : bundle.tensors) {
    if (!seen.insert(t.name).second) {
      throw Error(ErrorCode::kDuplicateTensor, t.name);
    }
    if (t.name.size() > 0xFFFF || t.shape.size() > 0xFF) {
      throw Error(ErrorCode::kInvalidArgument,
                  "tensor '" + t.name + "' name or rank too large");
    }
    if (t.data.size() != t.element_count()) {
      throw Error(ErrorCode::kShapeMismatch,
                  "tensor '" + t.name + "' data does not match its shape");
    }
    check_finite(t);
    w.u16(static_cast<std::uint16_t>(t.name.size()));
    w.bytes(t.name.data(), t.name.size());
    w.u8(static_cast<std::uint8_t>(t.shape.size()));
    for (auto d : t.shape) w.u32(d);
    w.bytes(t.data.data(), t.data.size() * sizeof(float));
  }
  return w.take();
}

WeightBundle parse_bundle(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  if (r.remaining() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "expected \"DEVO\"");
  }
  r.take(4, "magic");
  WeightBundle bundle;
  bundle.version = r.u32("version");
  if (bundle.version != kBundleVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "version " + std::to_string(bundle.version) + " (reader knows " +
                    std::to_string(kBundleVersion) + ")");
  }
  const std::uint32_t header_len = r.u32("header length");
  const auto* header = r.take(header_len, "config header");
  bundle.config_json.assign(reinterpret_cast<const char*>(header), header_len);

  const std::size_t max_elements = bytes.size() / sizeof(float);
  std::unordered_set<std::string> seen;
  while (!r.at_end()) {
    Tensor t;
    const std::uint16_t name_len = r.u16("tensor name length");
    const auto* name = r.take(name_len, "tensor name");
    t.name.assign(reinterpret_cast<const char*>(name), name_len);
    const std::uint8_t rank = r.u8("rank of '" + t.name + "'");
    std::size_t count = 1;
    for (std::uint8_t i = 0; i < rank; ++i) {
      const std::uint32_t d = r.u32("dims of '" + t.name + "'");
      t.shape.push_back(d);
      if (d != 0 && count > max_elements / d) {
        throw Error(ErrorCode::kTruncatedPayload,
                    "tensor '" + t.name + "' is larger than the file");
      }
      count *= d;
    }
    const auto* payload = r.take(count * sizeof(float), "payload of '" + t.name + "'");
    t.data.resize(count);
    std::memcpy(t.data.data(), payload, count * sizeof(float));
    if (!seen.insert(t.name).second) {
      throw Error(ErrorCode::kDuplicateTensor, t.name);
    }
    check_finite(t);
    bundle.tensors.push_back(std::move(t));
  }
  return bundle;
}

void save_bundle(const WeightBundle& bundle, const std::filesystem::path& path) {
  const auto bytes = serialize_bundle(bundle);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

WeightBundle load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_bundle(bytes);
}

}  // namespace devo
