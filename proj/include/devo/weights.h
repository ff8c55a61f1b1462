// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// The DEVO weight-bundle container. All integers little-endian:
//
//   "DEVO"                      4 bytes magic
//   u32 version                 currently 1
//   u32 header_length
//   header_length bytes         UTF-8 JSON model config
//   repeated until end of file:
//     u16 name_length, name bytes (UTF-8)
//     u8 rank, rank x u32 dims
//     product(dims) x float32 payload

#ifndef DEVO_WEIGHTS_H_
#define DEVO_WEIGHTS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "devo/model_config.h"

namespace devo {

inline constexpr std::uint32_t kBundleVersion = 1;

struct Tensor {
  std::string name;
  std::vector<std::uint32_t> shape;
  std::vector<float> data;

  std::size_t element_count() const;
  bool operator==(const Tensor&) const = default;
};

struct WeightBundle {
  std::uint32_t version = kBundleVersion;
  std::string config_json;
  std::vector<Tensor> tensors;

  ModelConfig config() const { return ModelConfig::from_json(config_json); }
  const Tensor* find(const std::string& name) const;
  std::size_t parameter_count() const;

  bool operator==(const WeightBundle&) const = default;
};

std::vector<std::uint8_t> serialize_bundle(const WeightBundle& bundle);
WeightBundle parse_bundle(std::span<const std::uint8_t> bytes);

void save_bundle(const WeightBundle& bundle, const std::filesystem::path& path);
WeightBundle load_bundle(const std::filesystem::path& path);

struct BundleMismatch {
  enum class Kind { kMissing, kExtra, kShape, kNonFinite, kConfig };
  Kind kind;
  std::string name;  // tensor name, or empty for config problems
  std::string message;
};

const char* to_string(BundleMismatch::Kind kind);

// Every missing tensor, extra tensor, shape mismatch, non-finite value and
// config problem; empty means build_model will accept the pair.
std::vector<BundleMismatch> validate_bundle(const WeightBundle& bundle,
                                            const ModelConfig& config);

}  // namespace devo

#endif  // DEVO_WEIGHTS_H_
