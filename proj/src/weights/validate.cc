// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <set>

#include "devo/weights.h"

namespace devo {
namespace {

std::string shape_string(const auto& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

}  // namespace

const char* to_string(BundleMismatch::Kind kind) {
  switch (kind) {
    case BundleMismatch::Kind::kMissing: return "missing";
    case BundleMismatch::Kind::kExtra: return "extra";
    case BundleMismatch::Kind::kShape: return "shape";
    case BundleMismatch::Kind::kNonFinite: return "non-finite";
    case BundleMismatch::Kind::kConfig: return "config";
  }
  return "unknown";
}

std::vector<BundleMismatch> validate_bundle(const WeightBundle& bundle,
                                            const ModelConfig& config) {
  std::vector<BundleMismatch> out;
  for (const auto& p : config.problems()) {
    out.push_back({BundleMismatch::Kind::kConfig, "", p.message});
  }
  std::set<std::string> expected;
  for (const auto& spec : config.tensor_specs()) {
    expected.insert(spec.name);
    const Tensor* t = bundle.find(spec.name);
    if (t == nullptr) {
      out.push_back({BundleMismatch::Kind::kMissing, spec.name,
                     "expected shape " + shape_string(spec.shape)});
      continue;
    }
    const bool same_rank = t->shape.size() == spec.shape.size();
    bool same = same_rank && t->data.size() == t->element_count();
    for (std::size_t i = 0; same && i < spec.shape.size(); ++i) {
      same = t->shape[i] == spec.shape[i];
    }
    if (!same) {
      out.push_back({BundleMismatch::Kind::kShape, spec.name,
                     "expected " + shape_string(spec.shape) + ", found " +
                         shape_string(t->shape)});
      continue;
    }
    for (float v : t->data) {
      if (!std::isfinite(v)) {
        out.push_back({BundleMismatch::Kind::kNonFinite, spec.name,
                       "holds NaN/Inf"});
        break;
      }
    }
  }
  for (const auto& t : bundle.tensors) {
    if (!expected.contains(t.name)) {
      out.push_back({BundleMismatch::Kind::kExtra, t.name,
                     "not used by the config"});
    }
  }
  return out;
}

}  // namespace devo
