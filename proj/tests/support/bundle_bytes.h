// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Byte-level view of a serialized bundle, written independently of the
// library reader so corruption tests can address fields directly.

#ifndef DEVO_TESTS_BUNDLE_BYTES_H_
#define DEVO_TESTS_BUNDLE_BYTES_H_

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace devo::testing {

struct TensorRecord {
  std::string name;
  std::size_t name_offset = 0;   // start of the u16 name length
  std::size_t dims_offset = 0;   // first u32 dim
  std::vector<std::uint32_t> dims;
  std::size_t payload_offset = 0;
  std::size_t payload_bytes = 0;
};

inline std::uint32_t read_le32(const std::vector<std::uint8_t>& b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
         static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

inline void write_le32(std::vector<std::uint8_t>& b, std::size_t at, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b[at + i] = static_cast<std::uint8_t>(v >> (8 * i));
}

inline std::vector<TensorRecord> tensor_records(const std::vector<std::uint8_t>& b) {
  std::vector<TensorRecord> out;
  std::size_t at = 12 + read_le32(b, 8);
  while (at < b.size()) {
    TensorRecord r;
    r.name_offset = at;
    const std::size_t len = b[at] | (b[at + 1] << 8);
    r.name.assign(reinterpret_cast<const char*>(b.data() + at + 2), len);
    at += 2 + len;
    const std::size_t rank = b[at++];
    r.dims_offset = at;
    std::size_t count = 1;
    for (std::size_t i = 0; i < rank; ++i) {
      r.dims.push_back(read_le32(b, at));
      count *= r.dims.back();
      at += 4;
    }
    r.payload_offset = at;
    r.payload_bytes = count * 4;
    at += r.payload_bytes;
    out.push_back(r);
  }
  return out;
}

}  // namespace devo::testing

#endif  // DEVO_TESTS_BUNDLE_BYTES_H_
