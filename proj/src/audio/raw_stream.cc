// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cstring>
#include <istream>
#include <ostream>

#include "devo/audio.h"
#include "devo/error.h"

namespace devo {

std::size_t read_raw_block(std::istream& in, std::span<float> block,
                           std::size_t* trailing_bytes) {
  const std::size_t want = block.size() * sizeof(float);
  std::size_t got = 0;
  auto* dst = reinterpret_cast<char*>(block.data());
  while (got < want && in) {
    in.read(dst + got, static_cast<std::streamsize>(want - got));
    got += static_cast<std::size_t>(in.gcount());
  }
  if (trailing_bytes != nullptr) *trailing_bytes = got % sizeof(float);
  return got / sizeof(float);
}

void write_raw_block(std::ostream& out, std::span<const float> block) {
  out.write(reinterpret_cast<const char*>(block.data()),
            static_cast<std::streamsize>(block.size_bytes()));
  if (!out) throw Error(ErrorCode::kIo, "raw stream write failed");
}

}  // namespace devo
