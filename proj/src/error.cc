// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "devo/error.h"

namespace devo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kIo: return "i/o failure";
    case ErrorCode::kFileNotFound: return "file not found";
    case ErrorCode::kMalformedHeader: return "malformed header";
    case ErrorCode::kUnsupportedEncoding: return "unsupported encoding";
    case ErrorCode::kUnsupportedChannels: return "unsupported channel count";
    case ErrorCode::kNonFinite: return "non-finite value";
    case ErrorCode::kTooShort: return "input too short";
    case ErrorCode::kLengthMismatch: return "length mismatch";
    case ErrorCode::kShapeMismatch: return "shape mismatch";
    case ErrorCode::kAbsentLoudness: return "absent loudness";
    case ErrorCode::kBadMagic: return "bad magic";
    case ErrorCode::kUnsupportedVersion: return "unsupported version";
    case ErrorCode::kTruncatedPayload: return "truncated payload";
    case ErrorCode::kDuplicateTensor: return "duplicate tensor";
    case ErrorCode::kMissingTensor: return "missing tensor";
    case ErrorCode::kUnexpectedTensor: return "unexpected tensor";
    case ErrorCode::kBadConfig: return "bad config";
    case ErrorCode::kStrideProduct: return "stride product";
    case ErrorCode::kNotCausal: return "not causal";
    case ErrorCode::kBlockSize: return "wrong block size";
    case ErrorCode::kSampleRate: return "wrong sample rate";
    case ErrorCode::kManifestSyntax: return "manifest syntax";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace devo
