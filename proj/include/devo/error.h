// Copyright 2026 The DeVo Engine Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEVO_ERROR_H_
#define DEVO_ERROR_H_

#include <stdexcept>
#include <string>

namespace devo {

// Every failure the engine reports carries one of these codes so callers and
// tests can tell error classes apart without parsing messages.
enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kFileNotFound,
  kMalformedHeader,
  kUnsupportedEncoding,
  kUnsupportedChannels,
  kNonFinite,
  kTooShort,
  kLengthMismatch,
  kShapeMismatch,
  kAbsentLoudness,
  kBadMagic,
  kUnsupportedVersion,
  kTruncatedPayload,
  kDuplicateTensor,
  kMissingTensor,
  kUnexpectedTensor,
  kBadConfig,
  kStrideProduct,
  kNotCausal,
  kBlockSize,
  kSampleRate,
  kManifestSyntax,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace devo

#endif  // DEVO_ERROR_H_
