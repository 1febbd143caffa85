// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include "lidarplace/error.hpp"

namespace lidarplace {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kUsage:
      return "usage";
    case ErrorCode::kSchema:
      return "schema";
    case ErrorCode::kIo:
      return "io";
    case ErrorCode::kInvalidArgument:
      return "invalid_argument";
    case ErrorCode::kInternal:
      return "internal";
  }
  return "unknown";
}

}  // namespace lidarplace
